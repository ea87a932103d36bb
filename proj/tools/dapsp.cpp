// dapsp: generate deletion traces and replay them through the APSP structures.
//
//   dapsp gen --kind lower_bound --n 17 --out lb17.trace
//   dapsp run --structure exact --trace lb17.trace
//   dapsp verify --structure approx_det --eps 0.25 --trace g.trace --verify-stride 5
//   dapsp bench --trace g.trace --structure all

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dapsp/harness.hpp"
#include "dapsp/trace.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;

struct Args {
  std::string kind = "random";
  std::size_t n = 20, m = 60, extra = 0;
  std::size_t layers = 4, width = 8, degree = 3;
  std::uint64_t seed = 1;
  std::string trace_path;
  std::string out_path;
  std::string structure = "exact";
  std::string adversary;
  double eps = 0.25;
  double cutoff_factor = 33.0;
  unsigned es_threshold = 0;
  double probability = -1.0;
  std::size_t verify_stride = 1;
  bool verify = false;
  bool no_timing = false;
};

void emit(const Args& a, const std::string& text) {
  if (a.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(a.out_path);
  if (!out) throw dapsp::Error(dapsp::Errc::bad_params, "cannot write " + a.out_path);
  out << text;
}

dapsp::DeletionTrace load(const Args& a) {
  if (a.trace_path.empty()) throw dapsp::Error(dapsp::Errc::bad_params, "--trace is required");
  if (a.trace_path == "-") return dapsp::parse_trace(std::cin);
  return dapsp::read_trace_file(a.trace_path);
}

dapsp::RunOptions run_options(const Args& a, bool verify) {
  dapsp::RunOptions o;
  o.structure = a.structure;
  o.engine.eps = a.eps;
  o.engine.seed = a.seed;
  o.engine.cutoff_factor = a.cutoff_factor;
  o.engine.es_threshold = a.es_threshold;
  o.engine.sample_probability = a.probability;
  o.verify = verify;
  o.verify_stride = a.verify_stride;
  o.adversary = a.adversary;
  return o;
}

int cmd_gen(const Args& a) {
  dapsp::DeletionTrace t;
  if (a.kind == "lower_bound") {
    t = dapsp::gen_lower_bound(a.n, a.extra, a.seed);
  } else if (a.kind == "random") {
    t = dapsp::gen_random(a.n, a.m, a.seed);
  } else if (a.kind == "layered") {
    t = dapsp::gen_layered(a.layers, a.width, a.degree, a.seed);
  } else {
    throw dapsp::Error(dapsp::Errc::bad_params, "unknown kind '" + a.kind + "'");
  }
  emit(a, dapsp::serialize_trace(t));
  return kPass;
}

int cmd_run(const Args& a, bool verify) {
  const auto m = dapsp::run(load(a), run_options(a, verify));
  emit(a, dapsp::format_metrics(m, !a.no_timing));
  if (!m.pass) {
    std::cerr << "VerificationFailure: " << m.failure << '\n';
    return kVerificationFailure;
  }
  return kPass;
}

int cmd_bench(const Args& a) {
  const auto trace = load(a);
  std::vector<std::string> names;
  if (a.structure == "all") {
    names = {"es_baseline", "exact", "approx_det", "approx_rand"};
  } else {
    std::stringstream ss(a.structure);
    for (std::string s; std::getline(ss, s, ',');) names.push_back(s);
  }
  std::ostringstream out;
  bool pass = true;
  for (const auto& name : names) {
    Args b = a;
    b.structure = name;
    const auto m = dapsp::run(trace, run_options(b, a.verify));
    std::istringstream lines(dapsp::format_metrics(m, !a.no_timing));
    for (std::string line; std::getline(lines, line);) out << name << '.' << line << '\n';
    pass = pass && m.pass;
  }
  emit(a, out.str());
  return pass ? kPass : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decremental all-pairs shortest paths: trace generator and runner"};
  app.require_subcommand(1);
  Args a;

  auto* gen = app.add_subcommand("gen", "write a deletion trace");
  gen->add_option("--kind", a.kind, "lower_bound | random | layered")
      ->check(CLI::IsMember({"lower_bound", "random", "layered"}));
  gen->add_option("--n", a.n, "vertices");
  gen->add_option("--m", a.m, "edges (random)");
  gen->add_option("--extra", a.extra, "extra edges deleted first (lower_bound)");
  gen->add_option("--layers", a.layers, "layers (layered)");
  gen->add_option("--width", a.width, "vertices per layer (layered)");
  gen->add_option("--degree", a.degree, "edges per vertex into the next layer (layered)");
  gen->add_option("--seed", a.seed);
  gen->add_option("--out", a.out_path, "output file, stdout if absent");

  auto add_run_flags = [&a](CLI::App* c) {
    c->add_option("--trace", a.trace_path, "trace file, '-' for stdin")->required();
    c->add_option("--structure", a.structure, "exact | approx_det | approx_rand | es_baseline");
    c->add_option("--eps", a.eps, "approximation parameter, 0 < eps <= 1/3");
    c->add_option("--seed", a.seed, "seed of approx_rand and of the adversary");
    c->add_option("--adversary", a.adversary, "random | greedy_pair | path_cutter");
    c->add_option("--verify-stride", a.verify_stride, "full-matrix check every k deletions");
    c->add_option("--cutoff-factor", a.cutoff_factor, "separator scales start at this times lg n");
    c->add_option("--es-threshold", a.es_threshold, "ES depth of the approximate structures");
    c->add_option("--probability", a.probability, "sampling probability of approx_rand");
    c->add_flag("--no-timing", a.no_timing, "leave wall times out of the metrics");
    c->add_option("--out", a.out_path, "metrics file, stdout if absent");
  };
  auto* run = app.add_subcommand("run", "replay a trace");
  add_run_flags(run);
  run->add_flag("--verify", a.verify, "check answers against the oracle");
  auto* verify = app.add_subcommand("verify", "replay a trace and check every answer");
  add_run_flags(verify);
  auto* bench = app.add_subcommand("bench", "replay a trace through several structures");
  add_run_flags(bench);
  bench->add_flag("--verify", a.verify, "check answers against the oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(a);
    if (run->parsed()) return cmd_run(a, a.verify);
    if (verify->parsed()) return cmd_run(a, true);
    return cmd_bench(a);
  } catch (const dapsp::Error& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
