// Acceptance run: one PASS/FAIL line per criterion, exit code 1 if any failed.

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "checks.hpp"
#include "dapsp/approx_apsp.hpp"
#include "dapsp/exact_apsp.hpp"
#include "dapsp/harness.hpp"
#include "dapsp/rand_apsp.hpp"
#include "dapsp/sampler.hpp"
#include "dapsp/trace.hpp"
#include "test_util.hpp"

using namespace dapsp;
using testing::Instance;

namespace {

// Frozen constants: the largest ratio seen in one calibration run on inputs not
// used below, rounded up to one significant digit.
// |S| d / (n ln n), random instances seeds 30000.., long instances seeds 35000..: 23.8
constexpr double kSeparatorC = 30;
// queue ops / (n^3 lg^3 n), exact with forced levels on lower_bound n=33: 0.0308
constexpr double kQueueOpsK = 0.04;
// ES scans / (m (d+1)), 8 trees on random graphs with n=50, m=200: 1.92
constexpr double kScanK = 2;

struct Verdict {
  bool pass = true;
  std::string detail;
};

EngineOptions forced(double eps = 0.25, Distance threshold = 2, double p = -1.0,
                     std::uint64_t seed = 1) {
  EngineOptions o;
  o.eps = eps;
  o.cutoff_factor = 1;
  o.es_threshold = threshold;
  o.sample_probability = p;
  o.seed = seed;
  return o;
}

template <class T>
auto maker(EngineOptions o) {
  return [o](const DecrementalGraph& g) -> std::unique_ptr<DistanceStructure> {
    return std::make_unique<T>(g, o);
  };
}

double limit(double eps) { return stretch_limit("approx_det", eps); }

Instance from_trace(const DeletionTrace& t) {
  Instance in;
  in.n = t.n;
  in.edges = t.edges;
  for (const auto& ev : t.events) {
    if (ev.kind == TraceEvent::Kind::remove) in.order.push_back({ev.u, ev.v});
  }
  return in;
}

DeletionTrace to_trace(const Instance& in) {
  DeletionTrace t;
  t.n = in.n;
  t.edges = in.edges;
  for (const Edge& e : in.order) t.events.push_back({TraceEvent::Kind::remove, e.tail, e.head});
  return t;
}

std::string fmt(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

Verdict criterion1() {
  std::uint64_t checked = 0, levels = 0;
  std::size_t runs = 0;
  auto one = [&](const Instance& in, const std::string& what) -> std::optional<std::string> {
    for (const auto& o : {EngineOptions{}, forced()}) {
      const auto r = testing::replay(in, maker<ExactApsp>(o), 1.0, false);
      if (!r.failure.empty()) return what + ": " + r.failure;
      checked += r.checked;
      levels += r.counters.at("ladder.levels");
      ++runs;
    }
    return std::nullopt;
  };
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    if (auto f = one(testing::random_instance(1000 + seed, 2, 30, 200), "seed " + std::to_string(seed))) {
      return {false, *f};
    }
  }
  for (std::size_t n : {7, 17, 33}) {
    if (auto f = one(from_trace(gen_lower_bound(n)), "lower_bound n=" + std::to_string(n))) {
      return {false, *f};
    }
  }
  return {true, std::to_string(runs) + " runs, " + std::to_string(checked) +
                    " entries equal to the oracle, " + std::to_string(levels) + " separator levels"};
}

Verdict criterion2() {
  std::mt19937_64 rng(2);
  std::size_t probes = 0, exact_probes = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const auto in = testing::random_instance(2000 + k, 4, 30, 200);
    const Clock t = rng() % (in.order.size() + 1);
    auto g = DecrementalGraph::from_edge_list(in.n, in.edges);
    ExactApsp ex(g, forced());
    ExactApsp ex_default(g);
    ApproxApsp ap(g, forced(0.25, 2));
    for (Clock c = 0; c < t; ++c) {
      g.delete_edge(in.order[c]);
      ex.on_delete(in.order[c]);
      ex_default.on_delete(in.order[c]);
      ap.on_delete(in.order[c]);
    }
    const auto truth = oracle::recompute(g);
    // prefer a reachable pair; fall back to whatever was drawn
    VertexId u = 0, v = 0;
    for (int tries = 0; tries < 50; ++tries) {
      u = static_cast<VertexId>(rng() % in.n);
      v = static_cast<VertexId>(rng() % in.n);
      if (truth.at(u, v) != kInfinity && u != v) break;
    }
    const Distance d = truth.at(u, v);
    const std::string where = "probe " + std::to_string(k) + " clock " + std::to_string(t) +
                              " pair " + std::to_string(u) + "," + std::to_string(v);
    for (const ExactApsp* s : {&ex, &ex_default}) {
      const auto p = s->report_path(u, v);
      if (d == kInfinity ? p.has_value()
                         : !p || !testing::is_path_in(g, *p, u, v) || p->size() - 1 != s->query(u, v)) {
        return {false, "exact " + where};
      }
    }
    const auto p = ap.report_path(u, v);
    if (d == kInfinity ? p.has_value()
                       : !p || !testing::is_path_in(g, *p, u, v) || p->size() - 1 > ap.query(u, v)) {
      return {false, "approx_det " + where};
    }
    probes += 1;
    exact_probes += d != kInfinity;
  }
  return {true, std::to_string(probes) + " probes per structure (" + std::to_string(exact_probes) +
                    " reachable), exact paths of length = distance, approx_det paths <= estimate"};
}

Verdict criterion3() {
  std::uint64_t checks = 0, runs = 0, triggered = 0;
  double worst = 0;  // max |S| d / (n ln n)
  auto one = [&](const Instance& in, VertexId s, Distance d, double stretch,
                 bool size_bound) -> std::optional<std::string> {
    const auto r = testing::check_separator(in, s, d, stretch);
    ++runs;
    checks += r.checks;
    if (!r.failure.empty()) return r.failure;
    if (r.edge_overlaps != 0) return "an edge was charged twice in one trigger";
    if (r.max_size > 0) ++triggered;
    if (size_bound) {
      const double ratio = r.max_size * static_cast<double>(d) / (in.n * std::log(static_cast<double>(in.n)));
      worst = std::max(worst, ratio);
      if (ratio > kSeparatorC) return "|S| = " + std::to_string(r.max_size) + " above C n ln n / d";
    }
    return std::nullopt;
  };
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto in = testing::random_instance(3000 + k, 4, 25, 120);
    const auto big = static_cast<Distance>(std::ceil(33 * std::log2(static_cast<double>(in.n))));
    const VertexId s = static_cast<VertexId>(k % in.n);
    for (Distance d : {big, 2 * big}) {
      for (double stretch : {1.0, 4.0 / 3.0}) {
        if (auto f = one(in, s, d, stretch, true)) return {false, "instance " + std::to_string(k) + ": " + *f};
      }
    }
    // below the standing assumption: the windows are too narrow for the thin-layer
    // search, Part 2 and the upper clause of Part 1 still hold
    for (Distance d : {3u, 5u, 8u}) {
      if (auto f = one(in, s, d, 1.0, false)) return {false, "instance " + std::to_string(k) + ": " + *f};
    }
  }
  // long paths, where distances actually cross d and the windows admit a thin layer
  for (std::uint64_t k = 0; k < 8; ++k) {
    const auto in = testing::long_instance(3500 + k, 70 + 7 * k);
    for (Distance d : {34u, 41u, 47u}) {
      for (double stretch : {1.0, 4.0 / 3.0}) {
        if (auto f = one(in, 0, d, stretch, true)) return {false, "long instance " + std::to_string(k) + ": " + *f};
      }
    }
  }
  return {true, std::to_string(runs) + " separator runs (" + std::to_string(triggered) + " with a trigger), " +
                    std::to_string(checks) + " predicate checks, max |S| d/(n ln n) = " + fmt(worst) +
                    " <= C = " + fmt(kSeparatorC)};
}

Verdict criterion4() {
  std::uint64_t found = 0, exhausted = 0;
  auto probe = [&](const DecrementalGraph& g, VertexId root, Orientation o, Distance d1,
                   Distance d2) -> bool {
    try {
      const auto t = find_thin_layer(g, root, o, d1, d2);
      ++found;
      return testing::layer_is_thin(g, root, o, d1, d2, t);
    } catch (const Error& e) {
      if (e.code() != Errc::search_exhausted) throw;
      ++exhausted;
      return true;
    }
  };
  for (std::uint64_t k = 0; k < 40; ++k) {
    const auto t = gen_layered(40 + k % 30, 2 + k % 5, 1 + k % 2, 4000 + k);
    const auto g = DecrementalGraph::from_edge_list(t.n, t.edges);
    const auto w = static_cast<Distance>(std::ceil(std::log2(static_cast<double>(t.n))));
    for (Distance d1 : {0u, 3u, 10u}) {
      for (VertexId root : {VertexId{0}, static_cast<VertexId>(t.n - 1)}) {
        for (auto o : {Orientation::from_source, Orientation::to_source}) {
          if (!probe(g, root, o, d1, d1 + w + k % 4)) {
            return {false, "layered instance " + std::to_string(k) + " root " + std::to_string(root)};
          }
        }
      }
    }
  }
  for (std::uint64_t k = 0; k < 40; ++k) {
    const auto in = testing::long_instance(4100 + k, 60 + k);
    const auto g = DecrementalGraph::from_edge_list(in.n, in.edges);
    const auto w = static_cast<Distance>(std::ceil(std::log2(static_cast<double>(in.n))));
    if (!probe(g, 0, Orientation::from_source, 5, 5 + w) ||
        !probe(g, static_cast<VertexId>(in.n - 1), Orientation::to_source, 0, w)) {
      return {false, "long instance " + std::to_string(k)};
    }
  }
  return {found > 0, std::to_string(found) + " returned layers satisfy |L| (d2-d1+1) <= |L_<| lg n, " +
                         std::to_string(exhausted) + " searches exhausted"};
}

Verdict criterion5() {
  std::uint64_t checked = 0;
  double worst = 1.0;
  std::string notes;
  for (double eps : {0.1, 0.25, 0.5}) {
    if (eps > 1.0 / 3.0) {
      // outside 0 < eps <= 1/3 the structure refuses to start
      const std::vector<Edge> one_edge{{0, 1}};
      auto g = DecrementalGraph::from_edge_list(3, one_edge);
      try {
        ApproxApsp a(g, forced(eps, 2));
        return {false, "eps=" + fmt(eps, 2) + " accepted"};
      } catch (const Error& e) {
        if (e.code() != Errc::epsilon_out_of_range) return {false, e.what()};
        notes += ", eps=" + fmt(eps, 2) + " rejected with EpsilonOutOfRange";
      }
      continue;
    }
    for (std::uint64_t k = 0; k < 100; ++k) {
      const auto in = testing::random_instance(5000 + k, 2, 40, 200);
      EngineOptions plain;
      plain.eps = eps;
      for (const auto& o : {plain, forced(eps, 2 + k % 4)}) {
        const auto r = testing::replay(in, maker<ApproxApsp>(o), limit(eps), false);
        if (!r.failure.empty()) return {false, "eps=" + fmt(eps, 2) + " instance " + std::to_string(k) + ": " + r.failure};
        checked += r.checked;
        worst = std::max(worst, r.max_stretch);
      }
    }
  }
  return {true, std::to_string(checked) + " estimates within [d, (1+eps)(1+2^-40) d], max stretch " +
                    fmt(worst, 4) + notes};
}

struct RandSuite {
  std::uint64_t runs = 0, checked = 0, marks = 0;
  double queue_total = 0, bound_total = 0;  // sum of |Q| at marking, sum of 3 ln n / p
  std::string failure;
  double worst = 1.0;
};

RandSuite rand_suite() {
  RandSuite r;
  for (double eps : {0.1, 0.25}) {
    for (std::uint64_t k = 0; k < 6; ++k) {
      const auto in = testing::random_instance(6000 + k, 8, 16, 60);
      const auto trace = to_trace(in);
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        for (const char* adversary : {"random", "greedy_pair"}) {
          RunOptions o;
          o.structure = "approx_rand";
          o.engine = forced(eps, 2, 0.2 + 0.1 * static_cast<double>(seed % 4), seed);
          o.adversary = adversary;
          o.verify = true;
          const auto m = run(trace, o);
          ++r.runs;
          r.checked += m.checked;
          r.worst = std::max(r.worst, m.max_stretch);
          if (!m.pass) {
            r.failure = std::string(adversary) + " eps=" + fmt(eps, 2) + " instance " + std::to_string(k) +
                        " seed " + std::to_string(seed) + ": " + m.failure;
            return r;
          }
          const auto marks = m.counters.at("marks");
          const double p = m.counters.at("sample.probability_ppm") / 1e6;
          r.marks += marks;
          r.queue_total += static_cast<double>(m.counters.at("marks.queue_total"));
          r.bound_total += marks * 3 * std::log(static_cast<double>(in.n)) / p;
        }
      }
    }
  }
  return r;
}

Verdict criterion6(const RandSuite& r) {
  if (!r.failure.empty()) return {false, r.failure};
  return {true, std::to_string(r.runs) + " runs (random and greedy_pair adversaries, 20 seeds), " +
                    std::to_string(r.checked) + " estimates in range, max stretch " + fmt(r.worst, 4)};
}

Verdict criterion7() {
  const auto in = testing::random_instance(7000, 20, 20, 50);
  const std::size_t n = in.n;
  std::vector<std::vector<Distance>> streams;
  std::vector<Clock> earliest(n * n, std::numeric_limits<Clock>::max());
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = DecrementalGraph::from_edge_list(n, in.edges);
    RandApsp a(g, forced(0.25, 2, 0.3, seed));
    std::vector<Distance> s;
    auto record = [&] {
      for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n; ++v) s.push_back(a.query(u, v));
      }
    };
    record();
    for (const Edge& e : in.order) {
      g.delete_edge(e);
      a.on_delete(e);
      record();
    }
    for (std::size_t k = 0; k < n * n; ++k) {
      if (auto m = a.first_mark(static_cast<VertexId>(k / n), static_cast<VertexId>(k % n))) {
        earliest[k] = std::min(earliest[k], *m);
      }
    }
    streams.push_back(std::move(s));
  }
  std::uint64_t compared = 0, marked_pairs = 0;
  for (std::size_t k = 0; k < n * n; ++k) marked_pairs += earliest[k] != std::numeric_limits<Clock>::max();
  for (Clock t = 0; t <= in.order.size(); ++t) {
    for (std::size_t k = 0; k < n * n; ++k) {
      if (t >= earliest[k]) continue;
      ++compared;
      for (std::size_t s = 1; s < streams.size(); ++s) {
        if (streams[s][t * n * n + k] != streams[0][t * n * n + k]) {
          return {false, "seed " + std::to_string(s + 1) + " differs at clock " + std::to_string(t)};
        }
      }
    }
  }
  return {compared > 0 && marked_pairs > 0,
          std::to_string(compared) + " answers before the first mark agree across 5 seeds (" +
              std::to_string(marked_pairs) + " pairs marked at some point)"};
}

Verdict criterion8(const RandSuite& r) {
  if (r.marks < 1000) return {false, "only " + std::to_string(r.marks) + " marking events"};
  const double mean = r.queue_total / r.marks, bound = r.bound_total / r.marks;
  return {r.queue_total <= r.bound_total,
          std::to_string(r.marks) + " marking events, mean |Q| " + fmt(mean) + " vs mean 3 ln n / p " + fmt(bound)};
}

Verdict criterion9() {
  std::ostringstream out;
  std::mt19937_64 rng(9);
  for (double p : {0.05, 0.3, 0.7}) {
    const GeometricTable t(p, 64);
    constexpr std::size_t window = 10, draws = 100000;
    std::vector<std::uint64_t> counts(window + 1, 0);
    for (std::size_t k = 0; k < draws; ++k) {
      const auto i = t.sample_first_index(window, rng);
      ++counts[i ? *i - 1 : window];
    }
    double stat = 0;
    int cells = 0;
    for (std::size_t k = 0; k <= window; ++k) {
      const double prob = k < window ? std::pow(1 - p, static_cast<double>(k)) * p
                                     : std::pow(1 - p, static_cast<double>(window));
      const double expect = prob * draws;
      stat += (counts[k] - expect) * (counts[k] - expect) / expect;
      ++cells;
    }
    const double pv = boost::math::cdf(boost::math::complement(boost::math::chi_squared(cells - 1), stat));
    if (pv <= 0.001) return {false, "p=" + fmt(p, 2) + " chi-square p-value " + fmt(pv, 5)};

    std::vector<std::uint64_t> hits(window, 0);
    for (std::size_t k = 0; k < draws; ++k) {
      for (std::size_t i : t.sample_subset(window, rng)) ++hits[i];
    }
    for (std::size_t i = 0; i < window; ++i) {
      const double f = static_cast<double>(hits[i]) / draws;
      if (std::abs(f - p) > 0.02) return {false, "p=" + fmt(p, 2) + " index " + std::to_string(i) + " frequency " + fmt(f, 4)};
    }
    out << " p=" << fmt(p, 2) << ":pvalue=" << fmt(pv, 3);
  }
  return {true, "first-success law and subset frequencies match," + out.str()};
}

Verdict criterion10() {
  std::vector<double> ratio;
  std::ostringstream out;
  for (std::size_t n : {17, 33, 65}) {
    const auto t = gen_lower_bound(n);
    const auto in = from_trace(t);
    const auto count = oracle::count_matrix_changes(n, in.edges, in.order);
    RunOptions o;
    const auto m = run(t, o);
    if (m.matrix_changes != count) {
      return {false, "n=" + std::to_string(n) + " exact reported " + std::to_string(m.matrix_changes) +
                         " changes, oracle " + std::to_string(count)};
    }
    ratio.push_back(static_cast<double>(count) / (static_cast<double>(n) * n * n));
    out << " n=" << n << ":" << count;
  }
  const double lo = *std::min_element(ratio.begin(), ratio.end());
  const double hi = *std::max_element(ratio.begin(), ratio.end());
  return {hi <= 2 * lo, "changes/n^3 within factor " + fmt(hi / lo) + " (limit 2), exact list = oracle count:" + out.str()};
}

Verdict criterion11() {
  std::ostringstream out;
  bool pass = true;
  // n=257 left out: its per-level snapshot queues need more memory than the test machine has
  for (std::size_t n : {65, 129}) {
    RunOptions o;
    o.engine = forced();
    const auto m = run(gen_lower_bound(n), o);
    const double lg = std::log2(static_cast<double>(n));
    const double r = m.counters.at("queue.ops") / (std::pow(static_cast<double>(n), 3) * lg * lg * lg);
    pass = pass && r <= kQueueOpsK;
    out << " n=" << n << ":" << fmt(r, 4);
  }
  out << " (K=" << kQueueOpsK << ", n=257 not run);";
  double worst = 0;
  for (std::size_t n : {100, 200, 400}) {
    for (Distance d : {4u, 16u, static_cast<Distance>(n)}) {
      const auto in = testing::random_instance(11000 + n + d, n, n, 4 * n);
      auto g = DecrementalGraph::from_edge_list(in.n, in.edges);
      std::vector<EsTree> trees;
      for (VertexId s = 0; s < 8; ++s) trees.emplace_back(g, s, d);
      for (const Edge& e : in.order) {
        g.delete_edge(e);
        for (auto& t : trees) t.on_delete(e);
      }
      for (const auto& t : trees) {
        worst = std::max(worst, static_cast<double>(t.scan_steps()) / (in.edges.size() * (d + 1.0)));
      }
    }
  }
  pass = pass && worst <= kScanK;
  out << " ES scans / (m (d+1)) max " << fmt(worst) << " (K=" << kScanK << ")";
  return {pass, "queue ops / (n^3 lg^3 n):" + out.str()};
}

Verdict criterion12() {
  std::uint64_t runs = 0;
  for (std::uint64_t k = 0; k < 6; ++k) {
    const auto trace = k < 3 ? to_trace(testing::random_instance(12000 + k, 10, 24, 90)) : gen_lower_bound(9 + 8 * k);
    for (const char* s : {"exact", "approx_det", "approx_rand"}) {
      std::string text[2];
      std::vector<Distance> answers[2];
      for (int rep = 0; rep < 2; ++rep) {
        RunOptions o;
        o.structure = s;
        o.engine = forced(0.25, 2, 0.4, 77);
        o.adversary = k % 2 ? "greedy_pair" : "";
        const auto m = run(trace, o, [&](const DistanceStructure& d, const DecrementalGraph& g) {
          for (VertexId u = 0; u < g.num_vertices(); ++u) {
            for (VertexId v = 0; v < g.num_vertices(); ++v) answers[rep].push_back(d.query(u, v));
          }
        });
        text[rep] = format_metrics(m, false);
        for (const Edge& e : m.deleted) text[rep] += std::to_string(e.tail) + ">" + std::to_string(e.head) + " ";
        ++runs;
      }
      if (text[0] != text[1] || answers[0] != answers[1]) {
        return {false, std::string(s) + " differs between runs on trace " + std::to_string(k)};
      }
    }
  }
  return {true, std::to_string(runs) + " runs, metrics, deletion orders and answer streams identical in pairs"};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failed = 0;
  auto report = [&](int id, const std::string& name, const std::function<Verdict()>& f) {
    const auto t0 = clock::now();
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " -- " << v.detail
              << " [" << fmt(secs, 1) << "s]" << std::endl;
  };
  report(1, "exact distances equal the oracle", criterion1);
  report(2, "reported paths", criterion2);
  report(3, "separator contract and size", criterion3);
  report(4, "thin layer bound", criterion4);
  report(5, "deterministic stretch", criterion5);
  RandSuite suite;
  report(6, "randomized stretch under both adversaries", [&] {
    suite = rand_suite();
    return criterion6(suite);
  });
  report(7, "answers before the first mark ignore the seed", criterion7);
  report(8, "queue size at marking time", [&] { return criterion8(suite); });
  report(9, "sampler distribution", criterion9);
  report(10, "lower-bound change count", criterion10);
  report(11, "operation-count trends", criterion11);
  report(12, "determinism", criterion12);
  return failed == 0 ? 0 : 1;
}
