#include "dapsp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>

#include "dapsp/approx_apsp.hpp"
#include "dapsp/exact_apsp.hpp"
#include "dapsp/oracle.hpp"
#include "dapsp/rand_apsp.hpp"

namespace dapsp {

std::unique_ptr<DistanceStructure> make_structure(const std::string& name,
                                                  const DecrementalGraph& g,
                                                  const EngineOptions& opt) {
  if (name == "exact") return std::make_unique<ExactApsp>(g, opt);
  if (name == "approx_det") return std::make_unique<ApproxApsp>(g, opt);
  if (name == "approx_rand") return std::make_unique<RandApsp>(g, opt);
  if (name == "es_baseline") return std::make_unique<EsBaseline>(g);
  throw Error(Errc::bad_params, "unknown structure '" + name + "'");
}

bool reports_exact_distances(const std::string& name) {
  return name == "exact" || name == "es_baseline";
}

double stretch_limit(const std::string& structure, double eps) {
  if (reports_exact_distances(structure)) return 1.0;
  return (1.0 + eps) * (1.0 + std::ldexp(1.0, -40));
}

namespace {

std::string fmt_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

class Checker {
 public:
  Checker(const RunOptions& opt, RunMetrics& m)
      : limit_(stretch_limit(opt.structure, opt.engine.eps)), m_(m) {}

  // false on the first violation
  bool check(Clock clock, VertexId u, VertexId v, Distance got, Distance want) {
    ++m_.checked;
    bool ok;
    if (want == kInfinity || want == 0) {
      ok = got == want;
    } else {
      ok = got != kInfinity && got >= want && static_cast<double>(got) <= limit_ * want;
      if (got != kInfinity && got >= want) {
        m_.max_stretch = std::max(m_.max_stretch, static_cast<double>(got) / want);
      }
    }
    if (!ok) {
      m_.pass = false;
      m_.failure = "clock=" + std::to_string(clock) + " u=" + std::to_string(u) +
                   " v=" + std::to_string(v) + " got=" + show(got) + " want=" + show(want);
    }
    return ok;
  }

  bool check_all(const DistanceStructure& s, const DecrementalGraph& g) {
    const auto M = oracle::recompute(g);
    for (VertexId u = 0; u < M.n; ++u) {
      for (VertexId v = 0; v < M.n; ++v) {
        if (!check(g.clock(), u, v, s.query(u, v), M.at(u, v))) return false;
      }
    }
    return true;
  }

 private:
  static std::string show(Distance d) { return d == kInfinity ? "inf" : std::to_string(d); }

  double limit_;
  RunMetrics& m_;
};

// first edge of a shortest u->v path, smallest ids first
Edge first_edge_of_shortest_path(const DecrementalGraph& g, VertexId u, VertexId v) {
  const oracle::ShortestPathDag dag(g, u);
  VertexId x = v;
  while (dag.dist(x) > 1) {
    const auto& pred = dag.predecessors(x);
    x = *std::min_element(pred.begin(), pred.end());
  }
  return {u, x};
}

class Adversary {
 public:
  Adversary(const RunOptions& opt, std::size_t n)
      : kind_(opt.adversary),
        rng_(opt.engine.seed),
        source_(opt.cut_source),
        target_(opt.cut_target == kNoVertex ? static_cast<VertexId>(n - 1) : opt.cut_target) {
    if (kind_ != "random" && kind_ != "greedy_pair" && kind_ != "path_cutter") {
      throw Error(Errc::bad_params, "unknown adversary '" + kind_ + "'");
    }
    if (n == 0 || source_ >= n || target_ >= n) {
      throw Error(Errc::bad_params, "path_cutter pair out of range");
    }
  }

  void check_structure(const DistanceStructure& s) const {
    if (kind_ == "path_cutter" && !s.supports_paths()) {
      throw Error(Errc::bad_params, "path_cutter needs path reporting, " + s.name() + " has none");
    }
  }

  // next deletion, nullopt when the run is over
  std::optional<Edge> next(const DistanceStructure& s, const DecrementalGraph& g,
                           std::uint64_t& queries) {
    if (g.num_edges() == 0) return std::nullopt;
    if (kind_ == "random") {
      const auto edges = g.edges();
      std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
      return edges[pick(rng_)];
    }
    if (kind_ == "greedy_pair") {
      const std::size_t n = g.num_vertices();
      Distance best = 0;
      VertexId bu = 0, bv = 0;
      for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = 0; v < n; ++v) {
          if (u == v) continue;
          const Distance q = s.query(u, v);
          ++queries;
          if (q != kInfinity && q > best) {
            best = q;
            bu = u;
            bv = v;
          }
        }
      }
      if (best == 0) return std::nullopt;
      return first_edge_of_shortest_path(g, bu, bv);
    }
    ++queries;
    const auto path = s.report_path(source_, target_);
    if (!path || path->size() < 2) return std::nullopt;
    for (std::size_t k = 0; k + 1 < path->size(); ++k) {
      if (g.has_edge((*path)[k], (*path)[k + 1])) return Edge{(*path)[k], (*path)[k + 1]};
    }
    return std::nullopt;
  }

 private:
  std::string kind_;
  std::mt19937_64 rng_;
  VertexId source_, target_;
};

}  // namespace

RunMetrics run(const DeletionTrace& trace, const RunOptions& opt, const StepHook& hook) {
  using clock = std::chrono::steady_clock;
  RunMetrics m;
  m.structure = opt.structure;
  m.mode = opt.adversary.empty() ? "trace" : "adversary:" + opt.adversary;
  m.n = trace.n;
  m.m = trace.edges.size();
  m.verified = opt.verify;

  DecrementalGraph g = DecrementalGraph::from_edge_list(trace.n, trace.edges);
  std::optional<Adversary> adv;
  if (!opt.adversary.empty()) adv.emplace(opt, trace.n);

  const auto t0 = clock::now();
  auto s = make_structure(opt.structure, g, opt.engine);
  m.wall_total += std::chrono::duration<double>(clock::now() - t0).count();
  if (adv) adv->check_structure(*s);
  if (hook) hook(*s, g);

  Checker checker(opt, m);
  if (opt.verify && opt.verify_stride > 0 && !checker.check_all(*s, g)) {
    m.counters = s->counters();
    return m;
  }

  auto remove = [&](const Edge& e) {
    g.delete_edge(e);
    const auto t1 = clock::now();
    m.matrix_changes += s->on_delete(e).size();
    const double dt = std::chrono::duration<double>(clock::now() - t1).count();
    m.wall_total += dt;
    m.wall_max = std::max(m.wall_max, dt);
    m.deleted.push_back(e);
    ++m.deletions;
    if (hook) hook(*s, g);
    if (opt.verify && opt.verify_stride > 0 && m.deletions % opt.verify_stride == 0) {
      return checker.check_all(*s, g);
    }
    return true;
  };

  if (adv) {
    while (m.deletions < opt.max_deletions) {
      const auto e = adv->next(*s, g, m.queries);
      if (!e) break;
      if (!remove(*e)) break;
    }
  } else {
    std::optional<oracle::Matrix> truth;  // oracle matrix of the current clock
    for (const TraceEvent& ev : trace.events) {
      if (ev.kind == TraceEvent::Kind::remove) {
        if (m.deletions >= opt.max_deletions) break;
        truth.reset();
        if (!remove({ev.u, ev.v})) break;
        continue;
      }
      if (ev.kind == TraceEvent::Kind::query) {
        ++m.queries;
        if (!opt.verify) continue;
        if (!truth) truth = oracle::recompute(g);
        if (!checker.check(g.clock(), ev.u, ev.v, s->query(ev.u, ev.v), truth->at(ev.u, ev.v))) break;
        continue;
      }
      m.queries += trace.n * trace.n;
      if (opt.verify && !checker.check_all(*s, g)) break;
    }
  }
  m.counters = s->counters();
  return m;
}

std::string format_metrics(const RunMetrics& m, bool with_timing) {
  std::ostringstream out;
  out << "structure: " << m.structure << '\n';
  out << "run.mode: " << m.mode << '\n';
  out << "graph.n: " << m.n << '\n';
  out << "graph.m: " << m.m << '\n';
  out << "run.deletions: " << m.deletions << '\n';
  out << "run.queries: " << m.queries << '\n';
  out << "run.matrix_changes: " << m.matrix_changes << '\n';
  for (const auto& [k, v] : m.counters) out << "counters." << k << ": " << v << '\n';
  if (m.verified) {
    out << "verify.checked: " << m.checked << '\n';
    out << "verify.max_stretch: " << fmt_double(m.max_stretch, 9) << '\n';
    out << "verify.verdict: " << (m.pass ? "pass" : "fail") << '\n';
    if (!m.pass) out << "verify.failure: " << m.failure << '\n';
  } else {
    out << "verify.verdict: skipped\n";
  }
  if (with_timing) {
    out << "wall.total_seconds: " << fmt_double(m.wall_total, 6) << '\n';
    out << "wall.max_event_seconds: " << fmt_double(m.wall_max, 6) << '\n';
  }
  return out.str();
}

}  // namespace dapsp
