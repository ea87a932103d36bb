#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "dapsp/engine.hpp"
#include "dapsp/trace.hpp"

namespace dapsp {

// exact | approx_det | approx_rand | es_baseline
std::unique_ptr<DistanceStructure> make_structure(const std::string& name,
                                                  const DecrementalGraph& g,
                                                  const EngineOptions& opt);
bool reports_exact_distances(const std::string& name);

struct RunOptions {
  std::string structure = "exact";
  EngineOptions engine;
  bool verify = false;
  // full-matrix check after every `verify_stride` deletions (and at start); 0 = queries only
  std::size_t verify_stride = 1;
  // empty: replay the trace; otherwise random | greedy_pair | path_cutter, and
  // the trace only provides the initial graph
  std::string adversary;
  VertexId cut_source = 0;
  VertexId cut_target = kNoVertex;  // n-1 when unset
  std::size_t max_deletions = std::numeric_limits<std::size_t>::max();
};

struct RunMetrics {
  std::string structure;
  std::string mode;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t deletions = 0;
  std::uint64_t queries = 0;
  std::uint64_t matrix_changes = 0;  // summed sizes of the change lists
  bool verified = false;
  std::uint64_t checked = 0;
  double max_stretch = 1.0;
  bool pass = true;
  std::string failure;  // first offending entry
  Counters counters;
  std::vector<Edge> deleted;
  double wall_total = 0;
  double wall_max = 0;
};

// Called after construction and after every deletion.
using StepHook = std::function<void(const DistanceStructure&, const DecrementalGraph&)>;

// Stops at the first verification failure (pass = false). Throws BadParams
// for unknown names or an adversary the structure cannot serve.
RunMetrics run(const DeletionTrace& trace, const RunOptions& opt, const StepHook& hook = {});

// Upper end of the accepted estimate for distance d.
double stretch_limit(const std::string& structure, double eps);

// "key: value" lines; wall times last and only when asked for.
std::string format_metrics(const RunMetrics& m, bool with_timing = true);

}  // namespace dapsp
