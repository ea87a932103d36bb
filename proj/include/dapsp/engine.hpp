#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dapsp/es_tree.hpp"
#include "dapsp/graph.hpp"
#include "dapsp/scales.hpp"
#include "dapsp/separator.hpp"
#include "dapsp/types.hpp"

namespace dapsp {

struct EngineOptions {
  double eps = 0.25;
  // separator levels start at D_i >= ceil(cutoff_factor * lg n)
  double cutoff_factor = 33.0;
  // hybrid ES depth for the approximate structures; 0 = formula
  Distance es_threshold = 0;
  // sampling probability of the randomized structure; negative = formula
  double sample_probability = -1.0;
  std::uint64_t seed = 1;
};

using Counters = std::map<std::string, std::uint64_t>;

// Common interface of everything the harness can drive.
class DistanceStructure {
 public:
  virtual ~DistanceStructure() = default;

  virtual std::string name() const = 0;
  // Called once per deletion after the graph applied it. Returns the pairs
  // whose answer changed, sorted by (u, v).
  virtual std::vector<PairChange> on_delete(const Edge& e) = 0;
  virtual Distance query(VertexId u, VertexId v) const = 0;
  virtual bool supports_paths() const { return false; }
  // Walk-free path u..v of length <= query(u, v), nullopt if unreachable.
  virtual std::optional<std::vector<VertexId>> report_path(VertexId u, VertexId v) const;
  virtual Counters counters() const = 0;
};

// ceil(n lg^2 n / (eps sqrt m)), unclamped
double det_hybrid_formula(std::size_t n, std::size_t m, double eps);
// ceil(n^(2/3) lg n / (m^(1/3) eps)), unclamped
double rand_hybrid_formula(std::size_t n, std::size_t m, double eps);
// sqrt(m eps d) lg n / n, unclamped
double rand_probability_formula(std::size_t n, std::size_t m, double eps, Distance d);
// clamp into [ceil(cutoff_factor lg n), n]; the upper end wins if they cross
Distance clamp_threshold(double value, std::size_t n, double cutoff_factor);

// Baseline: one depth-n ES-tree per source.
class EsBaseline final : public DistanceStructure {
 public:
  explicit EsBaseline(const DecrementalGraph& g);

  std::string name() const override { return "es_baseline"; }
  std::vector<PairChange> on_delete(const Edge& e) override;
  Distance query(VertexId u, VertexId v) const override { return trees_[u].level(v); }
  bool supports_paths() const override { return true; }
  std::optional<std::vector<VertexId>> report_path(VertexId u, VertexId v) const override;
  Counters counters() const override;

 private:
  std::vector<EsTree> trees_;
};

namespace detail {

// The part shared by the three ladder structures: base ES-trees, per-level
// prefix estimates d~_{<=i}(u, v) and one separator per (level, source).
// Level index l = 0 is the ES base; level l >= 1 is scale i = levels[l-1].
class LadderCore {
 public:
  LadderCore(const DecrementalGraph& g, ScaleLadder ladder, std::size_t first_level,
             Distance base_depth);

  const DecrementalGraph& graph() const { return *g_; }
  const ScaleLadder& ladder() const { return ladder_; }
  std::size_t n() const { return n_; }
  std::size_t num_levels() const { return scales_.size(); }  // not counting the base
  std::size_t scale(std::size_t l) const { return scales_[l - 1]; }
  Distance base_depth() const { return base_depth_; }

  Distance prefix(std::size_t l, VertexId u, VertexId v) const {
    return prefix_[l][static_cast<std::size_t>(u) * n_ + v];
  }
  void set_prefix(std::size_t l, VertexId u, VertexId v, Distance d) {
    prefix_[l][static_cast<std::size_t>(u) * n_ + v] = d;
  }
  Distance top(VertexId u, VertexId v) const { return prefix(num_levels(), u, v); }

  Separator& separator(std::size_t l, VertexId u) { return seps_[l - 1][u]; }
  const Separator& separator(std::size_t l, VertexId u) const { return seps_[l - 1][u]; }
  const EsTree& tree(VertexId u) const { return trees_[u]; }

  // Level-0 changes: all pairs from 0 at init, ES-tree changes afterwards.
  std::vector<PairChange> base_init();
  std::vector<PairChange> base_update(const Edge& e);

  // Hands every vertex whose level-(l-1) estimate crossed the trigger to the separator.
  void run_triggers(std::size_t l, const std::vector<PairChange>& lower);

  void check_clock();
  void add_counters(Counters& c) const;

 private:
  const DecrementalGraph* g_;
  ScaleLadder ladder_;
  std::size_t n_;
  Distance base_depth_;
  Clock clock_;
  std::vector<std::size_t> scales_;
  std::vector<EsTree> trees_;
  std::vector<std::vector<Distance>> prefix_;
  std::shared_ptr<SeparatorScratch> scratch_;
  std::vector<std::vector<Separator>> seps_;
};

// Sorted, duplicate-free list of pair keys.
void sort_unique(std::vector<std::uint64_t>& keys);

}  // namespace detail

}  // namespace dapsp
