#include "dapsp/engine.hpp"

#include <algorithm>
#include <cmath>

namespace dapsp {

std::optional<std::vector<VertexId>> DistanceStructure::report_path(VertexId, VertexId) const {
  throw Error(Errc::bad_params, name() + " does not report paths");
}

double det_hybrid_formula(std::size_t n, std::size_t m, double eps) {
  const double lg = std::log2(static_cast<double>(n));
  return std::ceil(n * lg * lg / (eps * std::sqrt(static_cast<double>(std::max<std::size_t>(m, 1)))));
}

double rand_hybrid_formula(std::size_t n, std::size_t m, double eps) {
  const double lg = std::log2(static_cast<double>(n));
  return std::ceil(std::cbrt(static_cast<double>(n) * n) * lg /
                   (std::cbrt(static_cast<double>(std::max<std::size_t>(m, 1))) * eps));
}

double rand_probability_formula(std::size_t n, std::size_t m, double eps, Distance d) {
  const double lg = std::log2(static_cast<double>(n));
  return std::sqrt(static_cast<double>(m) * eps * d) * lg / static_cast<double>(n);
}

Distance clamp_threshold(double value, std::size_t n, double cutoff_factor) {
  const double lo = log_cutoff(n, cutoff_factor);
  const double v = std::min(std::max(value, lo), static_cast<double>(n));
  return static_cast<Distance>(std::max(1.0, v));
}

EsBaseline::EsBaseline(const DecrementalGraph& g) {
  const std::size_t n = g.num_vertices();
  const Distance depth = static_cast<Distance>(std::max<std::size_t>(n, 1));
  trees_.reserve(n);
  for (VertexId u = 0; u < n; ++u) trees_.emplace_back(g, u, depth);
}

std::vector<PairChange> EsBaseline::on_delete(const Edge& e) {
  std::vector<PairChange> out;
  for (VertexId u = 0; u < trees_.size(); ++u) {
    for (const LevelChange& c : trees_[u].on_delete(e)) {
      out.push_back({u, c.vertex, c.old_level, c.new_level});
    }
  }
  return out;
}

std::optional<std::vector<VertexId>> EsBaseline::report_path(VertexId u, VertexId v) const {
  auto p = trees_[u].path(v);
  if (p.empty()) return std::nullopt;
  return p;
}

Counters EsBaseline::counters() const {
  std::uint64_t scans = 0;
  for (const auto& t : trees_) scans += t.scan_steps();
  return {{"es.scan_steps", scans}};
}

namespace detail {

void sort_unique(std::vector<std::uint64_t>& keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

LadderCore::LadderCore(const DecrementalGraph& g, ScaleLadder ladder, std::size_t first_level,
                       Distance base_depth)
    : g_(&g),
      ladder_(std::move(ladder)),
      n_(g.num_vertices()),
      base_depth_(std::max<Distance>(base_depth, 1)),
      clock_(g.clock()) {
  for (std::size_t i = first_level; i <= ladder_.i_max(); ++i) scales_.push_back(i);
  trees_.reserve(n_);
  for (VertexId u = 0; u < n_; ++u) trees_.emplace_back(g, u, base_depth_);
  prefix_.assign(scales_.size() + 1, std::vector<Distance>(n_ * n_, 0));
  scratch_ = std::make_shared<SeparatorScratch>(g);
  seps_.resize(scales_.size());
  for (std::size_t l = 0; l < scales_.size(); ++l) {
    seps_[l].reserve(n_);
    for (VertexId u = 0; u < n_; ++u) {
      seps_[l].emplace_back(g, u, ladder_.windows(scales_[l]), scratch_);
    }
  }
}

std::vector<PairChange> LadderCore::base_init() {
  std::vector<PairChange> out;
  out.reserve(n_ * n_);
  for (VertexId u = 0; u < n_; ++u) {
    for (VertexId v = 0; v < n_; ++v) {
      if (u == v) continue;
      const Distance d = trees_[u].level(v);
      set_prefix(0, u, v, d);
      out.push_back({u, v, 0, d});
    }
  }
  return out;
}

std::vector<PairChange> LadderCore::base_update(const Edge& e) {
  std::vector<PairChange> out;
  for (VertexId u = 0; u < n_; ++u) {
    for (const LevelChange& c : trees_[u].on_delete(e)) {
      set_prefix(0, u, c.vertex, c.new_level);
      out.push_back({u, c.vertex, c.old_level, c.new_level});
    }
  }
  return out;
}

void LadderCore::run_triggers(std::size_t l, const std::vector<PairChange>& lower) {
  const Distance trig = ladder_.windows(scale(l)).trigger;
  for (const PairChange& c : lower) {
    if (c.old_value < trig && c.new_value >= trig) separator(l, c.u).on_trigger(c.v);
  }
}

void LadderCore::check_clock() {
  if (g_->clock() != clock_ + 1) {
    throw Error(Errc::clock_skew, "structure at " + std::to_string(clock_) + ", graph at " +
                                      std::to_string(g_->clock()));
  }
  clock_ = g_->clock();
}

void LadderCore::add_counters(Counters& c) const {
  std::uint64_t scans = 0;
  for (const auto& t : trees_) scans += t.scan_steps();
  c["es.scan_steps"] += scans;
  c["ladder.levels"] = scales_.size();
  c["ladder.base_depth"] = base_depth_;
  c["ladder.c"] = ladder_.c();
  SeparatorCounters sum;
  std::uint64_t size_total = 0, size_max = 0;
  for (const auto& level : seps_) {
    for (const auto& s : level) {
      const auto& k = s.counters();
      sum.triggers += k.triggers;
      sum.skipped += k.skipped;
      sum.layers_added += k.layers_added;
      sum.fallback_layers += k.fallback_layers;
      sum.unseparated += k.unseparated;
      sum.exhausted += k.exhausted;
      sum.budget_units += k.budget_units;
      sum.edge_overlaps += k.edge_overlaps;
      size_total += s.size();
      size_max = std::max<std::uint64_t>(size_max, s.size());
    }
  }
  c["separator.triggers"] = sum.triggers;
  c["separator.skipped"] = sum.skipped;
  c["separator.layers_added"] = sum.layers_added;
  c["separator.fallback_layers"] = sum.fallback_layers;
  c["separator.unseparated"] = sum.unseparated;
  c["separator.exhausted"] = sum.exhausted;
  c["separator.budget_units"] = sum.budget_units;
  c["separator.edge_overlaps"] = sum.edge_overlaps;
  c["separator.size_total"] = size_total;
  c["separator.size_max"] = size_max;
}

}  // namespace detail

}  // namespace dapsp
