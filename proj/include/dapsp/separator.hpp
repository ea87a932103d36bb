#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dapsp/graph.hpp"
#include "dapsp/scales.hpp"
#include "dapsp/types.hpp"

namespace dapsp {

struct ThinLayer {
  Distance index = 0;               // BFS distance of the layer from the root
  std::vector<VertexId> layer;      // L
  std::vector<VertexId> inner;      // union of the strictly closer layers
};

// BFS from root (in the given orientation) avoiding vertices with removed[v] set,
// returning the first layer k in [d1, d2] with |L_k| * (d2-d1+1) <= |L_<k| * lg n.
// Throws WindowTooNarrow if d2-d1+1 < lg n and SearchExhausted if the BFS dies
// out inside the window.
ThinLayer find_thin_layer(const DecrementalGraph& g, VertexId root, Orientation o, Distance d1,
                          Distance d2, const std::vector<std::uint8_t>* removed = nullptr);

// Scratch space shared by all separators on one graph (one trigger runs at a time).
struct SeparatorScratch {
  explicit SeparatorScratch(const DecrementalGraph& g);

  std::uint32_t next_epoch();

  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> seen_s, seen_v;   // vertex stamps per side
  std::vector<std::uint32_t> edge_stamp;       // edge charged in this trigger
  std::vector<std::uint8_t> edge_side;         // 0 = s-side, 1 = v-side
  std::vector<VertexId> order_s, order_v;
  std::vector<std::size_t> layers_s, layers_v;
};

struct SeparatorCounters {
  std::uint64_t triggers = 0;
  std::uint64_t skipped = 0;          // already cut off
  std::uint64_t layers_added = 0;
  std::uint64_t fallback_layers = 0;  // no thin layer in either window
  std::uint64_t unseparated = 0;      // nothing could be added at all
  std::uint64_t exhausted = 0;        // one side ran out of vertices
  std::uint64_t budget_units = 0;
  std::uint64_t edge_overlaps = 0;    // edges charged by both searches
};

// Growing separator S around a source for one distance scale d.
//
// on_trigger(v) is called when the estimate of d(s, v) reaches 32d/33. It runs
// two budgeted BFS searches in strict alternation (one budget unit each): from
// s in G \ S and from v in the reversal of G \ S. Each vertex costs its degree
// budget before it is expanded. The first layer that is thin within its window
// is added to S.
class Separator {
 public:
  Separator(const DecrementalGraph& g, VertexId source, const SeparatorWindows& w,
            std::shared_ptr<SeparatorScratch> scratch = nullptr);

  VertexId source() const noexcept { return source_; }
  const SeparatorWindows& windows() const noexcept { return w_; }
  // true when the windows are too narrow for the thin-layer argument and the
  // s-search alone runs over the safe range below the trigger
  bool small_scale() const noexcept { return small_; }

  std::vector<VertexId> on_trigger(VertexId v);

  bool contains(VertexId v) const { return in_set_[v] != 0; }
  bool cut_off(VertexId v) const { return cut_off_[v] != 0; }
  std::size_t size() const noexcept { return log_.size(); }

  // A snapshot is a prefix length of the grow-log.
  std::size_t snapshot() const noexcept { return log_.size(); }
  std::span<const VertexId> members(std::size_t snapshot) const {
    return std::span<const VertexId>(log_).first(snapshot);
  }
  std::span<const VertexId> members() const { return log_; }

  const SeparatorCounters& counters() const noexcept { return counters_; }

  // d^(w) = max(Delta, initial degree rounded up to a multiple of Delta), Delta = ceil(m/n)
  static std::uint64_t degree_budget(const DecrementalGraph& g, VertexId w);

 private:
  struct Side;

  void add_layer(std::span<const VertexId> layer);

  const DecrementalGraph* g_;
  VertexId source_;
  SeparatorWindows w_;
  bool small_ = false;
  Distance s_first_ = 0, s_last_ = 0, v_last_ = 0;
  std::shared_ptr<SeparatorScratch> scratch_;

  std::vector<std::uint8_t> in_set_;
  std::vector<std::uint8_t> cut_off_;
  std::vector<VertexId> log_;
  SeparatorCounters counters_;
};

}  // namespace dapsp
