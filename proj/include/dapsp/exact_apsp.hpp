#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dapsp/engine.hpp"
#include "dapsp/two_hop_queue.hpp"

namespace dapsp {

// Exact decremental APSP. Distances up to the first separator scale come from
// ES-trees; each further scale i keeps, for every pair whose lower estimate
// passed floor(D_i), a queue of two-hop witnesses taken from a snapshot of the
// source's separator.
class ExactApsp final : public DistanceStructure {
 public:
  explicit ExactApsp(const DecrementalGraph& g, const EngineOptions& opt = {});

  std::string name() const override { return "exact"; }
  std::vector<PairChange> on_delete(const Edge& e) override;
  Distance query(VertexId u, VertexId v) const override { return u == v ? 0 : core_.top(u, v); }
  bool supports_paths() const override { return true; }
  std::optional<std::vector<VertexId>> report_path(VertexId u, VertexId v) const override;
  Counters counters() const override;

  const detail::LadderCore& core() const { return core_; }
  // Queue of level l (1-based) for (u, v), nullptr before its snapshot.
  const TwoHopQueue* queue(std::size_t l, VertexId u, VertexId v) const;

 private:
  struct Ref {
    std::uint32_t queue;
    std::uint32_t slot;
  };
  struct Level {
    std::vector<std::int32_t> qidx;
    std::vector<TwoHopQueue> queues;
    std::vector<std::uint64_t> owner;
    std::unordered_map<std::uint64_t, std::vector<Ref>> index;
  };

  std::vector<PairChange> process(std::size_t l, const std::vector<PairChange>& lower, bool init);
  void make_queue(std::size_t l, VertexId u, VertexId v);
  void append_path(std::size_t l, VertexId u, VertexId v, std::vector<VertexId>& out) const;

  detail::LadderCore core_;
  std::vector<Level> levels_;
  std::uint64_t increase_keys_ = 0;
  std::uint64_t snapshots_ = 0;
  std::uint64_t members_ = 0;
};

namespace detail {
// Smallest scale i with floor(D_i) >= d, or i_max + 1.
std::size_t first_level_at_least(const ScaleLadder& ladder, Distance d);
// Removes closed loops from a walk, leaving a simple path with the same ends.
std::vector<VertexId> erase_loops(const std::vector<VertexId>& walk);
}  // namespace detail

}  // namespace dapsp
