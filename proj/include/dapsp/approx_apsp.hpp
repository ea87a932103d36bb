#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dapsp/engine.hpp"

namespace dapsp {

// Witness set of one (scale, pair) split over c sub-scale thresholds
// K_0 <= ... <= K_{c-1}. A member counts for sub-scale j while its two-hop
// key is at most K_j; since keys only grow, each member's first qualifying
// sub-scale only moves up and the smallest live sub-scale is a monotone cursor.
class CountingQueue {
 public:
  struct Member {
    VertexId witness;
    std::uint32_t first;  // first qualifying sub-scale, c if none
  };

  CountingQueue(std::size_t c, std::vector<Member> members);

  std::size_t c() const noexcept { return hist_.size() - 1; }
  // number of members with key <= K_j
  std::uint32_t count(std::size_t j) const;
  // smallest sub-scale with a qualifying member, c if none
  std::size_t best() const noexcept { return best_; }
  const std::vector<Member>& members() const noexcept { return members_; }

  // Moves member `slot` to sub-scale `first` (never downwards).
  void raise(std::uint32_t slot, std::uint32_t first);

 private:
  std::vector<Member> members_;
  std::vector<std::uint32_t> hist_;
  std::size_t best_;
};

// Deterministic (1+eps)-approximate decremental APSP.
class ApproxApsp final : public DistanceStructure {
 public:
  ApproxApsp(const DecrementalGraph& g, const EngineOptions& opt);

  std::string name() const override { return "approx_det"; }
  std::vector<PairChange> on_delete(const Edge& e) override;
  Distance query(VertexId u, VertexId v) const override { return u == v ? 0 : core_.top(u, v); }
  bool supports_paths() const override { return true; }
  std::optional<std::vector<VertexId>> report_path(VertexId u, VertexId v) const override;
  Counters counters() const override;

  const detail::LadderCore& core() const { return core_; }
  Distance es_threshold() const noexcept { return es_threshold_; }
  // sub-scale threshold K_j of level l
  Distance key_threshold(std::size_t l, std::size_t j) const;
  const CountingQueue* queue(std::size_t l, VertexId u, VertexId v) const;

 private:
  struct Ref {
    std::uint32_t queue;
    std::uint32_t slot;
  };
  struct Level {
    std::vector<Distance> k;  // K_0..K_{c-1}
    std::vector<std::int32_t> qidx;
    std::vector<CountingQueue> queues;
    std::vector<std::uint64_t> owner;
    std::unordered_map<std::uint64_t, std::vector<Ref>> index;
  };

  std::uint32_t first_fit(const Level& L, Distance key) const;
  std::vector<PairChange> process(std::size_t l, const std::vector<PairChange>& lower, bool init);
  void make_queue(std::size_t l, VertexId u, VertexId v);
  void append_walk(std::size_t l, VertexId u, VertexId v, std::vector<VertexId>& out) const;

  Distance es_threshold_;
  detail::LadderCore core_;
  std::vector<Level> levels_;
  std::uint64_t raises_ = 0;
  std::uint64_t snapshots_ = 0;
  std::uint64_t members_ = 0;
};

}  // namespace dapsp
