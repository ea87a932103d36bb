#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dapsp/engine.hpp"
#include "dapsp/sampler.hpp"

namespace dapsp {

// Witnesses of one (scale, sub-scale, source, target). The threshold is fixed
// and keys only grow, so a witness that goes over it once is gone for good and
// all that matters is how many are still within it.
struct WitnessQueue {
  VertexId target = kNoVertex;
  std::vector<VertexId> witness;
  std::vector<std::uint8_t> valid;
  std::uint32_t live = 0;
  bool dead = false;  // replaced by a transferred queue
};

struct InTree {
  VertexId root = kNoVertex;
  std::vector<VertexId> vertices;     // BFS order in the reversed graph, root first
  std::vector<VertexId> leaves;       // marked vertices met on the way (L)
  std::size_t unmarked = 0;
  std::vector<std::uint32_t> edges;   // edges scanned into unmarked vertices
};

struct PairOutcome {
  int kind = 0;                          // 1: separator scan, 2: union of leaf queues
  InTree tree;
  std::vector<VertexId> witnesses;       // witnesses within the threshold for the root
  std::vector<std::uint32_t> queues;     // queues created, one per receiving vertex
};

// key(s, v) = d~(u, s) + d~(s, v) one scale down. Non-owning, the callable
// has to outlive the call it is passed to.
class KeyFn {
 public:
  template <class F>
  KeyFn(const F& f)  // NOLINT: implicit on purpose
      : obj_(&f), call_([](const void* o, VertexId s, VertexId v) {
          return (*static_cast<const F*>(o))(s, v);
        }) {}
  Distance operator()(VertexId s, VertexId v) const { return call_(obj_, s, v); }

 private:
  const void* obj_;
  Distance (*call_)(const void*, VertexId, VertexId);
};

// Marks and witness queues of one source u on one sub-scale j of one scale.
class SubscaleUnit {
 public:
  SubscaleUnit(std::size_t n, VertexId source, Distance threshold);

  VertexId source() const noexcept { return source_; }
  Distance threshold() const noexcept { return threshold_; }
  bool marked(VertexId v) const { return marked_[v] != 0; }
  std::size_t marked_count() const noexcept { return marked_count_; }

  // nullptr when v has no witness left (or never had a queue)
  const WitnessQueue* queue(VertexId v) const;
  std::int32_t queue_id(VertexId v) const { return qidx_[v]; }
  const WitnessQueue& queue_at(std::uint32_t q) const { return queues_[q]; }
  // live witnesses of the queue of v, empty if there is none
  std::vector<VertexId> live_witnesses(VertexId v) const;

  // New queue for v from `members`, replacing any old one. Drops u, v and
  // witnesses over the threshold; nothing is stored when none is left.
  std::optional<std::uint32_t> make_queue(VertexId v, std::span<const VertexId> members, const KeyFn& key);
  // Appends s to the existing queue of v. Returns the slot, nullopt if dropped.
  std::optional<std::uint32_t> add_witness(VertexId v, VertexId s, const KeyFn& key);
  // Witness `slot` of queue q went over the threshold; true if that emptied it.
  bool drop(std::uint32_t q, std::uint32_t slot);

  // Sampled witnesses of a target whose queue does not exist yet.
  void add_pending(VertexId v, VertexId s) { pending_[v].push_back(s); }
  std::vector<VertexId> take_pending(VertexId v);

  // BFS from root in the reversed graph up to `radius`, expanding only
  // unmarked vertices. Marked vertices it meets become leaves.
  InTree grow_in_tree(const DecrementalGraph& g, VertexId root, Distance radius) const;

  // Grows the in-tree of root, refills the queues of its vertices and marks
  // them all. `separator` is the full separator of the source.
  PairOutcome process_pair(const DecrementalGraph& g, VertexId root, Distance radius,
                           std::span<const VertexId> separator, const KeyFn& key);

  // edges scanned by more than one in-tree of this unit
  std::uint64_t edge_repeats() const noexcept { return edge_repeats_; }

 private:
  VertexId source_;
  Distance threshold_;
  std::vector<std::uint8_t> marked_;
  std::size_t marked_count_ = 0;
  std::vector<std::int32_t> qidx_;
  std::vector<WitnessQueue> queues_;
  std::unordered_map<VertexId, std::vector<VertexId>> pending_;
  std::vector<std::uint8_t> edge_seen_;
  std::uint64_t edge_repeats_ = 0;
};

// Randomized (1+eps)-approximate decremental APSP. Each scale keeps c+2
// sub-scales; on each, a target only tracks separator vertices sampled for it
// until none of them is good, and then takes over a small witness set found
// through an in-tree. Answers are rounded to the sub-scale thresholds.
class RandApsp final : public DistanceStructure {
 public:
  RandApsp(const DecrementalGraph& g, const EngineOptions& opt);

  std::string name() const override { return "approx_rand"; }
  std::vector<PairChange> on_delete(const Edge& e) override;
  Distance query(VertexId u, VertexId v) const override { return u == v ? 0 : core_.top(u, v); }
  Counters counters() const override;

  const detail::LadderCore& core() const { return core_; }
  Distance es_threshold() const noexcept { return es_threshold_; }
  double probability() const noexcept { return p_; }
  std::size_t num_subscales() const noexcept { return core_.ladder().c() + 2; }
  // threshold (1+eps')^{2i} d_{i,j} of level l; j = 0 is the activation threshold
  Distance key_threshold(std::size_t l, std::size_t j) const { return levels_[l - 1].subs[j].t; }
  const SubscaleUnit* unit(std::size_t l, std::size_t j, VertexId u) const;

  // Clock of the first update in which v got marked for source u on any
  // sub-scale, nullopt if never.
  std::optional<Clock> first_mark(VertexId u, VertexId v) const;
  // witness-set size handed to each vertex when it was marked
  const std::vector<std::uint32_t>& mark_sizes() const noexcept { return mark_sizes_; }

 private:
  struct Ref {
    VertexId u;
    std::uint32_t queue;
    std::uint32_t slot;
  };
  struct Sub {
    Distance t = 0;
    std::vector<std::unique_ptr<SubscaleUnit>> units;
    std::unordered_map<std::uint64_t, std::vector<Ref>> index;
  };
  struct Level {
    std::vector<Sub> subs;
    std::vector<std::size_t> sampled;  // separator prefix already sampled, per source
  };
  struct Candidate {
    std::uint32_t j;
    VertexId u, v;
    bool operator<(const Candidate& o) const {
      return j != o.j ? j < o.j : u != o.u ? u < o.u : v < o.v;
    }
    bool operator==(const Candidate& o) const { return j == o.j && u == o.u && v == o.v; }
  };

  SubscaleUnit& unit_at(std::size_t l, std::size_t j, VertexId u);
  struct Key {
    const detail::LadderCore* core;
    std::size_t l;
    VertexId u;
    Distance operator()(VertexId s, VertexId v) const {
      return sat_add(core->prefix(l - 1, u, s), core->prefix(l - 1, s, v));
    }
  };
  void register_queue(Sub& sub, VertexId u, std::uint32_t q);
  void sample_new_members(std::size_t l);
  std::vector<PairChange> process(std::size_t l, const std::vector<PairChange>& lower, bool init);

  Distance es_threshold_;
  double p_;
  std::uint64_t seed_;
  detail::LadderCore core_;
  std::vector<Level> levels_;
  GeometricTable table_;
  Clock clock_ = 0;
  std::vector<Clock> first_mark_;
  std::vector<std::uint32_t> mark_sizes_;

  std::uint64_t witnesses_ = 0;
  std::uint64_t drops_ = 0;
  std::uint64_t snapshots_ = 0;
  std::uint64_t sample_hits_ = 0;
  std::uint64_t trees_ = 0;
  std::uint64_t case1_ = 0;
  std::uint64_t case2_ = 0;
  std::uint64_t tree_edges_ = 0;
  std::uint64_t marks_ = 0;
};

}  // namespace dapsp
