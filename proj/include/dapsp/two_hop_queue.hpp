#pragma once

#include <cstdint>
#include <vector>

#include "dapsp/types.hpp"

namespace dapsp {

// Min-queue over a fixed witness set with increase-key only. Ordered by
// (key, witness id); infinite keys stay in the heap.
class TwoHopQueue {
 public:
  struct Member {
    VertexId witness;
    Distance key;
  };

  TwoHopQueue() = default;
  explicit TwoHopQueue(std::vector<Member> members);

  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  Distance min_key() const { return heap_.empty() ? kInfinity : members_[heap_[0]].key; }
  VertexId min_witness() const { return heap_.empty() ? kNoVertex : members_[heap_[0]].witness; }
  const Member& member(std::uint32_t slot) const { return members_[slot]; }

  // Throws std::logic_error if the key would decrease.
  void increase_key(std::uint32_t slot, Distance key);

 private:
  bool less(std::uint32_t a, std::uint32_t b) const;
  void sift_down(std::size_t pos);
  void place(std::size_t pos, std::uint32_t slot);

  std::vector<Member> members_;
  std::vector<std::uint32_t> heap_;  // slots
  std::vector<std::uint32_t> pos_;   // slot -> heap position
};

}  // namespace dapsp
