#include "dapsp/two_hop_queue.hpp"

#include <stdexcept>

namespace dapsp {

TwoHopQueue::TwoHopQueue(std::vector<Member> members) : members_(std::move(members)) {
  const auto n = static_cast<std::uint32_t>(members_.size());
  heap_.resize(n);
  pos_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) place(i, i);
  for (std::size_t i = n / 2; i-- > 0;) sift_down(i);
}

bool TwoHopQueue::less(std::uint32_t a, std::uint32_t b) const {
  const Member& x = members_[a];
  const Member& y = members_[b];
  return x.key != y.key ? x.key < y.key : x.witness < y.witness;
}

void TwoHopQueue::place(std::size_t pos, std::uint32_t slot) {
  heap_[pos] = slot;
  pos_[slot] = static_cast<std::uint32_t>(pos);
}

void TwoHopQueue::sift_down(std::size_t pos) {
  const std::uint32_t slot = heap_[pos];
  const std::size_t n = heap_.size();
  while (true) {
    std::size_t child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && less(heap_[child + 1], heap_[child])) ++child;
    if (!less(heap_[child], slot)) break;
    place(pos, heap_[child]);
    pos = child;
  }
  place(pos, slot);
}

void TwoHopQueue::increase_key(std::uint32_t slot, Distance key) {
  if (key < members_[slot].key) throw std::logic_error("TwoHopQueue: key decrease");
  if (key == members_[slot].key) return;
  members_[slot].key = key;
  sift_down(pos_[slot]);
}

}  // namespace dapsp
