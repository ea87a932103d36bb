#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dapsp/types.hpp"

namespace dapsp {

using SubscriptionId = std::size_t;

// Entry of the immutable initial adjacency: neighbor plus the id of the edge
// (its index in the construction list).
struct Arc {
  VertexId neighbor;
  std::uint32_t edge;
};

struct DeletionReceipt {
  Edge edge;
  Clock clock = 0;
  std::vector<SubscriptionId> notified;  // in registration order
};

// Directed unweighted graph that only loses edges.
//
// Vertex ids are stable. Live adjacency lists use swap-remove, so their order
// is unspecified. The initial adjacency is kept immutable next to them for
// consumers that need stable scan positions (ES-tree cursors).
class DecrementalGraph {
 public:
  using Listener = std::function<void(const Edge&, Clock)>;

  DecrementalGraph() = default;

  // Copies carry the edge state but not the listeners.
  DecrementalGraph(const DecrementalGraph& other);
  DecrementalGraph& operator=(const DecrementalGraph& other);
  DecrementalGraph(DecrementalGraph&&) noexcept = default;
  DecrementalGraph& operator=(DecrementalGraph&&) noexcept = default;

  static DecrementalGraph from_edge_list(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return out_.size(); }
  std::size_t num_edges() const noexcept { return position_.size(); }
  std::size_t initial_num_edges() const noexcept { return initial_m_; }
  Clock clock() const noexcept { return clock_; }

  bool has_edge(VertexId tail, VertexId head) const;

  std::span<const VertexId> out_neighbors(VertexId v) const { return out_[v]; }
  std::span<const VertexId> in_neighbors(VertexId v) const { return in_[v]; }
  std::span<const Arc> initial_out_arcs(VertexId v) const { return initial_out_[v]; }
  std::span<const Arc> initial_in_arcs(VertexId v) const { return initial_in_[v]; }
  bool edge_alive(std::uint32_t edge_id) const { return alive_[edge_id] != 0; }

  // Neighbors in the given orientation: successors for from_source, predecessors otherwise.
  std::span<const VertexId> forward(VertexId v, Orientation o) const {
    return o == Orientation::from_source ? out_neighbors(v) : in_neighbors(v);
  }
  std::span<const Arc> initial_backward(VertexId v, Orientation o) const {
    return o == Orientation::from_source ? initial_in_arcs(v) : initial_out_arcs(v);
  }

  // Total (in + out) degree in the initial graph.
  std::size_t initial_degree(VertexId v) const {
    return initial_out_[v].size() + initial_in_[v].size();
  }

  // Current edge set, sorted.
  std::vector<Edge> edges() const;

  DeletionReceipt delete_edge(Edge e);

  SubscriptionId subscribe(Listener listener);
  void unsubscribe(SubscriptionId id);

 private:
  struct Slot {
    std::uint32_t out_pos;
    std::uint32_t in_pos;
    std::uint32_t id;
  };

  void check_vertex(VertexId v) const;

  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<VertexId>> in_;
  std::vector<std::vector<Arc>> initial_out_;
  std::vector<std::vector<Arc>> initial_in_;
  std::vector<std::uint8_t> alive_;
  std::unordered_map<std::uint64_t, Slot> position_;
  std::size_t initial_m_ = 0;
  Clock clock_ = 0;
  std::vector<std::pair<SubscriptionId, Listener>> listeners_;
  SubscriptionId next_subscription_ = 0;
};

}  // namespace dapsp
