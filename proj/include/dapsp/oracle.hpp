#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dapsp/graph.hpp"
#include "dapsp/types.hpp"

namespace dapsp::oracle {

// n x n distance matrix, row-major, kInfinity for unreachable.
struct Matrix {
  std::size_t n = 0;
  Clock clock = 0;
  std::vector<Distance> dist;

  Distance at(VertexId u, VertexId v) const { return dist[static_cast<std::size_t>(u) * n + v]; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

std::vector<Distance> bfs(const DecrementalGraph& g, VertexId source,
                          Orientation o = Orientation::from_source);

// One BFS per source.
Matrix recompute(const DecrementalGraph& g);

// Independent check: repeated min-plus squaring of the adjacency matrix.
Matrix min_plus_closure(const DecrementalGraph& g);

// All shortest paths out of u, as a DAG over the BFS levels.
class ShortestPathDag {
 public:
  ShortestPathDag(const DecrementalGraph& g, VertexId u);

  VertexId source() const noexcept { return source_; }
  Distance dist(VertexId v) const { return dist_[v]; }
  const std::vector<VertexId>& predecessors(VertexId v) const { return pred_[v]; }

  // Does every shortest u->v path contain a vertex of X? (u itself counts.)
  bool every_path_hits(VertexId v, const std::vector<std::uint8_t>& in_x) const;

  // Vertices of X that occur first (closest to u) on some shortest u->v path.
  std::vector<VertexId> first_hits(VertexId v, const std::vector<std::uint8_t>& in_x) const;

 private:
  VertexId source_;
  std::vector<Distance> dist_;
  std::vector<std::vector<VertexId>> pred_;
};

// Replays the deletions and sums, over all steps, how many matrix entries changed.
std::uint64_t count_matrix_changes(std::size_t n, std::span<const Edge> edges,
                                   std::span<const Edge> deletions);

}  // namespace dapsp::oracle
