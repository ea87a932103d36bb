#pragma once

#include <cstdint>
#include <vector>

#include "dapsp/graph.hpp"
#include "dapsp/types.hpp"

namespace dapsp {

struct LevelChange {
  VertexId vertex = 0;
  Distance old_level = 0;
  Distance new_level = 0;

  friend bool operator==(const LevelChange&, const LevelChange&) = default;
};

// Even-Shiloach tree: BFS levels from (or to) a source, maintained up to a
// depth bound under edge deletions. Levels past the bound become kInfinity
// and the vertex is never looked at again.
class EsTree {
 public:
  EsTree(const DecrementalGraph& g, VertexId source, Distance depth_bound,
         Orientation orientation = Orientation::from_source);

  VertexId source() const noexcept { return source_; }
  Distance depth_bound() const noexcept { return depth_; }
  Orientation orientation() const noexcept { return orientation_; }

  Distance level(VertexId v) const { return level_[v]; }
  const std::vector<Distance>& levels() const noexcept { return level_; }
  VertexId parent(VertexId v) const { return parent_[v]; }

  // Must be called once per deletion, after the graph applied it.
  // Returns the vertices whose level changed, sorted by vertex id.
  std::vector<LevelChange> on_delete(const Edge& e);

  // Tree path between source and v, oriented as a path of the graph:
  // source..v for from_source, v..source for to_source. Empty if v is not in the tree.
  std::vector<VertexId> path(VertexId v) const;

  std::uint64_t scan_steps() const noexcept { return scan_steps_; }

 private:
  // Advances v's cursor to a live arc from a vertex one level closer.
  // Returns false if the arc list is exhausted.
  bool find_parent(VertexId v);
  void enqueue(VertexId v);

  const DecrementalGraph* g_;
  VertexId source_;
  Distance depth_;
  Orientation orientation_;
  Clock clock_;

  std::vector<Distance> level_;
  std::vector<VertexId> parent_;
  std::vector<std::uint32_t> cursor_;

  // scratch for on_delete
  std::vector<VertexId> queue_;
  std::vector<std::uint8_t> queued_;
  std::vector<Distance> old_level_;
  std::vector<VertexId> touched_;

  std::uint64_t scan_steps_ = 0;
};

}  // namespace dapsp
