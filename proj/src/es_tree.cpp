#include "dapsp/es_tree.hpp"

#include <algorithm>
#include <string>

namespace dapsp {

EsTree::EsTree(const DecrementalGraph& g, VertexId source, Distance depth_bound,
               Orientation orientation)
    : g_(&g),
      source_(source),
      depth_(depth_bound),
      orientation_(orientation),
      clock_(g.clock()) {
  const std::size_t n = g.num_vertices();
  if (source >= n) throw Error(Errc::vertex_out_of_range, std::to_string(source));
  if (depth_bound < 1) throw Error(Errc::bad_params, "depth bound must be at least 1");
  level_.assign(n, kInfinity);
  parent_.assign(n, kNoVertex);
  cursor_.assign(n, 0);
  queued_.assign(n, 0);
  old_level_.assign(n, kInfinity);

  // plain bounded BFS
  std::vector<VertexId> order;
  order.reserve(n);
  level_[source] = 0;
  order.push_back(source);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const VertexId a = order[head];
    if (level_[a] == depth_) continue;
    for (VertexId b : g.forward(a, orientation_)) {
      if (level_[b] != kInfinity) continue;
      level_[b] = level_[a] + 1;
      order.push_back(b);
    }
  }
  for (VertexId v : order) {
    if (v != source_) find_parent(v);
  }
}

bool EsTree::find_parent(VertexId v) {
  const auto arcs = g_->initial_backward(v, orientation_);
  std::uint32_t& c = cursor_[v];
  const Distance want = level_[v] - 1;
  while (c < arcs.size()) {
    ++scan_steps_;
    const Arc& a = arcs[c];
    if (g_->edge_alive(a.edge) && level_[a.neighbor] == want) {
      parent_[v] = a.neighbor;
      return true;
    }
    ++c;
  }
  parent_[v] = kNoVertex;
  return false;
}

void EsTree::enqueue(VertexId v) {
  if (queued_[v]) return;
  queued_[v] = 1;
  queue_.push_back(v);
}

std::vector<LevelChange> EsTree::on_delete(const Edge& e) {
  if (g_->clock() != clock_ + 1) {
    throw Error(Errc::clock_skew, "tree at " + std::to_string(clock_) + ", graph at " +
                                      std::to_string(g_->clock()));
  }
  clock_ = g_->clock();

  // In the tree's orientation the edge runs from `up` to `down`.
  const VertexId up = orientation_ == Orientation::from_source ? e.tail : e.head;
  const VertexId down = orientation_ == Orientation::from_source ? e.head : e.tail;
  std::vector<LevelChange> changes;
  if (level_[down] == kInfinity || parent_[down] != up) return changes;

  queue_.clear();
  touched_.clear();
  enqueue(down);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const VertexId v = queue_[head];
    queued_[v] = 0;
    if (level_[v] == kInfinity) continue;
    if (parent_[v] != kNoVertex && g_->edge_alive(g_->initial_backward(v, orientation_)[cursor_[v]].edge) &&
        level_[parent_[v]] + 1 == level_[v]) {
      continue;  // still supported
    }
    while (!find_parent(v)) {
      if (old_level_[v] == kInfinity) {
        old_level_[v] = level_[v];
        touched_.push_back(v);
      }
      // every child hanging off v must look again
      for (VertexId w : g_->forward(v, orientation_)) {
        ++scan_steps_;
        if (parent_[w] == v) enqueue(w);
      }
      if (level_[v] >= depth_) {
        level_[v] = kInfinity;
        parent_[v] = kNoVertex;
        break;
      }
      ++level_[v];
      cursor_[v] = 0;
    }
  }

  changes.reserve(touched_.size());
  for (VertexId v : touched_) {
    changes.push_back({v, old_level_[v], level_[v]});
    old_level_[v] = kInfinity;
  }
  std::sort(changes.begin(), changes.end(),
            [](const LevelChange& a, const LevelChange& b) { return a.vertex < b.vertex; });
  return changes;
}

std::vector<VertexId> EsTree::path(VertexId v) const {
  std::vector<VertexId> out;
  if (v >= level_.size() || level_[v] == kInfinity) return out;
  for (VertexId x = v; x != kNoVertex; x = parent_[x]) {
    out.push_back(x);
    if (x == source_) break;
  }
  if (orientation_ == Orientation::from_source) std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace dapsp
