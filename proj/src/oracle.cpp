#include "dapsp/oracle.hpp"

#include <algorithm>

namespace dapsp::oracle {

std::vector<Distance> bfs(const DecrementalGraph& g, VertexId source, Orientation o) {
  std::vector<Distance> dist(g.num_vertices(), kInfinity);
  std::vector<VertexId> q{source};
  dist[source] = 0;
  for (std::size_t h = 0; h < q.size(); ++h) {
    const VertexId a = q[h];
    for (VertexId b : g.forward(a, o)) {
      if (dist[b] != kInfinity) continue;
      dist[b] = dist[a] + 1;
      q.push_back(b);
    }
  }
  return dist;
}

Matrix recompute(const DecrementalGraph& g) {
  Matrix m;
  m.n = g.num_vertices();
  m.clock = g.clock();
  m.dist.reserve(m.n * m.n);
  for (VertexId u = 0; u < m.n; ++u) {
    auto row = bfs(g, u);
    m.dist.insert(m.dist.end(), row.begin(), row.end());
  }
  return m;
}

Matrix min_plus_closure(const DecrementalGraph& g) {
  const std::size_t n = g.num_vertices();
  Matrix m;
  m.n = n;
  m.clock = g.clock();
  m.dist.assign(n * n, kInfinity);
  for (std::size_t u = 0; u < n; ++u) m.dist[u * n + u] = 0;
  for (const Edge& e : g.edges()) m.dist[std::size_t{e.tail} * n + e.head] = 1;
  // squaring doubles the covered path length each round
  for (std::size_t len = 1; len < n; len *= 2) {
    std::vector<Distance> next(m.dist);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t k = 0; k < n; ++k)
          next[a * n + b] = std::min(next[a * n + b], sat_add(m.dist[a * n + k], m.dist[k * n + b]));
    m.dist = std::move(next);
  }
  return m;
}

ShortestPathDag::ShortestPathDag(const DecrementalGraph& g, VertexId u)
    : source_(u), dist_(bfs(g, u)), pred_(g.num_vertices()) {
  for (VertexId a = 0; a < g.num_vertices(); ++a) {
    if (dist_[a] == kInfinity) continue;
    for (VertexId b : g.out_neighbors(a)) {
      if (dist_[b] == dist_[a] + 1) pred_[b].push_back(a);
    }
  }
  for (auto& p : pred_) std::sort(p.begin(), p.end());
}

namespace {

// ok[w]: some shortest source->w path has no vertex of X.
std::vector<std::uint8_t> avoid_reach(const std::vector<Distance>& dist,
                                      const std::vector<std::vector<VertexId>>& pred,
                                      VertexId source, const std::vector<std::uint8_t>& in_x) {
  const std::size_t n = dist.size();
  std::vector<VertexId> order;
  for (VertexId w = 0; w < n; ++w)
    if (dist[w] != kInfinity) order.push_back(w);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return dist[a] < dist[b]; });
  std::vector<std::uint8_t> ok(n, 0);
  for (VertexId w : order) {
    if (in_x[w]) continue;
    if (w == source) {
      ok[w] = 1;
      continue;
    }
    for (VertexId p : pred[w]) {
      if (ok[p]) {
        ok[w] = 1;
        break;
      }
    }
  }
  return ok;
}

}  // namespace

bool ShortestPathDag::every_path_hits(VertexId v, const std::vector<std::uint8_t>& in_x) const {
  if (dist_[v] == kInfinity) return true;
  return !avoid_reach(dist_, pred_, source_, in_x)[v];
}

std::vector<VertexId> ShortestPathDag::first_hits(VertexId v,
                                                  const std::vector<std::uint8_t>& in_x) const {
  std::vector<VertexId> out;
  if (dist_[v] == kInfinity) return out;
  const auto ok = avoid_reach(dist_, pred_, source_, in_x);
  std::vector<std::uint8_t> anc(dist_.size(), 0);
  std::vector<VertexId> stack{v};
  anc[v] = 1;
  while (!stack.empty()) {
    const VertexId w = stack.back();
    stack.pop_back();
    for (VertexId p : pred_[w]) {
      if (!anc[p]) {
        anc[p] = 1;
        stack.push_back(p);
      }
    }
  }
  for (VertexId x = 0; x < dist_.size(); ++x) {
    if (!in_x[x] || !anc[x]) continue;
    bool first = x == source_;
    for (VertexId p : pred_[x]) first = first || ok[p];
    if (first) out.push_back(x);
  }
  return out;
}

std::uint64_t count_matrix_changes(std::size_t n, std::span<const Edge> edges,
                                   std::span<const Edge> deletions) {
  auto g = DecrementalGraph::from_edge_list(n, edges);
  Matrix prev = recompute(g);
  std::uint64_t total = 0;
  for (const Edge& e : deletions) {
    g.delete_edge(e);
    Matrix cur = recompute(g);
    for (std::size_t k = 0; k < cur.dist.size(); ++k) total += cur.dist[k] != prev.dist[k];
    prev = std::move(cur);
  }
  return total;
}

}  // namespace dapsp::oracle
