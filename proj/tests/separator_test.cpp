#include <gtest/gtest.h>

#include <cmath>

#include "checks.hpp"
#include "dapsp/separator.hpp"
#include "dapsp/trace.hpp"

namespace dapsp {
namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::bad_params;
}

DecrementalGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return DecrementalGraph::from_edge_list(n, edges);
}

TEST(ThinLayer, PathLayersAreSingletons) {
  const auto g = path_graph(21);
  const auto t = find_thin_layer(g, 0, Orientation::from_source, 5, 10);
  EXPECT_EQ(t.layer.size(), 1u);
  EXPECT_GE(t.inner.size(), 5u);
  EXPECT_TRUE(testing::layer_is_thin(g, 0, Orientation::from_source, 5, 10, t));
}

TEST(ThinLayer, Errors) {
  const auto g = path_graph(21);
  // lg 21 > 4
  EXPECT_EQ(code_of([&] { find_thin_layer(g, 0, Orientation::from_source, 5, 8); }),
            Errc::window_too_narrow);
  EXPECT_EQ(code_of([&] { find_thin_layer(g, 18, Orientation::from_source, 3, 9); }),
            Errc::search_exhausted);
}

TEST(ThinLayer, LayeredGraphSatisfiesTheBound) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto tr = gen_layered(8, 8, 2, seed);
    const auto g = DecrementalGraph::from_edge_list(tr.n, tr.edges);
    // a sink-free root reaches the last layer; window of width lg 64 = 6
    for (VertexId root = 0; root < 8; ++root) {
      const auto dist = oracle::bfs(g, root);
      Distance far = 0;
      for (Distance x : dist) {
        if (x != kInfinity) far = std::max(far, x);
      }
      if (far < 7) continue;
      const auto t = find_thin_layer(g, root, Orientation::from_source, 1, 6);
      EXPECT_TRUE(testing::layer_is_thin(g, root, Orientation::from_source, 1, 6, t));
    }
  }
}

TEST(ThinLayer, RespectsRemovedVertices) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 5}, {5, 6}, {6, 7}, {7, 8}};
  const auto g = DecrementalGraph::from_edge_list(9, edges);
  std::vector<std::uint8_t> removed(9, 0);
  removed[5] = 1;
  const auto t = find_thin_layer(g, 0, Orientation::from_source, 1, 4, &removed);
  for (VertexId x : t.layer) EXPECT_LT(x, 5u);
}

TEST(Separator, EmptyBeforeAnyTrigger) {
  const auto g = path_graph(10);
  const Separator sep(g, 0, windows_for_integer(100));
  EXPECT_EQ(sep.size(), 0u);
  EXPECT_TRUE(sep.members(sep.snapshot()).empty());
}

TEST(Separator, LowerBoundFamilyFirstTrigger) {
  // v1 .. v81; v80 and v81 sit at distance 40 from v1
  const auto tr = gen_lower_bound(81);
  const auto g = DecrementalGraph::from_edge_list(tr.n, tr.edges);
  Separator sep(g, 0, windows_for_integer(40));
  EXPECT_FALSE(sep.small_scale());
  const auto before = sep.snapshot();
  const auto L = sep.on_trigger(lower_bound_vertex(80));
  EXPECT_EQ(L, (std::vector<VertexId>{lower_bound_vertex(79)}));
  EXPECT_TRUE(sep.members(before).empty());
  EXPECT_EQ(sep.members().size(), 1u);
  EXPECT_TRUE(sep.cut_off(lower_bound_vertex(80)));
  EXPECT_EQ(sep.counters().edge_overlaps, 0u);

  // everything past v79 is cut from v1 in G \ S
  std::vector<std::uint8_t> in_s(tr.n, 0);
  in_s[lower_bound_vertex(79)] = 1;
  const auto dist = oracle::bfs(g, 0);
  std::vector<std::uint8_t> reach(tr.n, 0);
  std::vector<VertexId> stack{0};
  reach[0] = 1;
  while (!stack.empty()) {
    const VertexId a = stack.back();
    stack.pop_back();
    for (VertexId b : g.out_neighbors(a)) {
      if (!reach[b] && !in_s[b]) {
        reach[b] = 1;
        stack.push_back(b);
      }
    }
  }
  for (std::size_t i = 80; i <= 81; ++i) EXPECT_FALSE(reach[lower_bound_vertex(i)]) << i;
  for (std::size_t i = 1; i <= 78; ++i) EXPECT_TRUE(reach[lower_bound_vertex(i)]) << i;

  // a second trigger for a cut-off vertex does nothing
  EXPECT_TRUE(sep.on_trigger(lower_bound_vertex(80)).empty());
  EXPECT_EQ(sep.counters().skipped, 1u);
}

TEST(Separator, SnapshotsAreStable) {
  const auto tr = gen_lower_bound(81);
  const auto g = DecrementalGraph::from_edge_list(tr.n, tr.edges);
  Separator sep(g, 0, windows_for_integer(40));
  sep.on_trigger(lower_bound_vertex(80));
  const auto snap = sep.snapshot();
  const std::vector<VertexId> old(sep.members(snap).begin(), sep.members(snap).end());
  sep.on_trigger(lower_bound_vertex(81));
  EXPECT_EQ(std::vector<VertexId>(sep.members(snap).begin(), sep.members(snap).end()), old);
  EXPECT_GE(sep.size(), old.size());
}

TEST(Separator, DegreeBudget) {
  // n = 4, m = 6: Delta = 2
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}};
  const auto g = DecrementalGraph::from_edge_list(4, edges);
  EXPECT_EQ(Separator::degree_budget(g, 0), 4u);  // degree 3 -> 4
  EXPECT_EQ(Separator::degree_budget(g, 1), 4u);  // 3 -> 4
  EXPECT_EQ(Separator::degree_budget(g, 2), 4u);
  const std::vector<Edge> sparse{{0, 1}};
  const auto h = DecrementalGraph::from_edge_list(4, sparse);
  EXPECT_EQ(Separator::degree_budget(h, 3), 1u);
}

TEST(Separator, ContractOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto in = testing::random_instance(seed, 8, 25, 90);
    const auto big = log_cutoff(in.n, 33);
    for (Distance d : {Distance{3}, Distance{5}, Distance{8}, Distance{13}, big}) {
      for (double stretch : {1.0, 4.0 / 3.0}) {
        const auto r = testing::check_separator(in, static_cast<VertexId>(seed % in.n), d, stretch);
        ASSERT_TRUE(r.failure.empty()) << "seed " << seed << ": " << r.failure;
        EXPECT_EQ(r.edge_overlaps, 0u);
        if (d == big) EXPECT_EQ(r.fallback_layers, 0u);
      }
    }
  }
}

// Long paths with random shortcuts, so that distances reach scales with wide windows.
TEST(Separator, ContractWithWideWindows) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto in = testing::long_instance(seed, 70 + 10 * seed);
    for (Distance d : {34u, 40u, 47u}) {
      for (double stretch : {1.0, 4.0 / 3.0}) {
        const auto r = testing::check_separator(in, 0, d, stretch);
        ASSERT_TRUE(r.failure.empty()) << "seed " << seed << ": " << r.failure;
        EXPECT_GT(r.checks, 0u);
      }
    }
  }
}

}  // namespace
}  // namespace dapsp
