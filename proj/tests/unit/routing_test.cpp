#include <gtest/gtest.h>

#include <algorithm>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "nfv/errors.hpp"
#include "nfv/routing.hpp"

using namespace nfv;
using namespace nfv::testing;


TEST(ShortestPath, ZeroWeightsPreferFewerHopsThenLeastVertices) {
  // Square 0-1-3 and 0-2-3 plus a three-hop detour 0-2-1-3.
  const Substrate s = make_substrate(4, both_ways({{0, 2}, {0, 1}, {1, 3}, {2, 3}, {1, 2}}), 10, 0, {});
  const MultilayerGraph g(s, std::vector<NfTypeId>{});
  const std::vector<double> w(g.edge_count(), 0.0);
  const Route r = shortest_path(g, w, 0, 3);
  const std::vector<VertexId> term{3};
  const Embedding e = project(g, r.edges, 0, term);
  EXPECT_EQ(e.links, (std::vector<LinkId>{find_link(s, 0, 1), find_link(s, 1, 3)}));
}

TEST(ShortestPath, PlacesBothNfsWhereProcessingIsFree) {
  const Substrate s = make_substrate(4, both_ways({{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 3}}), 100,
                                     50, {{0, 1}, {1}, {0}, {}});
  const std::vector<NfTypeId> chain{NfTypeId(0), NfTypeId(1)};
  const MultilayerGraph g(s, chain);
  std::vector<double> w(g.edge_count());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& e = g.edge(static_cast<EdgeIndex>(i));
    w[i] = e.kind == EdgeKind::transmission ? 1.0 : (e.node() == NodeId(0) ? 0.0 : 5.0);
  }
  const Route r = shortest_path(g, w, g.source_vertex(NodeId(0)), g.terminal_vertex(NodeId(3)));
  EXPECT_DOUBLE_EQ(r.cost, 1.0);
  const std::vector<VertexId> term{g.terminal_vertex(NodeId(3))};
  const Embedding e = project(g, r.edges, g.source_vertex(NodeId(0)), term);
  EXPECT_EQ(e.links, std::vector<LinkId>{find_link(s, 0, 3)});
  EXPECT_EQ(e.placements, (std::vector<Placement>{{0, NodeId(0)}, {1, NodeId(0)}}));
}

TEST(ShortestPath, UnreachableTargetThrows) {
  const Substrate s = make_substrate(3, {{0, 1}, {1, 0}}, 10, 0, {});
  const MultilayerGraph g(s, std::vector<NfTypeId>{});
  const std::vector<double> w(g.edge_count(), 1.0);
  EXPECT_THROW(shortest_path(g, w, 0, 2), Unreachable);
  const std::vector<VertexId> terms{1, 2};
  EXPECT_THROW(steiner_tree(g, w, 0, terms), Unreachable);
}

TEST(ShortestPath, DistanceFieldStopsAtTarget) {
  const Substrate s = make_substrate(4, line_edges(4), 10, 0, {});
  const MultilayerGraph g(s, std::vector<NfTypeId>{});
  const std::vector<double> w(g.edge_count(), 1.0);
  const DistanceField full = distances_from(g, w, 0);
  EXPECT_DOUBLE_EQ(full.cost[3], 3.0);
  EXPECT_EQ(full.hops[3], 3u);
  const DistanceField early = distances_from(g, w, 0, 1);
  EXPECT_TRUE(early.reaches(1));
  EXPECT_DOUBLE_EQ(early.cost[1], 1.0);
}

TEST(ShortestPath, Deterministic) {
  Rng rng(8);
  const Substrate s = random_substrate(rng, 6, 2, 10, 10);
  const std::vector<NfTypeId> chain{NfTypeId(0), NfTypeId(1)};
  const MultilayerGraph g(s, chain);
  const auto w = random_integer_weights(rng, g, 3);
  const Route a = shortest_path(g, w, g.source_vertex(NodeId(0)), g.terminal_vertex(NodeId(5)));
  const Route b = shortest_path(g, w, g.source_vertex(NodeId(0)), g.terminal_vertex(NodeId(5)));
  EXPECT_EQ(a.edges, b.edges);
}

TEST(ShortestPathProperty, MatchesBruteForceEnumeration) {
  Rng rng(100);
  int checked = 0;
  while (checked < 100) {
    const int n = 3 + static_cast<int>(rng.index(3));
    const Substrate s = random_substrate(rng, n, 2, 10, 10);
    std::vector<NfTypeId> chain;
    const std::size_t len = rng.index(static_cast<std::size_t>(15 / n));
    for (std::size_t i = 0; i < len; ++i) chain.push_back(NfTypeId(rng.index(2)));
    const MultilayerGraph g(s, chain);
    ASSERT_LE(g.vertex_count(), 15u);
    const auto w = random_integer_weights(rng, g, 9);
    const NodeId src(static_cast<int>(rng.index(static_cast<std::size_t>(n))));
    const NodeId dst(static_cast<int>(rng.index(static_cast<std::size_t>(n))));
    const VertexId from = g.source_vertex(src), to = g.terminal_vertex(dst);
    if (from == to) continue;
    const Route r = shortest_path(g, w, from, to);
    EXPECT_EQ(r.cost, brute_force_path_cost(g, w, from, to));
    EXPECT_EQ(r.cost, route_weight(r, w));
    const std::vector<VertexId> term{to};
    EXPECT_NO_THROW(project(g, r.edges, from, term));
    ++checked;
  }
}

TEST(Steiner, SingleTerminalIsShortestPath) {
  Rng rng(4);
  const Substrate s = random_substrate(rng, 6, 2, 10, 10);
  const MultilayerGraph g(s, std::vector<NfTypeId>{NfTypeId(0)});
  const auto w = random_integer_weights(rng, g, 9);
  const std::vector<VertexId> term{g.terminal_vertex(NodeId(4))};
  const Route tree = steiner_tree(g, w, g.source_vertex(NodeId(0)), term);
  const Route path = shortest_path(g, w, g.source_vertex(NodeId(0)), term[0]);
  EXPECT_EQ(tree.cost, path.cost);
}

TEST(Steiner, SharedTrunkIsPaidOnce) {
  // 0 -> 1 is the only way out of 0; 1 fans out to 2, 3, 4.
  const Substrate s = make_substrate(5, {{0, 1}, {1, 2}, {1, 3}, {1, 4}}, 10, 0, {});
  const MultilayerGraph g(s, std::vector<NfTypeId>{});
  const std::vector<double> w(g.edge_count(), 1.0);
  const std::vector<VertexId> terms{2, 3, 4};
  const Route tree = route_request(g, w, 0, terms);
  EXPECT_DOUBLE_EQ(tree.cost, 4.0);
  const Embedding e = project(g, tree.edges, 0, terms);
  EXPECT_EQ(std::count(e.links.begin(), e.links.end(), LinkId(0)), 1);
}

TEST(SteinerProperty, WithinTwiceOptimum) {
  Rng rng(200);
  int checked = 0;
  while (checked < 50) {
    const int n = 4 + static_cast<int>(rng.index(2));
    const Substrate s = random_substrate(rng, n, 2, 10, 10);
    std::vector<NfTypeId> chain;
    const std::size_t len = rng.index(static_cast<std::size_t>(15 / n));
    for (std::size_t i = 0; i < len; ++i) chain.push_back(NfTypeId(rng.index(2)));
    const MultilayerGraph g(s, chain);
    const auto w = random_integer_weights(rng, g, 9);
    std::vector<NodeId> all;
    for (int v = 0; v < n; ++v) all.push_back(NodeId(v));
    const auto pick = rng.sample<NodeId>(all, 2 + rng.index(2));
    std::vector<VertexId> terms;
    for (std::size_t i = 1; i < pick.size(); ++i) terms.push_back(g.terminal_vertex(pick[i]));
    const VertexId root = g.source_vertex(pick[0]);
    const Route tree = steiner_tree(g, w, root, terms);
    const double opt = exact_steiner_cost(g, w, root, terms);
    EXPECT_EQ(tree.cost, route_weight(tree, w));
    EXPECT_LE(opt, tree.cost);
    EXPECT_LE(tree.cost, 2.0 * opt);
    EXPECT_NO_THROW(project(g, tree.edges, root, terms));
    ++checked;
  }
}
