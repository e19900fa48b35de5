#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "fixtures.hpp"
#include "nfv/errors.hpp"
#include "nfv/oracle.hpp"
#include "nfv/transform.hpp"

using namespace nfv;
using namespace nfv::testing;

namespace {

// Four nodes a=0, b=1, c=2, d=3 with links a-b, b-d, a-c, c-d, a-d.
// a hosts {f0, f1}, b hosts {f1}, c hosts {f0}, d hosts nothing.
Substrate diamond() {
  return make_substrate(4, both_ways({{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 3}}), 100, 50,
                        {{0, 1}, {1}, {0}, {}});
}

const std::vector<NfTypeId> kTwoNfs{NfTypeId(0), NfTypeId(1)};

std::vector<EdgeIndex> edges_along(const MultilayerGraph& g, const std::vector<VertexId>& path) {
  std::vector<EdgeIndex> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    bool found = false;
    for (EdgeIndex e : g.out_edges(path[i]))
      if (g.edge(e).to == path[i + 1]) {
        out.push_back(e);
        found = true;
        break;
      }
    EXPECT_TRUE(found) << "no edge " << path[i] << "->" << path[i + 1];
  }
  return out;
}

using Footprint = std::pair<std::vector<int>, std::vector<int>>;

Footprint footprint(const Embedding& e) {
  Footprint f;
  for (LinkId l : e.links) f.first.push_back(l.value());
  for (const auto& p : e.placements) f.second.push_back(p.node.value());
  return f;
}

// Every simple substrate path from a to b as link sequences (a == b gives
// the empty path).
std::vector<std::vector<int>> simple_paths(const Substrate& s, int a, int b) {
  std::vector<std::vector<int>> out;
  std::vector<int> links;
  std::vector<char> on(s.node_count(), 0);
  std::function<void(int)> dfs = [&](int v) {
    if (v == b) {
      out.push_back(links);
      return;
    }
    for (LinkId l : s.out_links(NodeId(v))) {
      const int w = s.link(l).to.value();
      if (on[static_cast<std::size_t>(w)]) continue;
      on[static_cast<std::size_t>(w)] = 1;
      links.push_back(l.value());
      dfs(w);
      links.pop_back();
      on[static_cast<std::size_t>(w)] = 0;
    }
  };
  on[static_cast<std::size_t>(a)] = 1;
  dfs(a);
  return out;
}

// Direct enumeration of (route, placement) pairs: choose a host per chain
// position, then any simple substrate path for each segment between
// consecutive waypoints.
std::set<Footprint> direct_footprints(const Substrate& s, const std::vector<NfTypeId>& chain,
                                      int src, int dst) {
  std::set<Footprint> out;
  std::vector<int> hosts;
  std::function<void(std::size_t)> choose = [&](std::size_t i) {
    if (i == chain.size()) {
      std::vector<int> waypoints{src};
      waypoints.insert(waypoints.end(), hosts.begin(), hosts.end());
      waypoints.push_back(dst);
      std::function<void(std::size_t, std::vector<int>)> join = [&](std::size_t seg, std::vector<int> acc) {
        if (seg + 1 == waypoints.size()) {
          out.insert({acc, hosts});
          return;
        }
        for (const auto& p : simple_paths(s, waypoints[seg], waypoints[seg + 1])) {
          auto next = acc;
          next.insert(next.end(), p.begin(), p.end());
          join(seg + 1, next);
        }
      };
      join(0, {});
      return;
    }
    for (NodeId h : s.hosting_nodes(chain[i])) {
      hosts.push_back(h.value());
      choose(i + 1);
      hosts.pop_back();
    }
  };
  choose(0);
  return out;
}

std::size_t count_simple_paths(const MultilayerGraph& g, VertexId from, VertexId to,
                               std::set<Footprint>& seen) {
  std::size_t count = 0;
  std::vector<EdgeIndex> route;
  std::vector<char> on(g.vertex_count(), 0);
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    if (v == to) {
      ++count;
      const std::vector<VertexId> term{to};
      seen.insert(footprint(project(g, route, from, term)));
      return;
    }
    for (EdgeIndex e : g.out_edges(v)) {
      const VertexId w = g.edge(e).to;
      if (on[w]) continue;
      on[w] = 1;
      route.push_back(e);
      dfs(w);
      route.pop_back();
      on[w] = 0;
    }
  };
  on[from] = 1;
  dfs(from);
  return count;
}

}  // namespace

TEST(Multilayer, SizesAndVertexNumbering) {
  const Substrate s = diamond();
  const MultilayerGraph g(s, kTwoNfs);
  EXPECT_EQ(g.layer_count(), 3u);
  EXPECT_EQ(g.vertex_count(), 12u);
  EXPECT_EQ(g.edge_count(), 3 * s.link_count() + 4);
  EXPECT_EQ(g.vertex(NodeId(2), 1), 6u);
  EXPECT_EQ(g.node_of(6), NodeId(2));
  EXPECT_EQ(g.layer_of(6), 1u);
}

TEST(Multilayer, InterLayerEdgesFollowHosting) {
  const Substrate s = diamond();
  const MultilayerGraph g(s, kTwoNfs);
  std::set<std::pair<VertexId, VertexId>> got;
  for (const auto& e : g.edges())
    if (e.kind == EdgeKind::processing) got.insert({e.from, e.to});
  const std::set<std::pair<VertexId, VertexId>> want{
      {g.vertex(NodeId(0), 0), g.vertex(NodeId(0), 1)},
      {g.vertex(NodeId(2), 0), g.vertex(NodeId(2), 1)},
      {g.vertex(NodeId(0), 1), g.vertex(NodeId(0), 2)},
      {g.vertex(NodeId(1), 1), g.vertex(NodeId(1), 2)}};
  EXPECT_EQ(got, want);
}

TEST(Multilayer, EmptyChainIsTheSubstrate) {
  const Substrate s = diamond();
  const MultilayerGraph g(s, std::vector<NfTypeId>{});
  EXPECT_EQ(g.layer_count(), 1u);
  EXPECT_EQ(g.edge_count(), s.link_count());
  const std::vector<VertexId> path{0, 3};
  const std::vector<VertexId> term{3};
  const Embedding e = project(g, edges_along(g, path), 0, term);
  EXPECT_EQ(e.links, std::vector<LinkId>{find_link(s, 0, 3)});
  EXPECT_TRUE(e.placements.empty());
}

TEST(Multilayer, UnhostableChainEntryThrows) {
  const Substrate s = make_substrate(2, {{0, 1}}, 10, 5, {{0}}, 2);
  const std::vector<NfTypeId> chain{NfTypeId(0), NfTypeId(1)};
  try {
    MultilayerGraph g(s, chain);
    FAIL() << "expected UnplaceableNf";
  } catch (const UnplaceableNf& e) {
    EXPECT_EQ(e.position(), 1u);
  }
}

TEST(Project, BothNfsOnSourceThenOneLink) {
  const Substrate s = diamond();
  const MultilayerGraph g(s, kTwoNfs);
  const std::vector<VertexId> path{g.vertex(NodeId(0), 0), g.vertex(NodeId(0), 1),
                                   g.vertex(NodeId(0), 2), g.vertex(NodeId(3), 2)};
  const std::vector<VertexId> term{g.terminal_vertex(NodeId(3))};
  const Embedding e = project(g, edges_along(g, path), path.front(), term);
  EXPECT_EQ(e.links, std::vector<LinkId>{find_link(s, 0, 3)});
  ASSERT_EQ(e.placements.size(), 2u);
  EXPECT_EQ(e.placements[0], (Placement{0, NodeId(0)}));
  EXPECT_EQ(e.placements[1], (Placement{1, NodeId(0)}));
}

TEST(Project, RevisitedLinkAppearsPerLayer) {
  const Substrate s = diamond();
  const MultilayerGraph g(s, kTwoNfs);
  // a -> b -> d -> c in layer 0, f0 on c, c -> a, f1 on a, then a -> b again.
  const std::vector<VertexId> walk{g.vertex(NodeId(0), 0), g.vertex(NodeId(1), 0),
                                   g.vertex(NodeId(3), 0), g.vertex(NodeId(2), 0),
                                   g.vertex(NodeId(2), 1), g.vertex(NodeId(0), 1),
                                   g.vertex(NodeId(0), 2), g.vertex(NodeId(1), 2)};
  const std::vector<VertexId> term{g.terminal_vertex(NodeId(1))};
  const Embedding e = project(g, edges_along(g, walk), walk.front(), term);
  const LinkId ab = find_link(s, 0, 1);
  EXPECT_EQ(std::count(e.links.begin(), e.links.end(), ab), 2);
  EXPECT_EQ(e.links.size(), 5u);
}

TEST(Project, RejectsMalformedRoutes) {
  const Substrate s = diamond();
  const MultilayerGraph g(s, kTwoNfs);
  const VertexId root = g.vertex(NodeId(0), 0);
  const std::vector<VertexId> term{g.terminal_vertex(NodeId(3))};
  const auto good = edges_along(g, {root, g.vertex(NodeId(0), 1), g.vertex(NodeId(0), 2),
                                    g.vertex(NodeId(3), 2)});
  EXPECT_NO_THROW(project(g, good, root, term));

  auto missing_first = good;
  missing_first.erase(missing_first.begin());
  EXPECT_THROW(project(g, missing_first, root, term), MalformedRoute);

  auto short_route = good;
  short_route.pop_back();
  EXPECT_THROW(project(g, short_route, root, term), MalformedRoute);

  EXPECT_THROW(project(g, good, g.vertex(NodeId(0), 1), term), MalformedRoute);
  const std::vector<VertexId> wrong_layer{g.vertex(NodeId(3), 1)};
  EXPECT_THROW(project(g, good, root, wrong_layer), MalformedRoute);

  // Two edges entering d in the last layer.
  auto doubled = good;
  doubled.push_back(edges_along(g, {g.vertex(NodeId(1), 2), g.vertex(NodeId(3), 2)})[0]);
  EXPECT_THROW(project(g, doubled, root, term), MalformedRoute);

  const std::vector<EdgeIndex> out_of_range{static_cast<EdgeIndex>(g.edge_count())};
  EXPECT_THROW(project(g, out_of_range, root, term), MalformedRoute);
}

TEST(Multilayer, WeightsReadCurrentPrices) {
  const Substrate s = diamond();
  const MultilayerGraph reused(s, kTwoNfs);
  PricingParams p;
  p.max_route_links = 4;
  p.max_chain_length = 2;
  CostState costs(s);
  ResidualLedger ledger(s);
  const ServiceRequest r = make_request(0, {3}, {{0, true}, {1, true}}, 10, 10);
  const Embedding e{{find_link(s, 0, 3), find_link(s, 0, 1)}, {{0, NodeId(0)}, {1, NodeId(0)}}};
  const auto before = reused.weights(costs, 3, 4);
  commit_embedding(ledger, s, e, r);
  commit_costs(costs, s, e, r, profit(r, true, p), p);
  const MultilayerGraph fresh(s, kTwoNfs);
  EXPECT_EQ(reused.weights(costs, 3, 4), fresh.weights(costs, 3, 4));
  EXPECT_NE(reused.weights(costs, 3, 4), before);
}

TEST(Multilayer, DotHasOneClusterPerLayer) {
  const Substrate s = diamond();
  const MultilayerGraph g(s, kTwoNfs);
  const std::string dot = to_dot(g);
  EXPECT_NE(dot.find("cluster_0"), std::string::npos);
  EXPECT_NE(dot.find("cluster_2"), std::string::npos);
  EXPECT_EQ(dot.find("cluster_3"), std::string::npos);
  EXPECT_NE(dot.find("style=dashed"), std::string::npos);
}

// Simple layer-0 to last-layer paths correspond one to one with a choice of
// hosts plus a simple substrate path per segment.
TEST(MultilayerProperty, PathsBijectWithRoutePlacementPairs) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng.index(3));
    const Substrate s = random_substrate(rng, n, 2, 10, 10, 0.2);
    std::vector<NfTypeId> chain;
    const auto len = rng.index(3);
    for (std::size_t i = 0; i < len; ++i) chain.push_back(NfTypeId(rng.index(2)));
    const int src = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
    int dst = static_cast<int>(rng.index(static_cast<std::size_t>(n - 1)));
    if (dst >= src) ++dst;
    const MultilayerGraph g(s, chain);
    std::set<Footprint> projected;
    const std::size_t paths = count_simple_paths(g, g.source_vertex(NodeId(src)),
                                                 g.terminal_vertex(NodeId(dst)), projected);
    const auto direct = direct_footprints(s, chain, src, dst);
    EXPECT_EQ(paths, projected.size()) << "two paths projected to one footprint";
    EXPECT_EQ(projected, direct);

    const std::vector<VertexId> term{g.terminal_vertex(NodeId(dst))};
    EXPECT_EQ(enumerate_routes(g, g.source_vertex(NodeId(src)), term, 1000000).size(), paths);
  }
}
