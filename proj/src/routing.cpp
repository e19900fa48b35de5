#include "nfv/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "nfv/errors.hpp"

namespace nfv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNoHops = std::numeric_limits<std::uint32_t>::max();

bool tight(const DistanceField& f, const MlEdge& e, double w) {
  return f.hops[e.from] != kNoHops && f.hops[e.to] == f.hops[e.from] + 1 &&
         f.cost[e.from] + w == f.cost[e.to];
}

}  // namespace

bool DistanceField::reaches(VertexId v) const { return hops[v] != kNoHops; }

DistanceField distances_from(const MultilayerGraph& g, std::span<const double> weights,
                             VertexId source, VertexId stop_at) {
  DistanceField f;
  f.source = source;
  f.cost.assign(g.vertex_count(), kInf);
  f.hops.assign(g.vertex_count(), kNoHops);

  using Label = std::tuple<double, std::uint32_t, VertexId>;
  std::priority_queue<Label, std::vector<Label>, std::greater<>> heap;
  f.cost[source] = 0.0;
  f.hops[source] = 0;
  heap.emplace(0.0, 0u, source);
  while (!heap.empty()) {
    const auto [c, h, v] = heap.top();
    heap.pop();
    if (c != f.cost[v] || h != f.hops[v]) continue;
    if (v == stop_at) break;
    for (EdgeIndex e : g.out_edges(v)) {
      const VertexId to = g.edge(e).to;
      const double nc = c + weights[e];
      if (!(nc < kInf)) continue;
      const std::uint32_t nh = h + 1;
      if (nc < f.cost[to] || (nc == f.cost[to] && nh < f.hops[to])) {
        f.cost[to] = nc;
        f.hops[to] = nh;
        heap.emplace(nc, nh, to);
      }
    }
  }
  return f;
}

Route extract_path(const MultilayerGraph& g, std::span<const double> weights,
                   const DistanceField& field, VertexId target) {
  if (!field.reaches(target)) throw Unreachable("target vertex is unreachable");

  // Memoized: does v reach `target` along tight edges.
  const auto edges = g.edges();
  std::vector<signed char> useful(g.vertex_count(), -1);
  useful[target] = 1;
  auto reaches_target = [&](auto& self, VertexId v) -> bool {
    if (useful[v] >= 0) return useful[v] == 1;
    bool found = false;
    for (EdgeIndex e : g.out_edges(v))
      if (tight(field, edges[e], weights[e]) && self(self, edges[e].to)) {
        found = true;
        break;
      }
    useful[v] = found ? 1 : 0;
    return found;
  };

  Route route;
  VertexId v = field.source;
  while (v != target) {
    EdgeIndex best = 0;
    VertexId best_to = std::numeric_limits<VertexId>::max();
    for (EdgeIndex e : g.out_edges(v)) {
      const auto& edge = edges[e];
      if (edge.to < best_to && tight(field, edge, weights[e]) &&
          reaches_target(reaches_target, edge.to)) {
        best = e;
        best_to = edge.to;
      }
    }
    route.edges.push_back(best);
    v = best_to;
  }
  route.cost = field.cost[target];
  return route;
}

Route shortest_path(const MultilayerGraph& g, std::span<const double> weights, VertexId source,
                    VertexId target) {
  return extract_path(g, weights, distances_from(g, weights, source, target), target);
}

Route steiner_tree(const MultilayerGraph& g, std::span<const double> weights, VertexId root,
                   std::span<const VertexId> terminals) {
  std::vector<VertexId> members{root};
  for (VertexId t : terminals)
    if (t != root && std::find(members.begin(), members.end(), t) == members.end())
      members.push_back(t);

  std::vector<DistanceField> fields;
  fields.reserve(members.size());
  for (VertexId m : members) fields.push_back(distances_from(g, weights, m));
  for (std::size_t j = 1; j < members.size(); ++j)
    if (!fields[0].reaches(members[j])) throw Unreachable("terminal is unreachable from root");

  // Prim over the directed closure, growing away from the root.
  std::vector<char> in_tree(members.size(), 0);
  in_tree[0] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> closure_edges;
  for (std::size_t added = 1; added < members.size(); ++added) {
    std::size_t best_u = 0, best_t = 0;
    double best_cost = kInf;
    std::uint32_t best_hops = kNoHops;
    for (std::size_t u = 0; u < members.size(); ++u) {
      if (!in_tree[u]) continue;
      for (std::size_t t = 1; t < members.size(); ++t) {
        if (in_tree[t] || !fields[u].reaches(members[t])) continue;
        const double c = fields[u].cost[members[t]];
        const std::uint32_t h = fields[u].hops[members[t]];
        if (c < best_cost || (c == best_cost && h < best_hops)) {
          best_cost = c;
          best_hops = h;
          best_u = u;
          best_t = t;
        }
      }
    }
    in_tree[best_t] = 1;
    closure_edges.emplace_back(best_u, best_t);
  }

  std::vector<char> in_union(g.edge_count(), 0);
  for (auto [u, t] : closure_edges)
    for (EdgeIndex e : extract_path(g, weights, fields[u], members[t]).edges) in_union[e] = 1;

  // Shortest-path tree of the union, one parent per vertex.
  std::vector<double> restricted(weights.begin(), weights.end());
  for (EdgeIndex e = 0; e < restricted.size(); ++e)
    if (!in_union[e]) restricted[e] = kInf;
  const DistanceField sub = distances_from(g, restricted, root);
  std::vector<EdgeIndex> parent(g.vertex_count(), std::numeric_limits<EdgeIndex>::max());
  const auto edges = g.edges();
  for (EdgeIndex e = 0; e < edges.size(); ++e) {
    if (!in_union[e] || !tight(sub, edges[e], restricted[e])) continue;
    auto& p = parent[edges[e].to];
    if (p == std::numeric_limits<EdgeIndex>::max() || edges[e].from < edges[p].from) p = e;
  }

  std::vector<char> taken(g.edge_count(), 0);
  Route tree;
  for (std::size_t j = 1; j < members.size(); ++j) {
    for (VertexId v = members[j]; v != root;) {
      const EdgeIndex e = parent[v];
      if (taken[e]) break;
      taken[e] = 1;
      tree.edges.push_back(e);
      v = edges[e].from;
    }
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  for (EdgeIndex e : tree.edges) tree.cost += weights[e];
  return tree;
}

Route route_request(const MultilayerGraph& g, std::span<const double> weights, VertexId root,
                    std::span<const VertexId> terminals) {
  if (terminals.size() == 1) return shortest_path(g, weights, root, terminals.front());
  return steiner_tree(g, weights, root, terminals);
}

}  // namespace nfv
