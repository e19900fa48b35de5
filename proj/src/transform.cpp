#include "nfv/transform.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "nfv/errors.hpp"

namespace nfv {

MultilayerGraph::MultilayerGraph(const Substrate& s, std::span<const NfTypeId> chain)
    : substrate_(&s), chain_(chain.begin(), chain.end()) {
  for (std::size_t i = 0; i < chain_.size(); ++i) {
    if (chain_[i].value() < 0 || chain_[i].index() >= s.nf_type_count() ||
        s.hosting_nodes(chain_[i]).empty())
      throw UnplaceableNf(i, "no node can host chain position " + std::to_string(i));
  }
  const std::size_t layers = layer_count();
  const std::size_t n = node_count();
  edges_.reserve(layers * s.link_count() + chain_.size() * n);
  offsets_.assign(layers * n + 1, 0);
  for (std::size_t layer = 0; layer < layers; ++layer) {
    for (const auto& node : s.nodes()) {
      const VertexId v = vertex(node.id, layer);
      offsets_[v] = static_cast<EdgeIndex>(edges_.size());
      for (LinkId l : s.out_links(node.id))
        edges_.push_back(MlEdge{v, vertex(s.link(l).to, layer), EdgeKind::transmission,
                                static_cast<std::uint32_t>(layer), l.value()});
      if (layer < chain_.size() && s.hosts(node.id, chain_[layer]))
        edges_.push_back(MlEdge{v, vertex(node.id, layer + 1), EdgeKind::processing,
                                static_cast<std::uint32_t>(layer), node.id.value()});
    }
  }
  offsets_[layers * n] = static_cast<EdgeIndex>(edges_.size());
}

std::vector<double> MultilayerGraph::weights(const CostState& costs, double rate,
                                             double proc) const {
  std::vector<double> w(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    w[i] = e.kind == EdgeKind::transmission ? rate * costs.link_cost(e.link())
                                            : proc * costs.node_cost(e.node());
  }
  return w;
}

std::vector<double> MultilayerGraph::unit_weights() const {
  return std::vector<double>(edges_.size(), 1.0);
}

Embedding project(const MultilayerGraph& g, std::span<const EdgeIndex> route, VertexId root,
                  std::span<const VertexId> terminals) {
  const std::size_t last = g.layer_count() - 1;
  if (root >= g.vertex_count() || g.layer_of(root) != 0)
    throw MalformedRoute("route root is not in layer 0");
  for (VertexId t : terminals)
    if (t >= g.vertex_count() || g.layer_of(t) != last)
      throw MalformedRoute("terminal is not in the last layer");

  std::vector<int> parent_edge(g.vertex_count(), -1);
  std::vector<std::vector<EdgeIndex>> children(g.vertex_count());
  for (EdgeIndex e : route) {
    if (e >= g.edge_count()) throw MalformedRoute("edge index out of range");
    const auto& edge = g.edge(e);
    const bool ordered = edge.kind == EdgeKind::transmission
                             ? g.layer_of(edge.to) == g.layer_of(edge.from)
                             : g.layer_of(edge.to) == g.layer_of(edge.from) + 1;
    if (!ordered) throw MalformedRoute("edge crosses layers out of order");
    if (edge.to == root || parent_edge[edge.to] != -1)
      throw MalformedRoute("vertex entered more than once");
    parent_edge[edge.to] = static_cast<int>(e);
    children[edge.from].push_back(e);
  }

  Embedding emb;
  std::size_t reached = 0;
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<VertexId> frontier;
  frontier.push(root);
  seen[root] = 1;
  while (!frontier.empty()) {
    const VertexId v = frontier.front();
    frontier.pop();
    auto& out = children[v];
    std::sort(out.begin(), out.end());
    for (EdgeIndex e : out) {
      const auto& edge = g.edge(e);
      ++reached;
      if (edge.kind == EdgeKind::transmission)
        emb.links.push_back(edge.link());
      else
        emb.placements.push_back(Placement{edge.layer, edge.node()});
      seen[edge.to] = 1;
      frontier.push(edge.to);
    }
  }
  if (reached != route.size()) throw MalformedRoute("route is not connected to its root");
  for (VertexId t : terminals)
    if (!seen[t]) throw MalformedRoute("route misses a terminal");
  std::sort(emb.placements.begin(), emb.placements.end());
  return emb;
}

std::string to_dot(const MultilayerGraph& g) {
  std::ostringstream out;
  out << "digraph multilayer {\n  rankdir=LR;\n";
  for (std::size_t layer = 0; layer < g.layer_count(); ++layer) {
    out << "  subgraph cluster_" << layer << " {\n    label=\"layer " << layer << "\";\n";
    for (std::size_t n = 0; n < g.node_count(); ++n)
      out << "    v" << g.vertex(NodeId(n), layer) << " [label=\"n" << n << "^" << layer
          << "\"];\n";
    out << "  }\n";
  }
  for (const auto& e : g.edges()) {
    out << "  v" << e.from << " -> v" << e.to;
    if (e.kind == EdgeKind::processing)
      out << " [style=dashed,label=\"f" << g.chain()[e.layer].value() << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace nfv
