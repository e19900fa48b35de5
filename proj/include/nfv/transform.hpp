#pragma once

#include <cstdint>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "nfv/pricing.hpp"
#include "nfv/substrate.hpp"

namespace nfv {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint32_t;

enum class EdgeKind : std::uint8_t {
  transmission,  // copy of a substrate link inside one layer
  processing,    // running chain NF `layer` on a node, moving to layer + 1
};

struct MlEdge {
  VertexId from;
  VertexId to;
  EdgeKind kind;
  std::uint32_t layer;  // layer of `from`
  std::int32_t ref;     // LinkId for transmission, NodeId for processing

  [[nodiscard]] LinkId link() const { return LinkId(ref); }
  [[nodiscard]] NodeId node() const { return NodeId(ref); }
};

/// Layered expansion of a substrate for one NF chain.
///
/// Layer i (0 <= i <= |chain|) is a copy of the substrate. A processing edge
/// n^i -> n^{i+1} exists iff n can host chain[i]. Every route from layer 0
/// to the last layer therefore crosses the chain in order, and each crossing
/// names the node running that NF. Vertex v = layer * |N| + node.
///
/// The graph holds no prices; `weights` reads them from a CostState at call
/// time, so one instance serves any number of cost updates.
class MultilayerGraph {
 public:
  /// Throws UnplaceableNf if some chain entry has no hosting node.
  MultilayerGraph(const Substrate& s, std::span<const NfTypeId> chain);

  [[nodiscard]] const Substrate& substrate() const { return *substrate_; }
  [[nodiscard]] std::span<const NfTypeId> chain() const { return chain_; }
  [[nodiscard]] std::size_t layer_count() const { return chain_.size() + 1; }
  [[nodiscard]] std::size_t node_count() const { return substrate_->node_count(); }
  [[nodiscard]] std::size_t vertex_count() const { return layer_count() * node_count(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }

  [[nodiscard]] VertexId vertex(NodeId n, std::size_t layer) const {
    return static_cast<VertexId>(layer * node_count() + n.index());
  }
  [[nodiscard]] NodeId node_of(VertexId v) const { return NodeId(v % node_count()); }
  [[nodiscard]] std::size_t layer_of(VertexId v) const { return v / node_count(); }
  [[nodiscard]] VertexId source_vertex(NodeId s) const { return vertex(s, 0); }
  [[nodiscard]] VertexId terminal_vertex(NodeId t) const { return vertex(t, chain_.size()); }

  [[nodiscard]] std::span<const MlEdge> edges() const { return edges_; }
  [[nodiscard]] const MlEdge& edge(EdgeIndex e) const { return edges_[e]; }
  /// Indices of the edges leaving `v`, ascending.
  [[nodiscard]] auto out_edges(VertexId v) const {
    return std::views::iota(offsets_[v], offsets_[v + 1]);
  }

  /// Edge weights for a request: rate * link price on transmission edges,
  /// proc * node price on processing edges.
  [[nodiscard]] std::vector<double> weights(const CostState& costs, double rate,
                                            double proc) const;
  [[nodiscard]] std::vector<double> unit_weights() const;

 private:
  const Substrate* substrate_;
  std::vector<NfTypeId> chain_;
  std::vector<MlEdge> edges_;
  std::vector<EdgeIndex> offsets_;
};

/// Maps a route (path or out-tree given as edge indices) rooted at `root`
/// back to substrate link traversals and NF placements. Throws
/// MalformedRoute unless the edges form a tree hanging from a layer-0 root
/// that reaches every terminal in the last layer.
Embedding project(const MultilayerGraph& g, std::span<const EdgeIndex> route, VertexId root,
                  std::span<const VertexId> terminals);

/// Graphviz rendering, one cluster per layer.
std::string to_dot(const MultilayerGraph& g);

}  // namespace nfv
