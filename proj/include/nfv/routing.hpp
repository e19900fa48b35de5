#pragma once

#include <limits>
#include <span>
#include <vector>

#include "nfv/transform.hpp"

namespace nfv {

/// A route over a multilayer graph: a path or an out-tree, as edge indices.
struct Route {
  std::vector<EdgeIndex> edges;
  double cost{0.0};  // each edge counted once
};

/// Single-source labels ordered by (cost, hop count).
struct DistanceField {
  VertexId source{0};
  std::vector<double> cost;
  std::vector<std::uint32_t> hops;

  [[nodiscard]] bool reaches(VertexId v) const;
};

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Dijkstra over non-negative `weights`, tie-broken on hop count. With
/// `stop_at` set, stops once that vertex is settled; labels ordered before
/// it are final, later ones may be tentative.
DistanceField distances_from(const MultilayerGraph& g, std::span<const double> weights,
                             VertexId source, VertexId stop_at = kNoVertex);

/// Among minimum-(cost, hops) paths to `target`, the one whose vertex
/// sequence is lexicographically least. Throws Unreachable.
Route extract_path(const MultilayerGraph& g, std::span<const double> weights,
                   const DistanceField& field, VertexId target);

/// Minimum-weight source -> target path; ties go to fewer hops, then to the
/// lexicographically least vertex sequence. Throws Unreachable.
Route shortest_path(const MultilayerGraph& g, std::span<const double> weights, VertexId source,
                    VertexId target);

/// Directed KMB Steiner tree rooted at `root` spanning `terminals`.
///
/// Builds the metric closure of {root} + terminals from directed
/// shortest-path distances, grows a minimum spanning arborescence over it
/// from the root (Prim order), expands closure edges into their paths, and
/// keeps a shortest-path tree of the union so every vertex has one parent.
/// Leaves are terminals. Throws Unreachable.
Route steiner_tree(const MultilayerGraph& g, std::span<const double> weights, VertexId root,
                   std::span<const VertexId> terminals);

/// Dijkstra for one terminal, KMB otherwise.
Route route_request(const MultilayerGraph& g, std::span<const double> weights, VertexId root,
                    std::span<const VertexId> terminals);

}  // namespace nfv
