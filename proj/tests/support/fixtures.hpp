#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nfv/random.hpp"
#include "nfv/request.hpp"
#include "nfv/substrate.hpp"

namespace nfv::testing {

/// Substrate with one link per directed pair and uniform capacities.
/// `hosting[i]` lists the NF type indices node i can run.
inline Substrate make_substrate(int n, const std::vector<std::pair<int, int>>& directed,
                                double link_cap, double node_cap,
                                const std::vector<std::vector<int>>& hosting, int catalog = 2) {
  std::vector<std::string> names;
  for (int t = 0; t < catalog; ++t) names.push_back("f" + std::to_string(t));
  std::vector<Node> nodes;
  for (int i = 0; i < n; ++i) {
    Node node{NodeId(i), node_cap, {}};
    if (i < static_cast<int>(hosting.size()))
      for (int t : hosting[static_cast<std::size_t>(i)]) node.hostable.push_back(NfTypeId(t));
    nodes.push_back(node);
  }
  std::vector<Link> links;
  for (const auto& [a, b] : directed)
    links.push_back(Link{LinkId(links.size()), NodeId(a), NodeId(b), link_cap});
  return Substrate(names, nodes, links);
}

/// Both directions of each undirected edge, in edge order.
inline std::vector<std::pair<int, int>> both_ways(const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [a, b] : edges) {
    out.emplace_back(a, b);
    out.emplace_back(b, a);
  }
  return out;
}

inline std::vector<std::pair<int, int>> line_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return both_ways(e);
}

inline ServiceRequest make_request(int source, std::vector<int> dests,
                                   std::vector<std::pair<int, bool>> chain, double rate,
                                   double proc, double eta_m = 1.0, double eta_b = 1.0) {
  ServiceRequest r;
  r.source = NodeId(source);
  for (int d : dests) r.destinations.push_back(NodeId(d));
  for (const auto& [t, mandatory] : chain) r.chain.push_back(ChainEntry{NfTypeId(t), mandatory});
  r.rate = rate;
  r.proc = proc;
  r.eta_mandatory = eta_m;
  r.eta_full = eta_b;
  return r;
}

inline LinkId find_link(const Substrate& s, int from, int to) {
  for (const auto& l : s.links())
    if (l.from == NodeId(from) && l.to == NodeId(to)) return l.id;
  return LinkId(-1);
}

/// Random connected substrate on n nodes: a random tree plus extra edges,
/// both directions per edge, every node hosting each NF type with
/// probability one half (at least one host per type).
inline Substrate random_substrate(Rng& rng, int n, int catalog, double link_cap,
                                  double node_cap, double extra_edge_p = 0.3) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng.index(static_cast<std::size_t>(v))), v);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool present = false;
      for (const auto& [x, y] : edges) present |= (x == a && y == b) || (x == b && y == a);
      if (!present && rng.uniform01() < extra_edge_p) edges.emplace_back(a, b);
    }
  std::vector<std::vector<int>> hosting(static_cast<std::size_t>(n));
  for (int t = 0; t < catalog; ++t) {
    bool any = false;
    for (int v = 0; v < n; ++v)
      if (rng.uniform01() < 0.5) {
        hosting[static_cast<std::size_t>(v)].push_back(t);
        any = true;
      }
    if (!any) hosting[rng.index(static_cast<std::size_t>(n))].push_back(t);
  }
  return make_substrate(n, both_ways(edges), link_cap, node_cap, hosting, catalog);
}

}  // namespace nfv::testing
