#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

#include "nfv/random.hpp"
#include "nfv/routing.hpp"

namespace nfv::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double route_weight(const Route& r, const std::vector<double>& w) {
  double sum = 0.0;
  for (EdgeIndex e : r.edges) sum += w[e];
  return sum;
}

inline double brute_force_path_cost(const MultilayerGraph& g, const std::vector<double>& w, VertexId from,
                             VertexId to) {
  double best = kInf;
  std::vector<char> on(g.vertex_count(), 0);
  std::function<void(VertexId, double)> dfs = [&](VertexId v, double cost) {
    if (v == to) {
      best = std::min(best, cost);
      return;
    }
    for (EdgeIndex e : g.out_edges(v)) {
      const VertexId u = g.edge(e).to;
      if (on[u]) continue;
      on[u] = 1;
      dfs(u, cost + w[e]);
      on[u] = 0;
    }
  };
  on[from] = 1;
  dfs(from, 0.0);
  return best;
}

// Exact minimum Steiner arborescence by subset dynamic programming over
// all-pairs distances.
inline double exact_steiner_cost(const MultilayerGraph& g, const std::vector<double>& w, VertexId root,
                          const std::vector<VertexId>& terminals) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) dist[v][v] = 0.0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    dist[g.edge(e).from][g.edge(e).to] = std::min(dist[g.edge(e).from][g.edge(e).to], w[e]);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);

  const std::size_t t = terminals.size();
  const std::size_t full = (std::size_t{1} << t) - 1;
  std::vector<std::vector<double>> dp(full + 1, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t v = 0; v < n; ++v) dp[std::size_t{1} << i][v] = dist[v][terminals[i]];
  for (std::size_t s = 1; s <= full; ++s) {
    if ((s & (s - 1)) == 0) continue;
    std::vector<double> merged(n, kInf);
    for (std::size_t a = (s - 1) & s; a > 0; a = (a - 1) & s)
      for (std::size_t v = 0; v < n; ++v) merged[v] = std::min(merged[v], dp[a][v] + dp[s ^ a][v]);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t u = 0; u < n; ++u) dp[s][v] = std::min(dp[s][v], dist[v][u] + merged[u]);
  }
  return dp[full][root];
}

inline std::vector<double> random_integer_weights(Rng& rng, const MultilayerGraph& g, int max) {
  std::vector<double> w(g.edge_count());
  for (auto& x : w) x = static_cast<double>(rng.uniform_int(0, max));
  return w;
}

}  // namespace nfv::testing
