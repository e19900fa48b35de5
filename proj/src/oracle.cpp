#include "nfv/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nfv/admission.hpp"
#include "nfv/errors.hpp"
#include "nfv/random.hpp"
#include "nfv/topologies.hpp"
#include "nfv/workload.hpp"

namespace nfv {

namespace {

struct RouteSearch {
  const MultilayerGraph& g;
  std::span<const VertexId> terminals;
  std::size_t limit;
  std::vector<Route>& out;
  std::vector<char> on_tree;
  std::vector<EdgeIndex> tree;

  void emit() {
    if (out.size() >= limit) throw BudgetExceeded("route enumeration exceeded its budget");
    Route r;
    r.edges = tree;
    std::sort(r.edges.begin(), r.edges.end());
    out.push_back(std::move(r));
  }

  // Attach terminals[next..] one at a time; each attachment is a simple
  // path from some tree vertex through fresh vertices. Fixing the attach
  // order makes every minimal tree appear exactly once.
  void attach(std::size_t next) {
    while (next < terminals.size() && on_tree[terminals[next]]) ++next;
    if (next == terminals.size()) {
      emit();
      return;
    }
    std::vector<VertexId> starts;
    for (VertexId v = 0; v < on_tree.size(); ++v)
      if (on_tree[v]) starts.push_back(v);
    for (VertexId start : starts) extend(start, terminals[next], next, /*first=*/true);
  }

  void extend(VertexId v, VertexId target, std::size_t next, bool first) {
    if (v == target && !first) {
      attach(next + 1);
      return;
    }
    for (EdgeIndex e : g.out_edges(v)) {
      const VertexId to = g.edge(e).to;
      if (on_tree[to]) continue;
      on_tree[to] = 1;
      tree.push_back(e);
      extend(to, target, next, false);
      tree.pop_back();
      on_tree[to] = 0;
    }
  }
};

using Footprint = std::pair<std::vector<LinkId>, std::vector<NodeId>>;

Footprint footprint_of(const Embedding& emb) {
  Footprint f{emb.links, {}};
  for (const auto& p : emb.placements) f.second.push_back(p.node);
  std::sort(f.first.begin(), f.first.end());
  std::sort(f.second.begin(), f.second.end());
  return f;
}

bool sub_multiset(const Footprint& a, const Footprint& b) {
  return std::includes(b.first.begin(), b.first.end(), a.first.begin(), a.first.end()) &&
         std::includes(b.second.begin(), b.second.end(), a.second.begin(), a.second.end());
}

struct Option {
  bool full_chain;
  const Embedding* embedding;
  Profit profit;
};

struct PackingSearch {
  const Substrate& s;
  std::span<const ServiceRequest> requests;
  std::vector<std::vector<Option>> options;
  std::vector<double> suffix_best;
  double best{0.0};
  std::vector<int> chosen;
  std::vector<int> best_choice;

  void run(std::size_t i, const ResidualLedger& ledger, double gained) {
    if (i == requests.size()) {
      if (gained > best || best_choice.empty()) {
        best = gained;
        best_choice = chosen;
      }
      return;
    }
    if (!best_choice.empty() && gained + suffix_best[i] <= best) return;
    for (std::size_t o = 0; o < options[i].size(); ++o) {
      const auto& opt = options[i][o];
      if (!check_feasible(ledger, s, *opt.embedding, requests[i])) continue;
      ResidualLedger next = ledger;
      commit_embedding(next, s, *opt.embedding, requests[i]);
      chosen[i] = static_cast<int>(o);
      run(i + 1, next, gained + opt.profit.total);
    }
    chosen[i] = -1;
    run(i + 1, ledger, gained);
  }
};

}  // namespace

std::vector<Route> enumerate_routes(const MultilayerGraph& g, VertexId root,
                                    std::span<const VertexId> terminals, std::size_t limit) {
  std::vector<Route> out;
  RouteSearch search{g, terminals, limit, out, std::vector<char>(g.vertex_count(), 0), {}};
  search.on_tree[root] = 1;
  search.attach(0);
  return out;
}

std::vector<Embedding> enumerate_embeddings(const Substrate& s, std::span<const NfTypeId> chain,
                                            NodeId source, std::span<const NodeId> destinations,
                                            std::size_t limit) {
  std::optional<MultilayerGraph> g;
  try {
    g.emplace(s, chain);
  } catch (const UnplaceableNf&) {
    return {};
  }
  std::vector<VertexId> terminals;
  for (NodeId d : destinations) terminals.push_back(g->terminal_vertex(d));
  const VertexId root = g->source_vertex(source);

  std::map<Footprint, Embedding> unique;
  for (const auto& r : enumerate_routes(*g, root, terminals, limit)) {
    Embedding emb = project(*g, r.edges, root, terminals);
    unique.try_emplace(footprint_of(emb), std::move(emb));
  }
  std::vector<std::pair<Footprint, Embedding>> all(unique.begin(), unique.end());
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.first.first.size() + a.first.second.size() <
           b.first.first.size() + b.first.second.size();
  });
  std::vector<Embedding> kept;
  std::vector<const Footprint*> kept_fp;
  for (const auto& [fp, emb] : all) {
    const bool dominated = std::any_of(kept_fp.begin(), kept_fp.end(),
                                       [&](const Footprint* k) { return sub_multiset(*k, fp); });
    if (dominated) continue;
    kept.push_back(emb);
    kept_fp.push_back(&fp);
  }
  return kept;
}

OracleResult offline_optimum(const Substrate& s, std::span<const ServiceRequest> requests,
                             const PricingParams& params, const OracleLimits& limits) {
  if (s.node_count() > limits.max_nodes) throw BudgetExceeded("too many substrate nodes");
  if (requests.size() > limits.max_requests) throw BudgetExceeded("too many requests");
  for (const auto& r : requests) {
    if (r.chain.size() > limits.max_chain) throw BudgetExceeded("chain too long");
    if (r.destinations.size() > limits.max_destinations)
      throw BudgetExceeded("too many destinations");
  }

  // Embedding storage must outlive the option pointers.
  std::vector<std::array<std::vector<Embedding>, 2>> embeddings(requests.size());
  PackingSearch search{s, requests, {}, {}, 0.0, {}, {}};
  search.options.resize(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto& r = requests[i];
    embeddings[i][0] = enumerate_embeddings(s, r.full_chain(), r.source, r.destinations,
                                            limits.max_routes);
    const Profit full = profit(r, true, params);
    for (const auto& e : embeddings[i][0]) search.options[i].push_back({true, &e, full});
    if (r.has_best_effort()) {
      embeddings[i][1] = enumerate_embeddings(s, r.mandatory_chain(), r.source, r.destinations,
                                              limits.max_routes);
      const Profit mand = profit(r, false, params);
      for (const auto& e : embeddings[i][1]) search.options[i].push_back({false, &e, mand});
    }
  }
  search.suffix_best.assign(requests.size() + 1, 0.0);
  for (std::size_t i = requests.size(); i-- > 0;) {
    double best = 0.0;
    for (const auto& o : search.options[i]) best = std::max(best, o.profit.total);
    search.suffix_best[i] = search.suffix_best[i + 1] + best;
  }
  search.chosen.assign(requests.size(), -1);
  search.run(0, ResidualLedger(s), 0.0);

  OracleResult result;
  result.profit = search.best;
  for (std::size_t i = 0; i < search.best_choice.size(); ++i) {
    const int o = search.best_choice[i];
    if (o < 0) continue;
    const auto& opt = search.options[i][static_cast<std::size_t>(o)];
    result.accepted.push_back(OracleChoice{i, opt.full_chain, *opt.embedding, opt.profit});
  }
  return result;
}

}  // namespace nfv

namespace nfv {

TinyInstance make_tiny_instance(std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(Rng::derive(seed, attempt));
    const int n = static_cast<int>(rng.uniform_int(3, 6));
    std::vector<UndirectedEdge> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(static_cast<int>(rng.index(v)), v);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const bool present = std::find(edges.begin(), edges.end(), UndirectedEdge{u, v}) != edges.end() ||
                             std::find(edges.begin(), edges.end(), UndirectedEdge{v, u}) != edges.end();
        if (!present && rng.uniform01() < 0.25) edges.emplace_back(u, v);
      }
    const CapacitySpec caps{8, 16, 8, 16};
    const HostingSpec hosting{3, 2.0 / 3.0, 0.0};
    Substrate s = from_undirected(n, edges, caps, hosting, rng.next());

    WorkloadSpec w;
    w.rate = {1, 20};
    w.chain_length = {0, 2};
    w.best_effort = {0, 2};
    w.destinations = {1, std::min(2, n - 1)};
    w.eta_policy = rng.uniform01() < 0.5 ? EtaPolicy::counted : EtaPolicy::constant;
    w.seed = rng.next();

    PricingParams p;
    p.k = 0.8;
    p.max_chain_length = 2;
    p.max_route_links = (p.max_chain_length + 1) * (n - 1);
    p.max_destinations = w.destinations.max;
    const EtaBounds eta = eta_bounds(w);
    p.eta_max = eta.max;
    p.eta_min = eta.min;
    p.mode = PricingMode::approximation;
    w.rate_cap = p.rate_cap(s);
    w.proc_cap = p.proc_cap(s);

    try {
      const auto count = static_cast<std::size_t>(rng.uniform_int(1, 5));
      auto requests = generate(w, s, count);
      return TinyInstance{std::move(s), std::move(requests), p};
    } catch (const InfeasibleSpec&) {
      // some NF type ended up without a host; draw again
    }
  }
}

CompetitiveCheck check_competitive(const TinyInstance& inst) {
  CompetitiveCheck out;
  out.factor = inst.params.competitive_factor();
  CostState costs(inst.substrate);
  ResidualLedger ledger(inst.substrate);
  for (const auto& req : inst.requests) {
    try {
      const auto outcome = admit(req, inst.substrate, costs, ledger, inst.params);
      if (outcome.accepted()) {
        ++out.online_accepted;
        out.online += outcome.profit.total;
      }
    } catch (const CapacityViolation&) {
      ++out.capacity_violations;
    }
    if (costs.dual() > costs.primal() + 1e-9 * std::max(1.0, costs.primal())) out.weak_duality = false;
  }
  out.closed_form_deviation = closed_form_deviation(costs, ledger, inst.substrate, inst.params);
  out.optimum = offline_optimum(inst.substrate, inst.requests, inst.params).profit;
  return out;
}

}  // namespace nfv
