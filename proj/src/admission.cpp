#include "nfv/admission.hpp"

#include "admission_detail.hpp"
#include "nfv/errors.hpp"
#include "nfv/oracle.hpp"
#include "nfv/routing.hpp"
#include "nfv/transform.hpp"

namespace nfv {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::approximation: return "approximation";
    case Algorithm::heuristic: return "heuristic";
    case Algorithm::greedy: return "greedy";
  }
  return "?";
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::accepted_full: return "accepted_full";
    case Decision::accepted_mandatory_only: return "accepted_mandatory_only";
    case Decision::rejected: return "rejected";
  }
  return "?";
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::none: return "none";
    case RejectReason::admission_conditions: return "admission_conditions";
    case RejectReason::unroutable: return "unroutable";
    case RejectReason::cap_violated_input: return "cap_violated_input";
    case RejectReason::capacity_post_check: return "capacity_post_check";
    case RejectReason::infeasible: return "infeasible";
  }
  return "?";
}

Algorithm algorithm_from_string(std::string_view s) {
  if (s == "approximation") return Algorithm::approximation;
  if (s == "heuristic") return Algorithm::heuristic;
  if (s == "greedy") return Algorithm::greedy;
  throw ConfigError("unknown algorithm '" + std::string(s) + "'");
}

bool conditions_hold(const ServiceRequest& req, const Embedding& emb, bool full_chain,
                     const CostState& costs, const PricingParams& params) {
  const Profit p = profit(req, full_chain, params);
  return costs.link_cost_sum(emb.links, req.rate) <= params.alpha * p.transmission &&
         costs.node_cost_sum(emb.placements, req.proc) <= params.beta * p.processing;
}

namespace detail {

PassReport evaluate_pass(const ServiceRequest& req, const Substrate& s, const CostState& costs,
                         const ResidualLedger& residuals, const PricingParams& params,
                         bool full_chain, bool unit_weights) {
  PassReport pass;
  pass.attempted = true;
  pass.full_chain = full_chain;
  pass.profit = profit(req, full_chain, params);
  const auto chain = full_chain ? req.full_chain() : req.mandatory_chain();
  try {
    const MultilayerGraph g(s, chain);
    const auto weights = unit_weights ? g.unit_weights() : g.weights(costs, req.rate, req.proc);
    std::vector<VertexId> terminals;
    for (NodeId d : req.destinations) terminals.push_back(g.terminal_vertex(d));
    const VertexId root = g.source_vertex(req.source);
    const Route route = route_request(g, weights, root, terminals);
    pass.embedding = project(g, route.edges, root, terminals);
    pass.routed = true;
  } catch (const UnplaceableNf&) {
    return pass;
  } catch (const Unreachable&) {
    return pass;
  }
  pass.link_lhs = costs.link_cost_sum(pass.embedding.links, req.rate);
  pass.node_lhs = costs.node_cost_sum(pass.embedding.placements, req.proc);
  pass.conditions_hold = pass.link_lhs <= params.alpha * pass.profit.transmission &&
                         pass.node_lhs <= params.beta * pass.profit.processing;
  pass.feasible = check_feasible(residuals, s, pass.embedding, req);
  return pass;
}

AdmissionOutcome accept(const ServiceRequest& req, const Substrate& s, CostState& costs,
                        ResidualLedger& residuals, const PricingParams& params,
                        std::array<PassReport, 2> passes, std::size_t winner) {
  AdmissionOutcome out;
  const PassReport& p = passes[winner];
  commit_embedding(residuals, s, p.embedding, req);
  const StepRecord step = commit_costs(costs, s, p.embedding, req, p.profit, params);
  out.decision = p.full_chain ? Decision::accepted_full : Decision::accepted_mandatory_only;
  out.embedding = p.embedding;
  out.profit = p.profit;
  out.link_lhs = p.link_lhs;
  out.node_lhs = p.node_lhs;
  out.z = step.z;
  out.step = step;
  out.passes = std::move(passes);
  return out;
}

std::optional<bool> any_admissible(const ServiceRequest& req, const Substrate& s,
                                   const CostState& costs, const PricingParams& params) {
  constexpr std::size_t kLimit = 100000;
  try {
    for (bool full : {true, false}) {
      if (!full && !req.has_best_effort()) break;
      const auto chain = full ? req.full_chain() : req.mandatory_chain();
      for (const auto& emb : enumerate_embeddings(s, chain, req.source, req.destinations, kLimit))
        if (conditions_hold(req, emb, full, costs, params)) return true;
    }
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  return false;
}

}  // namespace detail

AdmissionOutcome admit(const ServiceRequest& req, const Substrate& s, CostState& costs,
                       ResidualLedger& residuals, const PricingParams& params,
                       const AdmissionOptions& options) {
  AdmissionOutcome out;
  if (options.diagnose_existential) out.existential_admissible = detail::any_admissible(req, s, costs, params);

  if (req.rate > params.rate_cap(s) + kCapacityTolerance ||
      (!req.chain.empty() && req.proc > params.proc_cap(s) + kCapacityTolerance)) {
    out.reason = RejectReason::cap_violated_input;
    return out;
  }

  std::array<PassReport, 2> passes{};
  bool any_routed = false;
  for (std::size_t i = 0; i < 2; ++i) {
    const bool full = i == 0;
    if (!full && !req.has_best_effort()) break;
    passes[i] = detail::evaluate_pass(req, s, costs, residuals, params, full, false);
    any_routed = any_routed || passes[i].routed;
    if (passes[i].routed && passes[i].conditions_hold) {
      auto accepted = detail::accept(req, s, costs, residuals, params, passes, i);
      accepted.existential_admissible = out.existential_admissible;
      return accepted;
    }
  }
  out.passes = passes;
  out.reason = any_routed ? RejectReason::admission_conditions : RejectReason::unroutable;
  const PassReport& last = passes[1].attempted ? passes[1] : passes[0];
  out.link_lhs = last.link_lhs;
  out.node_lhs = last.node_lhs;
  out.profit = last.profit;
  return out;
}

nlohmann::json to_json(const AdmissionOutcome& outcome, const ServiceRequest& req,
                       Algorithm algorithm) {
  nlohmann::json j{{"r", req.id},
                   {"algorithm", to_string(algorithm)},
                   {"decision", to_string(outcome.decision)},
                   {"reason", to_string(outcome.reason)},
                   {"rate", req.rate},
                   {"proc", req.proc},
                   {"varrho", outcome.profit.transmission},
                   {"rho", outcome.profit.processing},
                   {"profit", outcome.accepted() ? outcome.profit.total : 0.0},
                   {"link_lhs", outcome.link_lhs},
                   {"node_lhs", outcome.node_lhs}};
  j["variant"] = outcome.decision == Decision::accepted_full            ? nlohmann::json("full")
                 : outcome.decision == Decision::accepted_mandatory_only ? nlohmann::json("mandatory_only")
                                                                          : nlohmann::json(nullptr);
  j["z"] = outcome.z ? nlohmann::json(*outcome.z) : nlohmann::json(nullptr);
  nlohmann::json links = nlohmann::json::array();
  nlohmann::json placements = nlohmann::json::array();
  if (outcome.embedding) {
    for (LinkId l : outcome.embedding->links) links.push_back(l.value());
    for (const auto& p : outcome.embedding->placements)
      placements.push_back({{"position", p.position}, {"node", p.node.value()}});
  }
  j["route_links"] = links;
  j["placements"] = placements;
  if (outcome.step) {
    j["delta_J"] = outcome.step->delta_primal;
    j["delta_D"] = outcome.step->delta_dual;
  }
  return j;
}

}  // namespace nfv
