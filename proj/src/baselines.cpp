#include "nfv/baselines.hpp"

#include "admission_detail.hpp"

namespace nfv {

AdmissionOutcome admit_heuristic(const ServiceRequest& req, const Substrate& s, CostState& costs,
                                 ResidualLedger& residuals, const PricingParams& params,
                                 const AdmissionOptions& options) {
  AdmissionOutcome out;
  if (options.diagnose_existential) out.existential_admissible = detail::any_admissible(req, s, costs, params);
  std::array<PassReport, 2> passes{};
  bool any_routed = false;
  bool blocked_by_capacity = false;
  for (std::size_t i = 0; i < 2; ++i) {
    const bool full = i == 0;
    if (!full && !req.has_best_effort()) break;
    passes[i] = detail::evaluate_pass(req, s, costs, residuals, params, full, false);
    const auto& p = passes[i];
    any_routed = any_routed || p.routed;
    if (!p.routed || !p.conditions_hold) continue;
    if (p.feasible) {
      auto accepted = detail::accept(req, s, costs, residuals, params, passes, i);
      accepted.existential_admissible = out.existential_admissible;
      return accepted;
    }
    blocked_by_capacity = true;
  }
  out.passes = passes;
  out.reason = !any_routed          ? RejectReason::unroutable
               : blocked_by_capacity ? RejectReason::capacity_post_check
                                     : RejectReason::admission_conditions;
  const PassReport& last = passes[1].attempted ? passes[1] : passes[0];
  out.link_lhs = last.link_lhs;
  out.node_lhs = last.node_lhs;
  out.profit = last.profit;
  return out;
}

AdmissionOutcome admit_greedy(const ServiceRequest& req, const Substrate& s, CostState& costs,
                              ResidualLedger& residuals, const PricingParams& params,
                              const AdmissionOptions& options) {
  AdmissionOutcome out;
  const bool unit = options.greedy_weights == GreedyWeights::unit;
  std::array<PassReport, 2> passes{};
  bool any_routed = false;
  for (std::size_t i = 0; i < 2; ++i) {
    const bool full = i == 0;
    if (!full && !req.has_best_effort()) break;
    passes[i] = detail::evaluate_pass(req, s, costs, residuals, params, full, unit);
    any_routed = any_routed || passes[i].routed;
    if (passes[i].routed && passes[i].feasible)
      return detail::accept(req, s, costs, residuals, params, passes, i);
  }
  out.passes = passes;
  out.reason = any_routed ? RejectReason::infeasible : RejectReason::unroutable;
  const PassReport& last = passes[1].attempted ? passes[1] : passes[0];
  out.link_lhs = last.link_lhs;
  out.node_lhs = last.node_lhs;
  out.profit = last.profit;
  return out;
}

PricingParams params_for(Algorithm algorithm, PricingParams base) {
  base.mode = algorithm == Algorithm::approximation ? PricingMode::approximation
                                                    : PricingMode::heuristic;
  return base;
}

OnlineAlgorithm::OnlineAlgorithm(const Substrate& s, Algorithm algorithm,
                                 const PricingParams& base, AdmissionOptions options)
    : substrate_(&s),
      algorithm_(algorithm),
      params_(params_for(algorithm, base)),
      options_(options),
      costs_(s),
      residuals_(s) {
  params_.validate();
}

AdmissionOutcome OnlineAlgorithm::offer(const ServiceRequest& req) {
  switch (algorithm_) {
    case Algorithm::approximation:
      return admit(req, *substrate_, costs_, residuals_, params_, options_);
    case Algorithm::heuristic:
      return admit_heuristic(req, *substrate_, costs_, residuals_, params_, options_);
    case Algorithm::greedy:
      return admit_greedy(req, *substrate_, costs_, residuals_, params_, options_);
  }
  return {};
}

}  // namespace nfv
