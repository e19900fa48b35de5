#include "nfv/pricing.hpp"

#include <algorithm>
#include <cmath>

#include "nfv/errors.hpp"

namespace nfv {

double PricingParams::link_exponent() const {
  const double a = alpha * max_route_links * std::pow(double(max_destinations), k);
  return mode == PricingMode::approximation ? std::log(2.0 * a + 2.0) : std::log(a + 1.0);
}

double PricingParams::node_exponent() const {
  const double a = beta * max_chain_length * (eta_max / eta_min);
  return mode == PricingMode::approximation ? std::log(2.0 * a + 2.0) : std::log(a + 1.0);
}

double PricingParams::competitive_factor() const {
  return 2.0 * std::max(link_exponent(), node_exponent());
}

double PricingParams::rate_cap(const Substrate& s) const {
  return s.min_link_capacity() / link_exponent();
}

double PricingParams::proc_cap(const Substrate& s) const {
  return s.min_node_capacity() / node_exponent();
}

void PricingParams::validate() const {
  if (alpha < 1.0 || beta < 1.0) throw ConfigError("alpha and beta must be >= 1");
  if (k < 0.0) throw ConfigError("k must be non-negative");
  if (max_route_links < 1 || max_chain_length < 1 || max_destinations < 1)
    throw ConfigError("L, K and D_max must be >= 1");
  if (eta_min < 1.0 || eta_max < eta_min) throw ConfigError("need eta_max >= eta_min >= 1");
}

nlohmann::json to_json(const PricingParams& p) {
  return {{"alpha", p.alpha},
          {"beta", p.beta},
          {"k", p.k},
          {"L", p.max_route_links},
          {"K", p.max_chain_length},
          {"D_max", p.max_destinations},
          {"eta_max", p.eta_max},
          {"eta_min", p.eta_min},
          {"mode", p.mode == PricingMode::approximation ? "approximation" : "heuristic"},
          {"phi_link", p.link_exponent()},
          {"phi_node", p.node_exponent()}};
}

PricingParams pricing_from_json(const nlohmann::json& j) {
  PricingParams p;
  p.alpha = j.value("alpha", 1.0);
  p.beta = j.value("beta", 1.0);
  p.k = j.value("k", 0.8);
  p.max_route_links = j.value("L", 1);
  p.max_chain_length = j.value("K", 1);
  p.max_destinations = j.value("D_max", 1);
  p.eta_max = j.value("eta_max", 1.0);
  p.eta_min = j.value("eta_min", 1.0);
  const auto mode = j.value("mode", std::string("approximation"));
  if (mode == "approximation")
    p.mode = PricingMode::approximation;
  else if (mode == "heuristic")
    p.mode = PricingMode::heuristic;
  else
    throw ConfigError("unknown pricing mode '" + mode + "'");
  p.validate();
  return p;
}

Profit profit(const ServiceRequest& req, bool include_best_effort, const PricingParams& params) {
  Profit p;
  p.transmission = req.rate * std::pow(double(req.destinations.size()), params.k);
  p.processing = (include_best_effort ? req.eta_full : req.eta_mandatory) * req.proc;
  p.total = params.alpha * p.transmission + params.beta * p.processing;
  return p;
}

double CostState::link_cost_sum(std::span<const LinkId> traversals, double rate) const {
  double sum = 0.0;
  for (LinkId l : traversals) sum += link_[l.index()];
  return rate * sum;
}

double CostState::node_cost_sum(std::span<const Placement> placements, double proc) const {
  double sum = 0.0;
  for (const auto& p : placements) sum += node_[p.node.index()];
  return proc * sum;
}

StepRecord commit_costs(CostState& state, const Substrate& s, const Embedding& emb,
                        const ServiceRequest& req, const Profit& gained,
                        const PricingParams& params) {
  const double phi_link = params.link_exponent();
  const double phi_node = params.node_exponent();
  const double inv_l = 1.0 / params.max_route_links;
  const double inv_k = 1.0 / params.max_chain_length;

  double delta_primal = 0.0;
  for (LinkId l : emb.links) {
    const double cap = s.link(l).capacity;
    const double growth = std::exp(phi_link * req.rate / cap);
    double& x = state.link_[l.index()];
    const double before = x;
    x = x * growth + inv_l * (growth - 1.0);
    delta_primal += cap * (x - before);
  }
  for (const auto& p : emb.placements) {
    const double cap = s.node(p.node).capacity;
    const double growth = std::exp(phi_node * req.proc / cap);
    double& x = state.node_[p.node.index()];
    const double before = x;
    x = x * growth + inv_k * (growth - 1.0);
    delta_primal += cap * (x - before);
  }

  const double link_slack =
      params.alpha * gained.transmission - state.link_cost_sum(emb.links, req.rate);
  const double node_slack =
      params.beta * gained.processing - state.node_cost_sum(emb.placements, req.proc);
  const double z = std::max({0.0, link_slack, node_slack});

  delta_primal += z;
  state.z_.push_back(z);
  state.primal_ += delta_primal;
  state.dual_ += gained.total;
  return StepRecord{delta_primal, gained.total, z};
}

double closed_form_link_cost(double utilization, const PricingParams& params) {
  return std::expm1(params.link_exponent() * utilization) / params.max_route_links;
}

double closed_form_node_cost(double utilization, const PricingParams& params) {
  return std::expm1(params.node_exponent() * utilization) / params.max_chain_length;
}

double closed_form_deviation(const CostState& state, const ResidualLedger& ledger,
                             const Substrate& s, const PricingParams& params) {
  double worst = 0.0;
  for (const auto& l : s.links()) {
    const double rec = state.link_cost(l.id);
    const double closed = closed_form_link_cost(link_utilization(ledger, s, l.id), params);
    worst = std::max(worst, std::abs(rec - closed) / (1.0 + rec));
  }
  for (const auto& n : s.nodes()) {
    if (n.capacity <= 0.0) continue;
    const double rec = state.node_cost(n.id);
    const double closed = closed_form_node_cost(node_utilization(ledger, s, n.id), params);
    worst = std::max(worst, std::abs(rec - closed) / (1.0 + rec));
  }
  return worst;
}

nlohmann::json snapshot(const CostState& state, const ResidualLedger& ledger, const Substrate& s) {
  nlohmann::json links = nlohmann::json::array();
  for (const auto& l : s.links())
    links.push_back({{"id", l.id.value()},
                     {"from", l.from.value()},
                     {"to", l.to.value()},
                     {"cost", state.link_cost(l.id)},
                     {"utilization", link_utilization(ledger, s, l.id)}});
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : s.nodes())
    nodes.push_back({{"id", n.id.value()},
                     {"cost", state.node_cost(n.id)},
                     {"utilization", node_utilization(ledger, s, n.id)}});
  return {{"links", links},
          {"nodes", nodes},
          {"J", state.primal()},
          {"D", state.dual()},
          {"accepted", state.z_history().size()}};
}

}  // namespace nfv
