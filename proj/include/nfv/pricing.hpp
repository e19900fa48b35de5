#pragma once

#include <span>
#include <vector>

#include "json.hpp"
#include "nfv/request.hpp"
#include "nfv/substrate.hpp"

namespace nfv {

enum class PricingMode {
  approximation,  // exponents sized so admission protects capacities
  heuristic,      // half-strength exponents; capacities are not protected
};

/// System constants of the exponential pricing. Fixed before the request
/// sequence starts and shared by every admission decision.
struct PricingParams {
  double alpha{1.0};         // weight of transmission profit
  double beta{1.0};          // weight of processing profit
  double k{0.8};             // destination-count exponent
  int max_route_links{1};    // L: longest route (path or tree) in links
  int max_chain_length{1};   // K: longest chain in NF instances
  int max_destinations{1};   // |D|_max
  double eta_max{1.0};
  double eta_min{1.0};
  PricingMode mode{PricingMode::approximation};

  /// Link exponent phi: ln(2 a L D^k + 2), or ln(a L D^k + 1) in heuristic mode.
  [[nodiscard]] double link_exponent() const;
  /// Node exponent: ln(2 b K eta_max/eta_min + 2), or the heuristic analogue.
  [[nodiscard]] double node_exponent() const;
  /// 2 max{phi_link, phi_node}, the per-acceptance primal/dual growth factor.
  [[nodiscard]] double competitive_factor() const;

  /// Largest admissible request rate, min_l B(l) / phi_link.
  [[nodiscard]] double rate_cap(const Substrate& s) const;
  /// Largest admissible per-NF processing, min_n C(n) / phi_node.
  [[nodiscard]] double proc_cap(const Substrate& s) const;

  /// Throws ConfigError when a field is outside its domain.
  void validate() const;
};

nlohmann::json to_json(const PricingParams& p);
PricingParams pricing_from_json(const nlohmann::json& j);

struct Profit {
  double transmission{0.0};  // d |D|^k
  double processing{0.0};    // eta C(f)
  double total{0.0};         // alpha * transmission + beta * processing
};

[[nodiscard]] Profit profit(const ServiceRequest& req, bool include_best_effort,
                            const PricingParams& params);

/// Changes recorded for one accepted request.
struct StepRecord {
  double delta_primal{0.0};  // growth of J
  double delta_dual{0.0};    // growth of D
  double z{0.0};
};

/// Link and node prices plus the primal (J) and dual (D) objective ledgers.
class CostState {
 public:
  CostState() = default;
  explicit CostState(const Substrate& s)
      : link_(s.link_count(), 0.0), node_(s.node_count(), 0.0) {}

  [[nodiscard]] double link_cost(LinkId l) const { return link_[l.index()]; }
  [[nodiscard]] double node_cost(NodeId n) const { return node_[n.index()]; }
  [[nodiscard]] std::span<const double> link_costs() const { return link_; }
  [[nodiscard]] std::span<const double> node_costs() const { return node_; }

  [[nodiscard]] double primal() const { return primal_; }
  [[nodiscard]] double dual() const { return dual_; }
  [[nodiscard]] std::span<const double> z_history() const { return z_; }

  /// sum over traversals of rate * link cost (multiplicity counted).
  [[nodiscard]] double link_cost_sum(std::span<const LinkId> traversals, double rate) const;
  /// sum over placements of proc * node cost.
  [[nodiscard]] double node_cost_sum(std::span<const Placement> placements, double proc) const;

 private:
  friend StepRecord commit_costs(CostState&, const Substrate&, const Embedding&,
                                 const ServiceRequest&, const Profit&, const PricingParams&);
  std::vector<double> link_;
  std::vector<double> node_;
  double primal_{0.0};
  double dual_{0.0};
  std::vector<double> z_;
};

/// Applies the multiplicative price update once per link traversal and once
/// per NF placement of `emb`, then books z, J and D for the acceptance.
/// z is evaluated on the updated prices and clamped at zero.
StepRecord commit_costs(CostState& state, const Substrate& s, const Embedding& emb,
                        const ServiceRequest& req, const Profit& gained,
                        const PricingParams& params);

/// (1/L)(e^{phi u} - 1) for link utilization u.
[[nodiscard]] double closed_form_link_cost(double utilization, const PricingParams& params);
/// (1/K)(e^{phi u} - 1) for node utilization u.
[[nodiscard]] double closed_form_node_cost(double utilization, const PricingParams& params);

/// Largest |recursive - closed form| / (1 + recursive) over all elements.
[[nodiscard]] double closed_form_deviation(const CostState& state, const ResidualLedger& ledger,
                                           const Substrate& s, const PricingParams& params);

/// Per-element prices and utilizations plus J and D.
nlohmann::json snapshot(const CostState& state, const ResidualLedger& ledger, const Substrate& s);

}  // namespace nfv
