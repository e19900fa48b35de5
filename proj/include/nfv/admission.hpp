#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "json.hpp"
#include "nfv/pricing.hpp"
#include "nfv/request.hpp"
#include "nfv/substrate.hpp"

namespace nfv {

enum class Algorithm { approximation, heuristic, greedy };

enum class Decision { accepted_full, accepted_mandatory_only, rejected };

enum class RejectReason {
  none,
  admission_conditions,  // price sums exceeded the profit on every pass
  unroutable,            // no route, or a mandatory NF has no host
  cap_violated_input,    // rate or processing above the approximation caps
  capacity_post_check,   // conditions passed but residual capacity did not
  infeasible,            // greedy: no pass fits the residual capacity
};

enum class GreedyWeights { exponential, unit };

std::string_view to_string(Algorithm a);
std::string_view to_string(Decision d);
std::string_view to_string(RejectReason r);
Algorithm algorithm_from_string(std::string_view s);

/// What one composition (full chain or mandatory-only chain) looked like.
struct PassReport {
  bool attempted{false};
  bool routed{false};
  bool full_chain{true};
  Embedding embedding;
  Profit profit;
  double link_lhs{0.0};  // sum of rate * link price over the route
  double node_lhs{0.0};  // sum of proc * node price over the placements
  bool conditions_hold{false};
  bool feasible{false};
};

struct AdmissionOutcome {
  Decision decision{Decision::rejected};
  RejectReason reason{RejectReason::none};
  std::optional<Embedding> embedding;
  Profit profit;
  double link_lhs{0.0};
  double node_lhs{0.0};
  std::optional<double> z;
  std::optional<StepRecord> step;
  std::array<PassReport, 2> passes{};
  /// Set when diagnosis is enabled: whether any embedding of either pass
  /// (not only the minimum-price one) satisfies both conditions.
  std::optional<bool> existential_admissible;

  [[nodiscard]] bool accepted() const { return decision != Decision::rejected; }
};

struct AdmissionOptions {
  bool diagnose_existential{false};
  GreedyWeights greedy_weights{GreedyWeights::exponential};
};

/// Two-pass admission with exponential prices.
///
/// Pass 1 routes the full chain on the price-weighted multilayer graph and
/// accepts if rate * (route link prices) <= alpha * varrho and proc * (placement
/// node prices) <= beta * rho with eta_b. Pass 2 repeats with the
/// mandatory-only chain and eta_m. Acceptance commits residuals and prices;
/// rejection leaves all state untouched. Requests above the rate or
/// processing caps are rejected as cap_violated_input.
AdmissionOutcome admit(const ServiceRequest& req, const Substrate& s, CostState& costs,
                       ResidualLedger& residuals, const PricingParams& params,
                       const AdmissionOptions& options = {});

/// True iff the price conditions hold for `emb` under the current prices.
bool conditions_hold(const ServiceRequest& req, const Embedding& emb, bool full_chain,
                     const CostState& costs, const PricingParams& params);

/// Decision-log line for one outcome.
nlohmann::json to_json(const AdmissionOutcome& outcome, const ServiceRequest& req,
                       Algorithm algorithm);

}  // namespace nfv
