#pragma once

#include "nfv/admission.hpp"

namespace nfv {

/// Admission with heuristic-strength exponents and no input caps. A pass
/// that meets the price conditions but does not fit the residual capacity
/// is discarded; if no pass survives, the request is rejected with
/// capacity_post_check (when that was the failure) and state is unchanged.
AdmissionOutcome admit_heuristic(const ServiceRequest& req, const Substrate& s, CostState& costs,
                                 ResidualLedger& residuals, const PricingParams& params,
                                 const AdmissionOptions& options = {});

/// Accepts the first pass whose route fits the residual capacity, ignoring
/// the price conditions. Routes on the exponential prices of `params` (or
/// unit weights) and keeps updating them so later routes see the load.
AdmissionOutcome admit_greedy(const ServiceRequest& req, const Substrate& s, CostState& costs,
                              ResidualLedger& residuals, const PricingParams& params,
                              const AdmissionOptions& options = {});

/// Pricing used by `algorithm`: approximation exponents for the
/// approximation algorithm, heuristic exponents for the two baselines.
PricingParams params_for(Algorithm algorithm, PricingParams base);

/// One sequential trial's mutable state plus the algorithm driving it.
class OnlineAlgorithm {
 public:
  OnlineAlgorithm(const Substrate& s, Algorithm algorithm, const PricingParams& base,
                  AdmissionOptions options = {});

  AdmissionOutcome offer(const ServiceRequest& req);

  [[nodiscard]] Algorithm algorithm() const { return algorithm_; }
  [[nodiscard]] const PricingParams& params() const { return params_; }
  [[nodiscard]] const CostState& costs() const { return costs_; }
  [[nodiscard]] const ResidualLedger& residuals() const { return residuals_; }
  [[nodiscard]] const Substrate& substrate() const { return *substrate_; }

 private:
  const Substrate* substrate_;
  Algorithm algorithm_;
  PricingParams params_;
  AdmissionOptions options_;
  CostState costs_;
  ResidualLedger residuals_;
};

}  // namespace nfv
