#pragma once

#include <span>

#include "nfv/admission.hpp"

namespace nfv::detail {

/// Routes one composition of `req` on the current prices and fills in the
/// price sums, conditions and feasibility. Never mutates state.
PassReport evaluate_pass(const ServiceRequest& req, const Substrate& s, const CostState& costs,
                         const ResidualLedger& residuals, const PricingParams& params,
                         bool full_chain, bool unit_weights);

/// Commits residuals and prices for an accepted pass.
AdmissionOutcome accept(const ServiceRequest& req, const Substrate& s, CostState& costs,
                        ResidualLedger& residuals, const PricingParams& params,
                        std::array<PassReport, 2> passes, std::size_t winner);

/// Whether some embedding of either composition meets both conditions.
std::optional<bool> any_admissible(const ServiceRequest& req, const Substrate& s,
                                   const CostState& costs, const PricingParams& params);

}  // namespace nfv::detail
