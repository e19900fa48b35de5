#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nfv/pricing.hpp"
#include "nfv/request.hpp"
#include "nfv/routing.hpp"
#include "nfv/substrate.hpp"
#include "nfv/transform.hpp"

namespace nfv {

/// Every simple root -> terminal path (one terminal) or every minimal
/// out-tree whose leaves are terminals (several). Throws BudgetExceeded
/// once more than `limit` routes have been produced.
std::vector<Route> enumerate_routes(const MultilayerGraph& g, VertexId root,
                                    std::span<const VertexId> terminals, std::size_t limit);

/// Embeddings of `chain` from `source` to `destinations`, one per distinct
/// resource footprint, dropping footprints that use a superset of another's
/// resources. Empty when some NF has no host.
std::vector<Embedding> enumerate_embeddings(const Substrate& s, std::span<const NfTypeId> chain,
                                            NodeId source, std::span<const NodeId> destinations,
                                            std::size_t limit);

struct OracleLimits {
  std::size_t max_nodes{6};
  std::size_t max_requests{5};
  std::size_t max_chain{2};
  std::size_t max_destinations{2};
  std::size_t max_routes{200000};
};

struct OracleChoice {
  std::size_t request{0};  // index into the request span
  bool full_chain{true};
  Embedding embedding;
  Profit profit;
};

struct OracleResult {
  double profit{0.0};
  std::vector<OracleChoice> accepted;
};

/// Best total alpha*varrho + beta*rho over all subsets of `requests`, each
/// accepted request served by its full or mandatory-only chain on some
/// embedding, with all embeddings jointly within capacity. Throws
/// BudgetExceeded when the instance is larger than `limits`.
OracleResult offline_optimum(const Substrate& s, std::span<const ServiceRequest> requests,
                             const PricingParams& params, const OracleLimits& limits = {});

/// A small random substrate with a short request sequence, sized for the
/// offline optimum. L is (K + 1)(|N| - 1), an upper bound on route length.
struct TinyInstance {
  Substrate substrate;
  std::vector<ServiceRequest> requests;
  PricingParams params;
};

TinyInstance make_tiny_instance(std::uint64_t seed);

struct CompetitiveCheck {
  double optimum{0.0};
  double online{0.0};
  double factor{0.0};  // 2 max{phi_link, phi_node}
  std::size_t online_accepted{0};
  std::size_t capacity_violations{0};
  double closed_form_deviation{0.0};
  bool weak_duality{true};

  [[nodiscard]] bool bound_holds() const { return optimum <= factor * online + 1e-9; }
};

/// Runs the approximation algorithm online over the instance and compares
/// it with the offline optimum.
CompetitiveCheck check_competitive(const TinyInstance& inst);

}  // namespace nfv
