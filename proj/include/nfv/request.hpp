#pragma once

#include <cstddef>
#include <vector>

#include "nfv/ids.hpp"

namespace nfv {

struct ChainEntry {
  NfTypeId type;
  bool mandatory{true};

  friend bool operator==(const ChainEntry&, const ChainEntry&) = default;
};

/// One service request: a flow from `source` to every node of
/// `destinations` that must traverse `chain` in order.
struct ServiceRequest {
  std::size_t id{0};
  NodeId source;
  std::vector<NodeId> destinations;
  std::vector<ChainEntry> chain;
  double rate{0.0};            // packets/s on every traversed link
  double proc{0.0};            // packets/s consumed per NF instance
  double eta_mandatory{1.0};   // incentive when best-effort NFs are dropped
  double eta_full{1.0};        // incentive when the whole chain is served

  [[nodiscard]] bool multicast() const { return destinations.size() > 1; }
  [[nodiscard]] bool has_best_effort() const;
  [[nodiscard]] std::vector<NfTypeId> full_chain() const;
  [[nodiscard]] std::vector<NfTypeId> mandatory_chain() const;

  friend bool operator==(const ServiceRequest&, const ServiceRequest&) = default;
};

/// Throws std::invalid_argument naming the first violated invariant.
void validate(const ServiceRequest& req);

}  // namespace nfv
