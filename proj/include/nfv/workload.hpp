#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "json.hpp"
#include "nfv/random.hpp"
#include "nfv/request.hpp"
#include "nfv/substrate.hpp"

namespace nfv {

struct IntRange {
  int min{0};
  int max{0};
};

enum class EtaPolicy {
  constant,  // eta_m = eta_b = eta_constant
  counted,   // eta_b = |V|, eta_m = |V_m| (at least 1)
};

/// Distributions of a random request stream. Every draw is uniform over the
/// stated integer range.
struct WorkloadSpec {
  IntRange rate{1, 20};
  double proc_factor{1.0};  // C(f) = proc_factor * d
  IntRange chain_length{3, 3};
  IntRange best_effort{0, 0};  // clamped to the drawn chain length
  IntRange destinations{1, 1};
  EtaPolicy eta_policy{EtaPolicy::constant};
  double eta_constant{1.0};
  /// Admission caps of the approximation variant; the rate support is
  /// truncated so generated requests never exceed them.
  std::optional<double> rate_cap;
  std::optional<double> proc_cap;
  std::uint64_t seed{1};
};

nlohmann::json to_json(const WorkloadSpec& spec);
WorkloadSpec workload_spec_from_json(const nlohmann::json& j);

/// Rate support after applying the caps. Throws InfeasibleSpec when empty.
struct RateSupport {
  int min{1};
  int max{1};
  bool truncated{false};
};
RateSupport effective_rate_support(const WorkloadSpec& spec);

/// Smallest and largest incentive over the spec's support.
struct EtaBounds {
  double min{1.0};
  double max{1.0};
};
EtaBounds eta_bounds(const WorkloadSpec& spec);

/// Deterministic, unbounded request source.
class WorkloadStream {
 public:
  /// Throws InfeasibleSpec if the spec cannot be met on `s`.
  WorkloadStream(WorkloadSpec spec, const Substrate& s);

  ServiceRequest next();
  [[nodiscard]] const RateSupport& rate_support() const { return rates_; }

 private:
  WorkloadSpec spec_;
  const Substrate* substrate_;
  RateSupport rates_;
  std::vector<NodeId> all_nodes_;
  std::vector<NfTypeId> nf_types_;
  Rng rng_;
  std::size_t issued_{0};
};

std::vector<ServiceRequest> generate(const WorkloadSpec& spec, const Substrate& s,
                                     std::size_t count);

nlohmann::json to_json(const ServiceRequest& req);
ServiceRequest request_from_json(const nlohmann::json& j);
void write_jsonl(std::ostream& out, const std::vector<ServiceRequest>& requests);
std::vector<ServiceRequest> read_jsonl(std::istream& in);

}  // namespace nfv
