#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nfv/admission.hpp"
#include "nfv/baselines.hpp"
#include "nfv/topologies.hpp"
#include "nfv/workload.hpp"

namespace nfv {

struct TopologySpec {
  std::string kind{"linear"};  // linear | ba | graphml | json
  int n{8};
  int m{2};
  std::filesystem::path path;  // graphml or substrate JSON
  CapacitySpec capacity;
  HostingSpec hosting;
};

nlohmann::json to_json(const TopologySpec& t);
TopologySpec topology_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base = {});

/// Builds the substrate for one trial. Randomized kinds draw capacities and
/// hosting from `seed`; a substrate JSON file is used as is.
Substrate build_topology(const TopologySpec& t, std::uint64_t seed);

/// Pricing constants as configured; unset fields are derived per substrate
/// (L from the hop diameter, K and D_max from the workload ranges, eta
/// bounds from the eta policy).
struct PricingConfig {
  double alpha{1.0};
  double beta{1.0};
  double k{0.8};
  std::optional<int> L;  // unset means automatic
  std::optional<int> K;
  std::optional<int> D_max;
  std::optional<double> eta_max;
  std::optional<double> eta_min;
};

struct Termination {
  int window{200};            // consecutive rejections
  std::size_t max_requests{50000};
};

struct ExperimentConfig {
  std::string name{"experiment"};
  TopologySpec topology;
  WorkloadSpec workload;
  std::vector<Algorithm> algorithms{Algorithm::approximation, Algorithm::heuristic,
                                    Algorithm::greedy};
  PricingConfig pricing;
  std::vector<std::uint64_t> seeds{1};
  Termination termination;
  GreedyWeights greedy_weights{GreedyWeights::exponential};
  std::optional<std::filesystem::path> workload_file;  // replay instead of generating
  std::string sweep_axis;
  std::vector<std::string> sweep_values;
  std::filesystem::path output_dir{"results"};
  std::filesystem::path base_dir;  // relative paths in sweep values resolve here
  int threads{1};
};

/// Throws ConfigError on unknown or inconsistent fields. Relative paths are
/// resolved against `base`.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base = {});
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& c);

/// Pricing for `algorithm` on `s`.
PricingParams resolve_pricing(const ExperimentConfig& c, const Substrate& s, Algorithm algorithm);

/// Workload of one trial: seed derived from the trial seed and the rate
/// support truncated to the approximation caps, identical for every
/// algorithm so runs with the same seed are paired.
WorkloadSpec trial_workload(const ExperimentConfig& c, const Substrate& s, std::uint64_t seed);

struct TrialResult {
  Algorithm algorithm{Algorithm::approximation};
  std::uint64_t seed{0};
  std::size_t offered{0};
  std::size_t accepted_full{0};
  std::size_t accepted_mandatory{0};
  std::size_t rejected{0};
  std::map<std::string, std::size_t> reject_reasons;
  std::string stop_reason;  // window | budget | replay_end
  double profit{0.0};
  double transmission_profit{0.0};  // sum of varrho over acceptances
  double processing_profit{0.0};    // sum of rho over acceptances
  double carried_rate{0.0};         // sum of d * link traversals
  double mean_link_util{0.0};
  double max_link_util{0.0};
  double mean_node_util{0.0};  // over nodes with capacity
  double max_node_util{0.0};
  double J{0.0};
  double D{0.0};
  double phi_link{0.0};
  double phi_node{0.0};
  int L{0};
  int K{0};
  RateSupport rate_support;
  double max_request_share{0.0};  // largest d / B(l) over accepted traversals
  std::size_t capacity_violations{0};
  std::size_t step_checks{0};
  std::size_t step_violations{0};
  std::size_t step_out_of_model{0};         // acceptances with route > L links or > K NFs
  std::size_t step_violations_out_of_model{0};
  double max_step_ratio{0.0};  // max of dJ / (competitive factor * dD)
  std::size_t weak_duality_violations{0};
  double closed_form_deviation{0.0};
};

nlohmann::json to_json(const TrialResult& r);

using TraceSink = std::function<void(const ServiceRequest&, const AdmissionOutcome&)>;

/// Offers requests until the window of consecutive rejections or the
/// request budget is reached, or the replay file ends.
TrialResult run_trial(const ExperimentConfig& c, Algorithm algorithm, std::uint64_t seed,
                      const TraceSink& sink = {});

struct SweepRow {
  std::string point;
  TrialResult result;
  double profit_norm{0.0};
};

struct SweepTable {
  std::string axis;
  std::vector<std::string> points;
  std::vector<SweepRow> rows;
};

/// Applies one axis value to a copy of `c`. Axes: n, m, D_max, k, L, K,
/// eta_policy, chain_length, topology (a graphml path).
ExperimentConfig apply_axis(ExperimentConfig c, const std::string& axis, const std::string& value);

/// Runs every (point, algorithm, seed) trial. profit_norm divides each
/// profit by the largest profit among the algorithms at the same point and
/// seed.
SweepTable run_sweep(const ExperimentConfig& c, const std::string& axis,
                     const std::vector<std::string>& values);

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "axis",   "algorithm",   "seed",           "accepted_full",  "accepted_mand", "rejected",
      "profit", "profit_norm", "mean_link_util", "mean_node_util", "J",             "D"};
  return cols;
}

void write_csv(std::ostream& out, const SweepTable& table);
/// Run metadata: config, normalization, stopping policy, per-point means.
nlohmann::json sweep_metadata(const ExperimentConfig& c, const SweepTable& table);

struct PointSummary {
  std::string point;
  Algorithm algorithm;
  double mean_profit{0.0};
  double stddev_profit{0.0};
  double mean_norm{0.0};
  double stddev_norm{0.0};
  std::size_t trials{0};
};
std::vector<PointSummary> summarize(const SweepTable& table);

}  // namespace nfv
