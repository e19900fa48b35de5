#include "nfv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "nfv/errors.hpp"

namespace nfv {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kTopologyStream = 11;
constexpr std::uint64_t kWorkloadStream = 23;

fs::path resolve(const fs::path& p, const fs::path& base) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int parse_int(const std::string& axis, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("axis " + axis + ": '" + v + "' is not an integer");
}

double parse_double(const std::string& axis, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("axis " + axis + ": '" + v + "' is not a number");
}

void require_known(const nlohmann::json& j, std::initializer_list<const char*> keys,
                   const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* s) { return k == s; });
    if (!known) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

}  // namespace

nlohmann::json to_json(const TopologySpec& t) {
  nlohmann::json j{{"kind", t.kind},
                   {"capacity", to_json(t.capacity)},
                   {"hosting", to_json(t.hosting)}};
  if (t.kind == "linear" || t.kind == "ba") j["n"] = t.n;
  if (t.kind == "ba") j["m"] = t.m;
  if (!t.path.empty()) j["path"] = t.path.string();
  return j;
}

TopologySpec topology_spec_from_json(const nlohmann::json& j, const fs::path& base) {
  require_known(j, {"kind", "n", "m", "path", "capacity", "hosting"}, "topology");
  TopologySpec t;
  try {
    t.kind = j.value("kind", t.kind);
    t.n = j.value("n", t.n);
    t.m = j.value("m", t.m);
    if (j.contains("path")) t.path = resolve(j.at("path").get<std::string>(), base);
    if (j.contains("capacity")) t.capacity = capacity_spec_from_json(j.at("capacity"));
    if (j.contains("hosting")) t.hosting = hosting_spec_from_json(j.at("hosting"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("topology: ") + e.what());
  }
  if (t.kind != "linear" && t.kind != "ba" && t.kind != "graphml" && t.kind != "json")
    throw ConfigError("topology: unknown kind '" + t.kind + "'");
  if ((t.kind == "graphml" || t.kind == "json") && t.path.empty())
    throw ConfigError("topology: kind '" + t.kind + "' needs a path");
  return t;
}

Substrate build_topology(const TopologySpec& t, std::uint64_t seed) {
  const std::uint64_t s = Rng::derive(seed, kTopologyStream);
  if (t.kind == "linear") return linear(t.n, t.capacity, t.hosting, s);
  if (t.kind == "ba") return barabasi_albert(t.n, t.m, t.capacity, t.hosting, s);
  if (t.kind == "graphml") return load_graphml(t.path, t.capacity, t.hosting, s);
  std::ifstream in(t.path);
  if (!in) throw ConfigError("cannot open substrate file " + t.path.string());
  try {
    return substrate_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(t.path.string() + ": " + e.what());
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j, const fs::path& base) {
  require_known(j,
                {"name", "topology", "workload", "algorithms", "algorithm", "pricing", "seeds",
                 "termination", "greedy_weights", "workload_file", "sweep", "output_dir",
                 "threads"},
                "config");
  ExperimentConfig c;
  c.base_dir = base;
  try {
    c.name = j.value("name", c.name);
    if (j.contains("topology")) c.topology = topology_spec_from_json(j.at("topology"), base);
    if (j.contains("workload")) c.workload = workload_spec_from_json(j.at("workload"));
    if (j.contains("algorithm")) {
      c.algorithms = {algorithm_from_string(j.at("algorithm").get<std::string>())};
    } else if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& a : j.at("algorithms")) c.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
    }
    if (j.contains("pricing")) {
      const auto& p = j.at("pricing");
      require_known(p, {"alpha", "beta", "k", "L", "K", "D_max", "eta_max", "eta_min"}, "pricing");
      c.pricing.alpha = p.value("alpha", c.pricing.alpha);
      c.pricing.beta = p.value("beta", c.pricing.beta);
      c.pricing.k = p.value("k", c.pricing.k);
      if (p.contains("L") && !(p["L"].is_string() && p["L"] == "auto")) c.pricing.L = p["L"].get<int>();
      if (p.contains("K")) c.pricing.K = p["K"].get<int>();
      if (p.contains("D_max")) c.pricing.D_max = p["D_max"].get<int>();
      if (p.contains("eta_max")) c.pricing.eta_max = p["eta_max"].get<double>();
      if (p.contains("eta_min")) c.pricing.eta_min = p["eta_min"].get<double>();
    }
    if (j.contains("seeds")) {
      const auto& s = j.at("seeds");
      c.seeds.clear();
      if (s.is_array()) {
        for (const auto& v : s) c.seeds.push_back(v.get<std::uint64_t>());
      } else {
        const auto first = s.value("first", std::uint64_t{1});
        const auto count = s.at("count").get<std::uint64_t>();
        for (std::uint64_t i = 0; i < count; ++i) c.seeds.push_back(first + i);
      }
    }
    if (j.contains("termination")) {
      const auto& t = j.at("termination");
      require_known(t, {"window", "max_requests"}, "termination");
      c.termination.window = t.value("window", c.termination.window);
      c.termination.max_requests = t.value("max_requests", c.termination.max_requests);
    }
    if (j.contains("greedy_weights")) {
      const auto w = j.at("greedy_weights").get<std::string>();
      if (w == "unit")
        c.greedy_weights = GreedyWeights::unit;
      else if (w == "exponential")
        c.greedy_weights = GreedyWeights::exponential;
      else
        throw ConfigError("unknown greedy_weights '" + w + "'");
    }
    if (j.contains("workload_file")) c.workload_file = resolve(j.at("workload_file").get<std::string>(), base);
    if (j.contains("sweep")) {
      c.sweep_axis = j.at("sweep").at("axis").get<std::string>();
      for (const auto& v : j.at("sweep").at("values"))
        c.sweep_values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    if (j.contains("output_dir")) c.output_dir = resolve(j.at("output_dir").get<std::string>(), base);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.seeds.empty()) throw ConfigError("config: seeds must not be empty");
  if (c.algorithms.empty()) throw ConfigError("config: no algorithm selected");
  if (c.termination.window < 1 || c.termination.max_requests < 1)
    throw ConfigError("config: termination window and budget must be positive");
  if (c.threads < 1) throw ConfigError("config: threads must be >= 1");
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json algos = nlohmann::json::array();
  for (Algorithm a : c.algorithms) algos.push_back(to_string(a));
  nlohmann::json pricing{{"alpha", c.pricing.alpha}, {"beta", c.pricing.beta}, {"k", c.pricing.k}};
  pricing["L"] = c.pricing.L ? nlohmann::json(*c.pricing.L) : nlohmann::json("auto");
  if (c.pricing.K) pricing["K"] = *c.pricing.K;
  if (c.pricing.D_max) pricing["D_max"] = *c.pricing.D_max;
  if (c.pricing.eta_max) pricing["eta_max"] = *c.pricing.eta_max;
  if (c.pricing.eta_min) pricing["eta_min"] = *c.pricing.eta_min;
  nlohmann::json j{{"name", c.name},
                   {"topology", to_json(c.topology)},
                   {"workload", to_json(c.workload)},
                   {"algorithms", algos},
                   {"pricing", pricing},
                   {"seeds", c.seeds},
                   {"termination",
                    {{"window", c.termination.window}, {"max_requests", c.termination.max_requests}}},
                   {"greedy_weights", c.greedy_weights == GreedyWeights::unit ? "unit" : "exponential"},
                   {"output_dir", c.output_dir.string()},
                   {"threads", c.threads}};
  if (c.workload_file) j["workload_file"] = c.workload_file->string();
  if (!c.sweep_axis.empty()) j["sweep"] = {{"axis", c.sweep_axis}, {"values", c.sweep_values}};
  return j;
}

PricingParams resolve_pricing(const ExperimentConfig& c, const Substrate& s, Algorithm algorithm) {
  PricingParams p;
  p.alpha = c.pricing.alpha;
  p.beta = c.pricing.beta;
  p.k = c.pricing.k;
  p.max_route_links = c.pricing.L ? *c.pricing.L : std::max(1, auto_L(s));
  p.max_chain_length = c.pricing.K ? *c.pricing.K : std::max(1, c.workload.chain_length.max);
  p.max_destinations = c.pricing.D_max ? *c.pricing.D_max : std::max(1, c.workload.destinations.max);
  const EtaBounds eta = eta_bounds(c.workload);
  p.eta_max = c.pricing.eta_max.value_or(eta.max);
  p.eta_min = c.pricing.eta_min.value_or(eta.min);
  p = params_for(algorithm, p);
  p.validate();
  return p;
}

WorkloadSpec trial_workload(const ExperimentConfig& c, const Substrate& s, std::uint64_t seed) {
  WorkloadSpec w = c.workload;
  w.seed = Rng::derive(Rng::derive(seed, kWorkloadStream), c.workload.seed);
  const PricingParams approx = resolve_pricing(c, s, Algorithm::approximation);
  const double rate_cap = approx.rate_cap(s);
  w.rate_cap = w.rate_cap ? std::min(*w.rate_cap, rate_cap) : rate_cap;
  if (w.chain_length.max > 0 && s.min_node_capacity() > 0.0) {
    const double proc_cap = approx.proc_cap(s);
    w.proc_cap = w.proc_cap ? std::min(*w.proc_cap, proc_cap) : proc_cap;
  }
  return w;
}

nlohmann::json to_json(const TrialResult& r) {
  return {{"algorithm", to_string(r.algorithm)},
          {"seed", r.seed},
          {"offered", r.offered},
          {"accepted_full", r.accepted_full},
          {"accepted_mand", r.accepted_mandatory},
          {"rejected", r.rejected},
          {"reject_reasons", r.reject_reasons},
          {"stop_reason", r.stop_reason},
          {"profit", r.profit},
          {"transmission_profit", r.transmission_profit},
          {"processing_profit", r.processing_profit},
          {"carried_rate", r.carried_rate},
          {"mean_link_util", r.mean_link_util},
          {"max_link_util", r.max_link_util},
          {"mean_node_util", r.mean_node_util},
          {"max_node_util", r.max_node_util},
          {"J", r.J},
          {"D", r.D},
          {"phi_link", r.phi_link},
          {"phi_node", r.phi_node},
          {"L", r.L},
          {"K", r.K},
          {"rate_support",
           {{"min", r.rate_support.min}, {"max", r.rate_support.max}, {"truncated", r.rate_support.truncated}}},
          {"max_request_share", r.max_request_share},
          {"capacity_violations", r.capacity_violations},
          {"step_checks", r.step_checks},
          {"step_violations", r.step_violations},
          {"step_out_of_model", r.step_out_of_model},
          {"step_violations_out_of_model", r.step_violations_out_of_model},
          {"max_step_ratio", r.max_step_ratio},
          {"weak_duality_violations", r.weak_duality_violations},
          {"closed_form_deviation", r.closed_form_deviation}};
}

TrialResult run_trial(const ExperimentConfig& c, Algorithm algorithm, std::uint64_t seed,
                      const TraceSink& sink) {
  const Substrate s = build_topology(c.topology, seed);
  const PricingParams params = resolve_pricing(c, s, algorithm);
  OnlineAlgorithm alg(s, algorithm, params, AdmissionOptions{false, c.greedy_weights});

  TrialResult r;
  r.algorithm = algorithm;
  r.seed = seed;
  r.phi_link = params.link_exponent();
  r.phi_node = params.node_exponent();
  r.L = params.max_route_links;
  r.K = params.max_chain_length;

  std::optional<WorkloadStream> stream;
  std::vector<ServiceRequest> replay;
  if (c.workload_file) {
    std::ifstream in(*c.workload_file);
    if (!in) throw ConfigError("cannot open workload file " + c.workload_file->string());
    replay = read_jsonl(in);
    for (const auto& req : replay) {
      r.rate_support.min = std::min(r.rate_support.min, static_cast<int>(req.rate));
      r.rate_support.max = std::max(r.rate_support.max, static_cast<int>(std::ceil(req.rate)));
    }
  } else {
    stream.emplace(trial_workload(c, s, seed), s);
    r.rate_support = stream->rate_support();
  }

  const double factor = params.competitive_factor();
  int run = 0;
  std::size_t next_replay = 0;
  for (;;) {
    if (!stream && next_replay == replay.size()) {
      r.stop_reason = "replay_end";
      break;
    }
    if (r.offered >= c.termination.max_requests) {
      r.stop_reason = "budget";
      break;
    }
    const ServiceRequest req = stream ? stream->next() : replay[next_replay++];
    ++r.offered;

    AdmissionOutcome out;
    try {
      out = alg.offer(req);
    } catch (const CapacityViolation&) {
      ++r.capacity_violations;
      out = AdmissionOutcome{};
      ++r.reject_reasons["capacity_violation"];
    }

    if (out.accepted()) {
      run = 0;
      if (out.decision == Decision::accepted_full)
        ++r.accepted_full;
      else
        ++r.accepted_mandatory;
      r.profit += out.profit.total;
      r.transmission_profit += out.profit.transmission;
      r.processing_profit += out.profit.processing;
      r.carried_rate += req.rate * static_cast<double>(out.embedding->links.size());
      for (LinkId l : out.embedding->links)
        r.max_request_share = std::max(r.max_request_share, req.rate / s.link(l).capacity);
      for (const auto& p : out.embedding->placements)
        r.max_request_share = std::max(r.max_request_share, req.proc / s.node(p.node).capacity);

      const StepRecord& step = *out.step;
      const bool in_model =
          out.embedding->links.size() <= static_cast<std::size_t>(params.max_route_links) &&
          out.embedding->placements.size() <= static_cast<std::size_t>(params.max_chain_length);
      const double bound = factor * step.delta_dual;
      const bool violated = step.delta_primal > bound * (1.0 + 1e-9) + 1e-9;
      ++r.step_checks;
      if (!in_model) ++r.step_out_of_model;
      if (violated) {
        ++r.step_violations;
        if (!in_model) ++r.step_violations_out_of_model;
      }
      if (bound > 0.0) r.max_step_ratio = std::max(r.max_step_ratio, step.delta_primal / bound);
      const double J = alg.costs().primal();
      if (alg.costs().dual() > J + 1e-9 * std::max(1.0, J)) ++r.weak_duality_violations;
    } else {
      ++run;
      ++r.rejected;
      if (out.reason != RejectReason::none) ++r.reject_reasons[std::string(to_string(out.reason))];
    }
    if (sink) sink(req, out);
    if (run >= c.termination.window) {
      r.stop_reason = "window";
      break;
    }
  }

  double link_sum = 0.0;
  for (const auto& l : s.links()) {
    const double u = link_utilization(alg.residuals(), s, l.id);
    link_sum += u;
    r.max_link_util = std::max(r.max_link_util, u);
  }
  if (s.link_count() > 0) r.mean_link_util = link_sum / static_cast<double>(s.link_count());
  double node_sum = 0.0;
  std::size_t nfv_nodes = 0;
  for (const auto& n : s.nodes()) {
    if (n.capacity <= 0.0) continue;
    const double u = node_utilization(alg.residuals(), s, n.id);
    node_sum += u;
    ++nfv_nodes;
    r.max_node_util = std::max(r.max_node_util, u);
  }
  if (nfv_nodes > 0) r.mean_node_util = node_sum / static_cast<double>(nfv_nodes);
  r.J = alg.costs().primal();
  r.D = alg.costs().dual();
  r.closed_form_deviation = closed_form_deviation(alg.costs(), alg.residuals(), s, params);
  return r;
}

ExperimentConfig apply_axis(ExperimentConfig c, const std::string& axis, const std::string& value) {
  if (axis == "n") {
    c.topology.n = parse_int(axis, value);
  } else if (axis == "m") {
    c.topology.m = parse_int(axis, value);
  } else if (axis == "D_max") {
    const int d = parse_int(axis, value);
    c.workload.destinations.max = d;
    c.workload.destinations.min = std::min(c.workload.destinations.min, d);
    c.pricing.D_max = d;
  } else if (axis == "k") {
    c.pricing.k = parse_double(axis, value);
  } else if (axis == "L") {
    if (value == "auto")
      c.pricing.L.reset();
    else
      c.pricing.L = parse_int(axis, value);
  } else if (axis == "K") {
    c.pricing.K = parse_int(axis, value);
  } else if (axis == "chain_length") {
    const int len = parse_int(axis, value);
    c.workload.chain_length = {len, len};
  } else if (axis == "eta_policy") {
    if (value == "counted") {
      c.workload.eta_policy = EtaPolicy::counted;
    } else if (value == "constant" || value == "unity") {
      c.workload.eta_policy = EtaPolicy::constant;
      if (value == "unity") c.workload.eta_constant = 1.0;
    } else {
      throw ConfigError("axis eta_policy: unknown value '" + value + "'");
    }
    c.pricing.eta_max.reset();
    c.pricing.eta_min.reset();
  } else if (axis == "topology") {
    c.topology.kind = "graphml";
    c.topology.path = resolve(value, c.base_dir);
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "'");
  }
  return c;
}

SweepTable run_sweep(const ExperimentConfig& c, const std::string& axis,
                     const std::vector<std::string>& values) {
  SweepTable table;
  table.axis = axis;
  table.points = values;

  struct Job {
    std::size_t point;
    Algorithm algorithm;
    std::uint64_t seed;
  };
  std::vector<ExperimentConfig> configs;
  for (const auto& v : values) configs.push_back(apply_axis(c, axis, v));
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < values.size(); ++p)
    for (Algorithm a : c.algorithms)
      for (std::uint64_t seed : c.seeds) jobs.push_back({p, a, seed});

  std::vector<TrialResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_trial(configs[jobs[i].point], jobs[i].algorithm, jobs[i].seed);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, c.threads));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < jobs.size(); ++i)
    table.rows.push_back({values[jobs[i].point], results[i], 0.0});
  for (auto& row : table.rows) {
    double best = 0.0;
    for (const auto& other : table.rows)
      if (other.point == row.point && other.result.seed == row.result.seed)
        best = std::max(best, other.result.profit);
    row.profit_norm = best > 0.0 ? row.result.profit / best : 0.0;
  }
  return table;
}

void write_csv(std::ostream& out, const SweepTable& table) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& row : table.rows) {
    const auto& r = row.result;
    out << row.point << ',' << to_string(r.algorithm) << ',' << r.seed << ',' << r.accepted_full
        << ',' << r.accepted_mandatory << ',' << r.rejected << ',' << format_number(r.profit) << ','
        << format_number(row.profit_norm) << ',' << format_number(r.mean_link_util) << ','
        << format_number(r.mean_node_util) << ',' << format_number(r.J) << ','
        << format_number(r.D) << '\n';
  }
}

std::vector<PointSummary> summarize(const SweepTable& table) {
  std::vector<PointSummary> out;
  std::vector<Algorithm> algos;
  for (const auto& row : table.rows)
    if (std::find(algos.begin(), algos.end(), row.result.algorithm) == algos.end())
      algos.push_back(row.result.algorithm);
  for (const auto& point : table.points) {
    for (Algorithm a : algos) {
      std::vector<double> profit;
      std::vector<double> norm;
      for (const auto& row : table.rows) {
        if (row.point != point || row.result.algorithm != a) continue;
        profit.push_back(row.result.profit);
        norm.push_back(row.profit_norm);
      }
      if (profit.empty()) continue;
      auto stats = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
        return std::pair{mean, sd};
      };
      const auto [mp, sp] = stats(profit);
      const auto [mn, sn] = stats(norm);
      out.push_back({point, a, mp, sp, mn, sn, profit.size()});
    }
  }
  return out;
}

nlohmann::json sweep_metadata(const ExperimentConfig& c, const SweepTable& table) {
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& s : summarize(table))
    summary.push_back({{"point", s.point},
                       {"algorithm", to_string(s.algorithm)},
                       {"mean_profit", s.mean_profit},
                       {"stddev_profit", s.stddev_profit},
                       {"mean_profit_norm", s.mean_norm},
                       {"stddev_profit_norm", s.stddev_norm},
                       {"trials", s.trials}});
  bool truncated = false;
  std::set<std::string> stops;
  for (const auto& row : table.rows) {
    truncated = truncated || row.result.rate_support.truncated;
    stops.insert(row.result.stop_reason);
  }
  return {{"name", c.name},
          {"axis", table.axis},
          {"values", table.points},
          {"columns", csv_columns()},
          {"normalization",
           "profit_norm = profit / max profit over algorithms at the same axis value and seed"},
          {"stopping_policy",
           {{"window", c.termination.window},
            {"max_requests", c.termination.max_requests},
            {"observed", stops}}},
          {"rate_support_truncated", truncated},
          {"rng", "mt19937_64 with explicit integer sampling"},
          {"config", to_json(c)},
          {"summary", summary},
          {"version", "1.0.0"}};
}

}  // namespace nfv
