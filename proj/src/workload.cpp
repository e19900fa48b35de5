#include "nfv/workload.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "nfv/errors.hpp"

namespace nfv {

namespace {

nlohmann::json range_json(IntRange r) { return nlohmann::json::array({r.min, r.max}); }

IntRange range_from(const nlohmann::json& j, const char* key, IntRange fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number_integer()) return {v.get<int>(), v.get<int>()};
  return {v.at(0).get<int>(), v.at(1).get<int>()};
}

double eta_mandatory_for(const WorkloadSpec& spec, int length, int best_effort) {
  if (spec.eta_policy == EtaPolicy::constant) return spec.eta_constant;
  if (best_effort == 0) return length;
  return std::max(1, length - best_effort);
}

double eta_full_for(const WorkloadSpec& spec, int length) {
  if (spec.eta_policy == EtaPolicy::constant) return spec.eta_constant;
  return std::max(1, length);
}

}  // namespace

nlohmann::json to_json(const WorkloadSpec& spec) {
  nlohmann::json j{{"rate", range_json(spec.rate)},
                   {"proc_factor", spec.proc_factor},
                   {"chain_length", range_json(spec.chain_length)},
                   {"best_effort", range_json(spec.best_effort)},
                   {"destinations", range_json(spec.destinations)},
                   {"eta_policy", spec.eta_policy == EtaPolicy::counted ? "counted" : "constant"},
                   {"eta_constant", spec.eta_constant},
                   {"seed", spec.seed}};
  if (spec.rate_cap) j["rate_cap"] = *spec.rate_cap;
  if (spec.proc_cap) j["proc_cap"] = *spec.proc_cap;
  return j;
}

WorkloadSpec workload_spec_from_json(const nlohmann::json& j) {
  WorkloadSpec s;
  try {
    s.rate = range_from(j, "rate", s.rate);
    s.proc_factor = j.value("proc_factor", s.proc_factor);
    s.chain_length = range_from(j, "chain_length", s.chain_length);
    s.best_effort = range_from(j, "best_effort", s.best_effort);
    s.destinations = range_from(j, "destinations", s.destinations);
    const auto policy = j.value("eta_policy", std::string("constant"));
    if (policy == "counted")
      s.eta_policy = EtaPolicy::counted;
    else if (policy == "constant")
      s.eta_policy = EtaPolicy::constant;
    else
      throw ConfigError("unknown eta_policy '" + policy + "'");
    s.eta_constant = j.value("eta_constant", s.eta_constant);
    if (j.contains("rate_cap")) s.rate_cap = j.at("rate_cap").get<double>();
    if (j.contains("proc_cap")) s.proc_cap = j.at("proc_cap").get<double>();
    s.seed = j.value("seed", s.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("workload spec: ") + e.what());
  }
  return s;
}

RateSupport effective_rate_support(const WorkloadSpec& spec) {
  RateSupport r{spec.rate.min, spec.rate.max, false};
  if (r.min < 1 || r.max < r.min) throw InfeasibleSpec("rate range must satisfy 1 <= min <= max");
  auto cap_to = [&](double cap) {
    const double bound = std::floor(cap + 1e-9);
    if (bound < r.max) {
      r.max = static_cast<int>(std::max(bound, 0.0));
      r.truncated = true;
    }
  };
  if (spec.rate_cap) cap_to(*spec.rate_cap);
  if (spec.proc_cap && spec.proc_factor > 0.0) cap_to(*spec.proc_cap / spec.proc_factor);
  if (r.max < r.min) throw InfeasibleSpec("rate caps leave an empty rate support");
  return r;
}

EtaBounds eta_bounds(const WorkloadSpec& spec) {
  if (spec.eta_policy == EtaPolicy::constant) return {spec.eta_constant, spec.eta_constant};
  EtaBounds b{1e300, 0.0};
  for (int len = spec.chain_length.min; len <= spec.chain_length.max; ++len) {
    for (int be = std::min(spec.best_effort.min, len); be <= std::min(spec.best_effort.max, len);
         ++be) {
      b.min = std::min(b.min, eta_mandatory_for(spec, len, be));
      b.max = std::max(b.max, eta_full_for(spec, len));
    }
  }
  b.min = std::max(b.min, 1.0);
  b.max = std::max(b.max, b.min);
  return b;
}

WorkloadStream::WorkloadStream(WorkloadSpec spec, const Substrate& s)
    : spec_(spec), substrate_(&s), rates_(effective_rate_support(spec)), rng_(spec.seed) {
  if (s.node_count() < 2) throw InfeasibleSpec("substrate needs at least two nodes");
  if (spec_.chain_length.min < 0 || spec_.chain_length.max < spec_.chain_length.min)
    throw InfeasibleSpec("bad chain length range");
  if (spec_.destinations.min < 1 || spec_.destinations.max < spec_.destinations.min)
    throw InfeasibleSpec("bad destination count range");
  if (spec_.best_effort.min < 0 || spec_.best_effort.max < spec_.best_effort.min)
    throw InfeasibleSpec("bad best-effort range");
  for (const auto& n : s.nodes()) all_nodes_.push_back(n.id);
  for (std::size_t t = 0; t < s.nf_type_count(); ++t) nf_types_.push_back(NfTypeId(t));
  if (spec_.chain_length.max > 0) {
    if (nf_types_.empty()) throw InfeasibleSpec("chains requested but the NF catalog is empty");
    for (NfTypeId t : nf_types_)
      if (s.hosting_nodes(t).empty())
        throw InfeasibleSpec("NF type '" + s.nf_catalog()[t.index()] + "' has no hosting node");
  }
}

ServiceRequest WorkloadStream::next() {
  ServiceRequest r;
  r.id = issued_++;
  r.rate = static_cast<double>(rng_.uniform_int(rates_.min, rates_.max));
  r.proc = spec_.proc_factor * r.rate;

  const auto dest_count = static_cast<std::size_t>(
      std::min<std::int64_t>(rng_.uniform_int(spec_.destinations.min, spec_.destinations.max),
                             static_cast<std::int64_t>(all_nodes_.size()) - 1));
  const auto ends = rng_.sample<NodeId>(all_nodes_, dest_count + 1);
  r.source = ends.front();
  r.destinations.assign(ends.begin() + 1, ends.end());

  const int length = static_cast<int>(rng_.uniform_int(spec_.chain_length.min, spec_.chain_length.max));
  std::vector<NfTypeId> types;
  if (static_cast<std::size_t>(length) <= nf_types_.size()) {
    types = rng_.sample<NfTypeId>(nf_types_, static_cast<std::size_t>(length));
  } else {
    for (int i = 0; i < length; ++i) types.push_back(nf_types_[rng_.index(nf_types_.size())]);
  }
  const int be = static_cast<int>(rng_.uniform_int(std::min(spec_.best_effort.min, length),
                                                   std::min(spec_.best_effort.max, length)));
  std::vector<std::size_t> positions(static_cast<std::size_t>(length));
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
  const auto optional = rng_.sample<std::size_t>(positions, static_cast<std::size_t>(be));
  for (NfTypeId t : types) r.chain.push_back(ChainEntry{t, true});
  for (std::size_t p : optional) r.chain[p].mandatory = false;

  r.eta_full = eta_full_for(spec_, length);
  r.eta_mandatory = eta_mandatory_for(spec_, length, be);
  if (be == 0) r.eta_mandatory = r.eta_full;
  return r;
}

std::vector<ServiceRequest> generate(const WorkloadSpec& spec, const Substrate& s,
                                     std::size_t count) {
  WorkloadStream stream(spec, s);
  std::vector<ServiceRequest> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

nlohmann::json to_json(const ServiceRequest& req) {
  nlohmann::json dest = nlohmann::json::array();
  for (NodeId d : req.destinations) dest.push_back(d.value());
  nlohmann::json chain = nlohmann::json::array();
  for (const auto& e : req.chain) chain.push_back({{"nf_type", e.type.value()}, {"mandatory", e.mandatory}});
  return {{"id", req.id},          {"source", req.source.value()},
          {"destinations", dest},  {"chain", chain},
          {"rate", req.rate},      {"per_nf_proc", req.proc},
          {"eta_m", req.eta_mandatory}, {"eta_b", req.eta_full}};
}

ServiceRequest request_from_json(const nlohmann::json& j) {
  ServiceRequest r;
  try {
    r.id = j.at("id").get<std::size_t>();
    r.source = NodeId(j.at("source").get<int>());
    for (const auto& d : j.at("destinations")) r.destinations.push_back(NodeId(d.get<int>()));
    for (const auto& e : j.at("chain"))
      r.chain.push_back(ChainEntry{NfTypeId(e.at("nf_type").get<int>()), e.value("mandatory", true)});
    r.rate = j.at("rate").get<double>();
    r.proc = j.value("per_nf_proc", r.rate);
    r.eta_mandatory = j.value("eta_m", 1.0);
    r.eta_full = j.value("eta_b", r.eta_mandatory);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("request JSON: ") + e.what());
  }
  return r;
}

void write_jsonl(std::ostream& out, const std::vector<ServiceRequest>& requests) {
  for (const auto& r : requests) out << to_json(r).dump() << '\n';
}

std::vector<ServiceRequest> read_jsonl(std::istream& in) {
  std::vector<ServiceRequest> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(request_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("workload line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace nfv
