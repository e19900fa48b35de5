#include "nfv/request.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nfv {

bool ServiceRequest::has_best_effort() const {
  return std::any_of(chain.begin(), chain.end(), [](const ChainEntry& e) { return !e.mandatory; });
}

std::vector<NfTypeId> ServiceRequest::full_chain() const {
  std::vector<NfTypeId> out;
  out.reserve(chain.size());
  for (const auto& e : chain) out.push_back(e.type);
  return out;
}

std::vector<NfTypeId> ServiceRequest::mandatory_chain() const {
  std::vector<NfTypeId> out;
  for (const auto& e : chain)
    if (e.mandatory) out.push_back(e.type);
  return out;
}

void validate(const ServiceRequest& req) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("request " + std::to_string(req.id) + ": " + what);
  };
  if (req.destinations.empty()) fail("no destinations");
  if (std::find(req.destinations.begin(), req.destinations.end(), req.source) !=
      req.destinations.end())
    fail("source listed as destination");
  auto sorted = req.destinations;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail("duplicate destination");
  if (!(req.rate > 0.0)) fail("rate must be positive");
  if (req.proc < 0.0) fail("negative processing demand");
  if (req.eta_mandatory < 1.0 || req.eta_full < req.eta_mandatory)
    fail("incentives must satisfy 1 <= eta_m <= eta_b");
}

}  // namespace nfv
