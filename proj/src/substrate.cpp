#include "nfv/substrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "nfv/errors.hpp"

namespace nfv {

namespace {

template <class Id>
std::vector<std::pair<Id, int>> count_multiplicity(std::vector<Id> ids) {
  std::sort(ids.begin(), ids.end());
  std::vector<std::pair<Id, int>> out;
  for (Id id : ids) {
    if (!out.empty() && out.back().first == id)
      ++out.back().second;
    else
      out.emplace_back(id, 1);
  }
  return out;
}

std::vector<NodeId> placement_nodes(const Embedding& emb) {
  std::vector<NodeId> v;
  v.reserve(emb.placements.size());
  for (const auto& p : emb.placements) v.push_back(p.node);
  return v;
}

}  // namespace

Substrate::Substrate(std::vector<std::string> nf_catalog, std::vector<Node> nodes,
                     std::vector<Link> links)
    : catalog_(std::move(nf_catalog)), nodes_(std::move(nodes)), links_(std::move(links)) {
  const auto n = nodes_.size();
  hosting_.assign(catalog_.size(), {});
  for (std::size_t i = 0; i < n; ++i) {
    auto& node = nodes_[i];
    if (node.id.index() != i) throw SubstrateError("node ids must be dense and ordered");
    if (!(node.capacity >= 0.0)) throw SubstrateError("negative node capacity");
    std::sort(node.hostable.begin(), node.hostable.end());
    node.hostable.erase(std::unique(node.hostable.begin(), node.hostable.end()),
                        node.hostable.end());
    if (node.capacity == 0.0 && !node.hostable.empty())
      throw SubstrateError("node " + std::to_string(i) + " hosts NFs without capacity");
    for (NfTypeId t : node.hostable) {
      if (t.value() < 0 || t.index() >= catalog_.size())
        throw SubstrateError("node " + std::to_string(i) + " hosts an NF outside the catalog");
      hosting_[t.index()].push_back(node.id);
    }
  }
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const auto& l = links_[i];
    if (l.id.index() != i) throw SubstrateError("link ids must be dense and ordered");
    if (l.from.value() < 0 || l.from.index() >= n || l.to.value() < 0 || l.to.index() >= n)
      throw SubstrateError("link " + std::to_string(i) + " has an invalid endpoint");
    if (!(l.capacity > 0.0))
      throw SubstrateError("link " + std::to_string(i) + " has non-positive capacity");
    ++degree[l.from.index()];
  }
  out_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) out_offsets_[i + 1] = out_offsets_[i] + degree[i];
  out_links_.resize(links_.size());
  auto cursor = out_offsets_;
  for (const auto& l : links_) out_links_[cursor[l.from.index()]++] = l.id;
}

std::span<const LinkId> Substrate::out_links(NodeId n) const {
  return std::span<const LinkId>(out_links_).subspan(
      out_offsets_[n.index()], out_offsets_[n.index() + 1] - out_offsets_[n.index()]);
}

bool Substrate::hosts(NodeId n, NfTypeId t) const {
  const auto& h = nodes_[n.index()].hostable;
  return std::binary_search(h.begin(), h.end(), t);
}

double Substrate::min_link_capacity() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& l : links_) m = std::min(m, l.capacity);
  return links_.empty() ? 0.0 : m;
}

double Substrate::min_node_capacity() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& n : nodes_)
    if (n.capacity > 0.0) m = std::min(m, n.capacity);
  return std::isinf(m) ? 0.0 : m;
}

bool operator==(const Substrate& a, const Substrate& b) {
  if (a.catalog_ != b.catalog_ || a.nodes_.size() != b.nodes_.size() ||
      a.links_.size() != b.links_.size())
    return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const auto &x = a.nodes_[i], &y = b.nodes_[i];
    if (x.capacity != y.capacity || x.hostable != y.hostable) return false;
  }
  for (std::size_t i = 0; i < a.links_.size(); ++i) {
    const auto &x = a.links_[i], &y = b.links_[i];
    if (x.from != y.from || x.to != y.to || x.capacity != y.capacity) return false;
  }
  return true;
}

nlohmann::json to_json(const Substrate& s) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : s.nodes()) {
    nlohmann::json hostable = nlohmann::json::array();
    for (NfTypeId t : n.hostable) hostable.push_back(s.nf_catalog()[t.index()]);
    nodes.push_back({{"id", n.id.value()}, {"capacity", n.capacity}, {"hostable", hostable}});
  }
  nlohmann::json links = nlohmann::json::array();
  for (const auto& l : s.links())
    links.push_back({{"id", l.id.value()},
                     {"from", l.from.value()},
                     {"to", l.to.value()},
                     {"capacity", l.capacity}});
  return {{"nf_catalog", s.nf_catalog()}, {"nodes", nodes}, {"links", links}};
}

Substrate substrate_from_json(const nlohmann::json& j) {
  try {
    auto catalog = j.at("nf_catalog").get<std::vector<std::string>>();
    std::unordered_map<std::string, NfTypeId> by_name;
    for (std::size_t i = 0; i < catalog.size(); ++i) by_name.emplace(catalog[i], NfTypeId(i));

    std::vector<Node> nodes;
    for (const auto& jn : j.at("nodes")) {
      Node n;
      n.id = NodeId(jn.at("id").get<int>());
      n.capacity = jn.at("capacity").get<double>();
      for (const auto& h : jn.value("hostable", nlohmann::json::array())) {
        if (h.is_string()) {
          auto it = by_name.find(h.get<std::string>());
          if (it == by_name.end())
            throw SubstrateError("unknown NF type '" + h.get<std::string>() + "'");
          n.hostable.push_back(it->second);
        } else {
          n.hostable.push_back(NfTypeId(h.get<int>()));
        }
      }
      nodes.push_back(std::move(n));
    }
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });

    std::vector<Link> links;
    for (const auto& jl : j.at("links"))
      links.push_back(Link{LinkId(jl.at("id").get<int>()), NodeId(jl.at("from").get<int>()),
                           NodeId(jl.at("to").get<int>()), jl.at("capacity").get<double>()});
    std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) { return a.id < b.id; });
    return Substrate(std::move(catalog), std::move(nodes), std::move(links));
  } catch (const nlohmann::json::exception& e) {
    throw SubstrateError(std::string("substrate JSON: ") + e.what());
  }
}

bool check_feasible(const ResidualLedger& ledger, const Substrate& s, const Embedding& emb,
                    const ServiceRequest& req) {
  for (auto [l, m] : count_multiplicity(emb.links))
    if (ledger.allocated_rate(l) + req.rate * m > s.link(l).capacity + kCapacityTolerance)
      return false;
  for (auto [n, m] : count_multiplicity(placement_nodes(emb)))
    if (ledger.allocated_proc(n) + req.proc * m > s.node(n).capacity + kCapacityTolerance)
      return false;
  return true;
}

void commit_embedding(ResidualLedger& ledger, const Substrate& s, const Embedding& emb,
                      const ServiceRequest& req) {
  if (!check_feasible(ledger, s, emb, req))
    throw CapacityViolation("request " + std::to_string(req.id) + " exceeds residual capacity");
  for (LinkId l : emb.links) ledger.rate_[l.index()] += req.rate;
  for (const auto& p : emb.placements) ledger.proc_[p.node.index()] += req.proc;
}

double link_utilization(const ResidualLedger& ledger, const Substrate& s, LinkId l) {
  return ledger.allocated_rate(l) / s.link(l).capacity;
}

double node_utilization(const ResidualLedger& ledger, const Substrate& s, NodeId n) {
  const double c = s.node(n).capacity;
  return c > 0.0 ? ledger.allocated_proc(n) / c : 0.0;
}

}  // namespace nfv
