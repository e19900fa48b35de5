#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nfv/ids.hpp"
#include "nfv/request.hpp"

namespace nfv {

/// Absolute slack used by every capacity comparison.
inline constexpr double kCapacityTolerance = 1e-9;

struct Node {
  NodeId id;
  double capacity{0.0};  // processing rate C(n); 0 marks a pure switch
  std::vector<NfTypeId> hostable;
};

struct Link {
  LinkId id;
  NodeId from;
  NodeId to;
  double capacity{0.0};  // transmission rate B(l)
};

/// Capacitated directed substrate. Immutable once constructed.
///
/// Node and link ids are dense and equal to their position in the input
/// vectors. `hosting_nodes(t)` is the set of nodes able to run NF type `t`.
class Substrate {
 public:
  Substrate() = default;
  /// Throws SubstrateError on any invariant violation.
  Substrate(std::vector<std::string> nf_catalog, std::vector<Node> nodes, std::vector<Link> links);

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t link_count() const { return links_.size(); }
  [[nodiscard]] std::size_t nf_type_count() const { return catalog_.size(); }

  [[nodiscard]] const Node& node(NodeId n) const { return nodes_[n.index()]; }
  [[nodiscard]] const Link& link(LinkId l) const { return links_[l.index()]; }
  [[nodiscard]] std::span<const Node> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const Link> links() const { return links_; }
  [[nodiscard]] std::span<const std::string> nf_catalog() const { return catalog_; }

  [[nodiscard]] std::span<const LinkId> out_links(NodeId n) const;
  [[nodiscard]] std::span<const NodeId> hosting_nodes(NfTypeId t) const {
    return hosting_[t.index()];
  }
  [[nodiscard]] bool hosts(NodeId n, NfTypeId t) const;

  [[nodiscard]] double min_link_capacity() const;
  /// Minimum over NFV nodes (capacity > 0); 0 when there are none.
  [[nodiscard]] double min_node_capacity() const;

  friend bool operator==(const Substrate& a, const Substrate& b);

 private:
  std::vector<std::string> catalog_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::size_t> out_offsets_;
  std::vector<LinkId> out_links_;
  std::vector<std::vector<NodeId>> hosting_;
};

nlohmann::json to_json(const Substrate& s);
Substrate substrate_from_json(const nlohmann::json& j);

/// NF instance `position` of the embedded chain runs on `node`.
struct Placement {
  std::size_t position{0};
  NodeId node;

  friend auto operator<=>(const Placement&, const Placement&) = default;
};

/// A concrete route and placement for one request. `links` lists every
/// substrate-link traversal, so a link reused in two layers appears twice.
struct Embedding {
  std::vector<LinkId> links;
  std::vector<Placement> placements;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Allocated transmission and processing rate per element.
class ResidualLedger {
 public:
  ResidualLedger() = default;
  explicit ResidualLedger(const Substrate& s)
      : rate_(s.link_count(), 0.0), proc_(s.node_count(), 0.0) {}

  [[nodiscard]] double allocated_rate(LinkId l) const { return rate_[l.index()]; }
  [[nodiscard]] double allocated_proc(NodeId n) const { return proc_[n.index()]; }
  [[nodiscard]] std::span<const double> allocated_rates() const { return rate_; }
  [[nodiscard]] std::span<const double> allocated_procs() const { return proc_; }

  friend bool operator==(const ResidualLedger&, const ResidualLedger&) = default;

 private:
  friend void commit_embedding(ResidualLedger&, const Substrate&, const Embedding&,
                               const ServiceRequest&);
  std::vector<double> rate_;
  std::vector<double> proc_;
};

/// True iff committing `emb` for `req` keeps every element within capacity.
[[nodiscard]] bool check_feasible(const ResidualLedger& ledger, const Substrate& s,
                                  const Embedding& emb, const ServiceRequest& req);

/// Adds the request's rate to each link traversal and its per-NF processing
/// to each placement. Throws CapacityViolation, leaving the ledger
/// unchanged, if any element would exceed capacity.
void commit_embedding(ResidualLedger& ledger, const Substrate& s, const Embedding& emb,
                      const ServiceRequest& req);

/// Utilization u = allocated / capacity; 0 for nodes without capacity.
[[nodiscard]] double link_utilization(const ResidualLedger& ledger, const Substrate& s, LinkId l);
[[nodiscard]] double node_utilization(const ResidualLedger& ledger, const Substrate& s, NodeId n);

}  // namespace nfv
