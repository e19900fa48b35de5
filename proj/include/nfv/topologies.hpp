#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nfv/substrate.hpp"

namespace nfv {

/// Integer capacities drawn uniformly from closed ranges.
struct CapacitySpec {
  int link_min{1000};
  int link_max{5000};
  int node_min{1000};
  int node_max{5000};
};

/// NF catalog and hosting randomization. Non-switch nodes host a uniform
/// random subset of ceil(fraction * catalog_size) types.
struct HostingSpec {
  int catalog_size{6};
  double fraction{2.0 / 3.0};
  double switch_fraction{0.0};  // probability that a node is a pure switch
};

nlohmann::json to_json(const CapacitySpec& c);
CapacitySpec capacity_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const HostingSpec& h);
HostingSpec hosting_spec_from_json(const nlohmann::json& j);

using UndirectedEdge = std::pair<int, int>;

/// Builds a substrate from an undirected edge list: each edge becomes two
/// directed links, in edge order, and capacities and hosting are drawn from
/// the specs with a generator seeded by `seed`.
Substrate from_undirected(int n, const std::vector<UndirectedEdge>& edges,
                          const CapacitySpec& caps, const HostingSpec& hosting,
                          std::uint64_t seed);

Substrate linear(int n, const CapacitySpec& caps, const HostingSpec& hosting, std::uint64_t seed);

/// Edge list of preferential-attachment growth from an m-clique.
std::vector<UndirectedEdge> barabasi_albert_edges(int n, int m, std::uint64_t seed);

Substrate barabasi_albert(int n, int m, const CapacitySpec& caps, const HostingSpec& hosting,
                          std::uint64_t seed);

/// Structure of a GraphML file: node count and distinct undirected edges
/// (self-loops and parallel edges dropped), nodes numbered in file order.
struct GraphStructure {
  std::string name;
  int node_count{0};
  std::vector<UndirectedEdge> edges;
  std::vector<std::string> node_ids;
};

/// Throws ParseError (with line or element context) or EmptyGraph.
GraphStructure read_graphml(const std::filesystem::path& path);
GraphStructure parse_graphml(const std::string& xml);

Substrate load_graphml(const std::filesystem::path& path, const CapacitySpec& caps,
                       const HostingSpec& hosting, std::uint64_t seed);

/// Longest hop-count shortest path over ordered reachable pairs.
int auto_L(const Substrate& s);
[[nodiscard]] bool strongly_connected(const Substrate& s);

}  // namespace nfv
