#include "nfv/topologies.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "nfv/errors.hpp"
#include "nfv/random.hpp"

namespace nfv {

nlohmann::json to_json(const CapacitySpec& c) {
  return {{"link", {c.link_min, c.link_max}}, {"node", {c.node_min, c.node_max}}};
}

CapacitySpec capacity_spec_from_json(const nlohmann::json& j) {
  CapacitySpec c;
  if (j.contains("link")) {
    c.link_min = j["link"].at(0).get<int>();
    c.link_max = j["link"].at(1).get<int>();
  }
  if (j.contains("node")) {
    c.node_min = j["node"].at(0).get<int>();
    c.node_max = j["node"].at(1).get<int>();
  }
  if (c.link_min <= 0 || c.link_max < c.link_min || c.node_min < 0 || c.node_max < c.node_min)
    throw ConfigError("capacity ranges must be ordered, links > 0, nodes >= 0");
  return c;
}

nlohmann::json to_json(const HostingSpec& h) {
  return {{"catalog_size", h.catalog_size},
          {"fraction", h.fraction},
          {"switch_fraction", h.switch_fraction}};
}

HostingSpec hosting_spec_from_json(const nlohmann::json& j) {
  HostingSpec h;
  h.catalog_size = j.value("catalog_size", h.catalog_size);
  h.fraction = j.value("fraction", h.fraction);
  h.switch_fraction = j.value("switch_fraction", h.switch_fraction);
  if (h.catalog_size < 1 || h.fraction <= 0.0 || h.fraction > 1.0 || h.switch_fraction < 0.0 ||
      h.switch_fraction > 1.0)
    throw ConfigError("hosting spec out of range");
  return h;
}

Substrate from_undirected(int n, const std::vector<UndirectedEdge>& edges,
                          const CapacitySpec& caps, const HostingSpec& hosting,
                          std::uint64_t seed) {
  if (n < 1) throw EmptyGraph("substrate needs at least one node");
  Rng rng(seed);

  std::vector<std::string> catalog;
  std::vector<NfTypeId> types;
  for (int t = 0; t < hosting.catalog_size; ++t) {
    catalog.push_back("f" + std::to_string(t));
    types.emplace_back(t);
  }
  const auto per_node = static_cast<std::size_t>(
      std::ceil(hosting.fraction * hosting.catalog_size - 1e-12));

  std::vector<Node> nodes;
  nodes.reserve(n);
  for (int i = 0; i < n; ++i) {
    Node node{NodeId(i), 0.0, {}};
    const bool is_switch = hosting.switch_fraction > 0.0 && rng.uniform01() < hosting.switch_fraction;
    if (!is_switch) {
      node.capacity = static_cast<double>(rng.uniform_int(caps.node_min, caps.node_max));
      if (node.capacity > 0.0) {
        node.hostable = rng.sample(std::span<const NfTypeId>(types), per_node);
        std::sort(node.hostable.begin(), node.hostable.end());
      }
    }
    nodes.push_back(std::move(node));
  }

  std::vector<Link> links;
  links.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw SubstrateError("edge endpoint out of range");
    for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
      const auto cap = static_cast<double>(rng.uniform_int(caps.link_min, caps.link_max));
      links.push_back({LinkId(links.size()), NodeId(a), NodeId(b), cap});
    }
  }
  return Substrate(std::move(catalog), std::move(nodes), std::move(links));
}

Substrate linear(int n, const CapacitySpec& caps, const HostingSpec& hosting, std::uint64_t seed) {
  if (n < 2) throw ConfigError("linear topology needs n >= 2");
  std::vector<UndirectedEdge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return from_undirected(n, edges, caps, hosting, seed);
}

std::vector<UndirectedEdge> barabasi_albert_edges(int n, int m, std::uint64_t seed) {
  if (m < 1 || m >= n) throw ConfigError("barabasi_albert needs 1 <= m < n");
  Rng rng(seed);
  std::vector<UndirectedEdge> edges;
  // every edge endpoint once, so a uniform pick is degree-proportional
  std::vector<int> endpoints;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      edges.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  for (int v = m; v < n; ++v) {
    std::vector<int> targets;
    while (static_cast<int>(targets.size()) < m) {
      const int t = endpoints.empty() ? static_cast<int>(rng.index(static_cast<std::size_t>(v)))
                                      : endpoints[rng.index(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (int t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return edges;
}

Substrate barabasi_albert(int n, int m, const CapacitySpec& caps, const HostingSpec& hosting,
                          std::uint64_t seed) {
  const auto edges = barabasi_albert_edges(n, m, Rng::derive(seed, 1));
  return from_undirected(n, edges, caps, hosting, Rng::derive(seed, 2));
}

namespace pt = boost::property_tree;

GraphStructure parse_graphml(const std::string& xml) {
  pt::ptree tree;
  std::istringstream in(xml);
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("graphml line " + std::to_string(e.line()) + ": " + e.message());
  }
  const auto root = tree.get_child_optional("graphml");
  if (!root) throw ParseError("graphml: missing <graphml> root element");
  const auto graph = root->get_child_optional("graph");
  if (!graph) throw ParseError("graphml: missing <graph> element");

  GraphStructure g;
  g.name = graph->get<std::string>("<xmlattr>.id", "");
  const bool directed = graph->get<std::string>("<xmlattr>.edgedefault", "undirected") == "directed";
  std::unordered_map<std::string, int> index;
  for (const auto& [tag, child] : *graph) {
    if (tag != "node") continue;
    const auto id = child.get_optional<std::string>("<xmlattr>.id");
    if (!id) throw ParseError("graphml: <node> #" + std::to_string(g.node_ids.size()) + " has no id");
    if (!index.emplace(*id, g.node_count).second)
      throw ParseError("graphml: duplicate node id '" + *id + "'");
    g.node_ids.push_back(*id);
    ++g.node_count;
  }
  if (g.node_count == 0) throw EmptyGraph("graphml: graph has no nodes");

  std::set<UndirectedEdge> seen;
  std::size_t edge_no = 0;
  for (const auto& [tag, child] : *graph) {
    if (tag != "edge") continue;
    const auto src = child.get_optional<std::string>("<xmlattr>.source");
    const auto dst = child.get_optional<std::string>("<xmlattr>.target");
    if (!src || !dst)
      throw ParseError("graphml: <edge> #" + std::to_string(edge_no) + " lacks source/target");
    const auto a = index.find(*src);
    const auto b = index.find(*dst);
    if (a == index.end() || b == index.end())
      throw ParseError("graphml: <edge> #" + std::to_string(edge_no) + " references unknown node");
    ++edge_no;
    int u = a->second;
    int v = b->second;
    if (u == v) continue;
    if (!directed && u > v) std::swap(u, v);
    if (seen.emplace(u, v).second) g.edges.emplace_back(u, v);
  }
  if (directed) {
    // a directed file still yields one bidirectional substrate link pair per adjacency
    std::set<UndirectedEdge> pairs;
    std::vector<UndirectedEdge> merged;
    for (auto [u, v] : g.edges)
      if (pairs.emplace(std::min(u, v), std::max(u, v)).second) merged.emplace_back(u, v);
    g.edges = std::move(merged);
  }
  return g;
}

GraphStructure read_graphml(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("graphml: cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graphml(buf.str());
}

Substrate load_graphml(const std::filesystem::path& path, const CapacitySpec& caps,
                       const HostingSpec& hosting, std::uint64_t seed) {
  const auto g = read_graphml(path);
  return from_undirected(g.node_count, g.edges, caps, hosting, seed);
}

namespace {

std::vector<int> hop_distances(const Substrate& s, NodeId from) {
  std::vector<int> dist(s.node_count(), -1);
  std::queue<NodeId> q;
  dist[from.index()] = 0;
  q.push(from);
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (LinkId l : s.out_links(u)) {
      const NodeId v = s.link(l).to;
      if (dist[v.index()] < 0) {
        dist[v.index()] = dist[u.index()] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace

int auto_L(const Substrate& s) {
  int best = 0;
  for (std::size_t i = 0; i < s.node_count(); ++i)
    for (int d : hop_distances(s, NodeId(i))) best = std::max(best, d);
  return best;
}

bool strongly_connected(const Substrate& s) {
  for (std::size_t i = 0; i < s.node_count(); ++i) {
    const auto d = hop_distances(s, NodeId(i));
    if (std::any_of(d.begin(), d.end(), [](int x) { return x < 0; })) return false;
  }
  return true;
}

}  // namespace nfv
