#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "nfv/errors.hpp"
#include "nfv/oracle.hpp"

using namespace nfv;
using namespace nfv::testing;

namespace {

PricingParams tiny_params() {
  PricingParams p;
  p.max_route_links = 4;
  p.max_chain_length = 2;
  p.max_destinations = 2;
  return p;
}

}  // namespace

TEST(Oracle, NoRequestsNoProfit) {
  const Substrate s = make_substrate(3, line_edges(3), 10, 10, {{0}});
  const OracleResult r = offline_optimum(s, {}, tiny_params());
  EXPECT_DOUBLE_EQ(r.profit, 0.0);
  EXPECT_TRUE(r.accepted.empty());
}

TEST(Oracle, SingleRequestWithRoomEarnsFullProfit) {
  const Substrate s = make_substrate(3, line_edges(3), 100, 100, {{0}, {1}, {}});
  const std::vector<ServiceRequest> reqs{make_request(0, {2}, {{0, true}, {1, false}}, 10, 10, 1, 2)};
  const OracleResult r = offline_optimum(s, reqs, tiny_params());
  EXPECT_DOUBLE_EQ(r.profit, 10.0 + 2.0 * 10.0);
  ASSERT_EQ(r.accepted.size(), 1u);
  EXPECT_TRUE(r.accepted[0].full_chain);
}

TEST(Oracle, BottleneckKeepsTheMoreProfitableRequest) {
  // Line 0-1-2 with capacity 10; both requests need 0 -> 1 at full rate.
  const Substrate s = make_substrate(3, line_edges(3), 10, 10, {});
  const std::vector<ServiceRequest> reqs{make_request(0, {1}, {}, 6, 0),
                                         make_request(0, {2}, {}, 8, 0)};
  const OracleResult r = offline_optimum(s, reqs, tiny_params());
  EXPECT_DOUBLE_EQ(r.profit, 8.0);
  ASSERT_EQ(r.accepted.size(), 1u);
  EXPECT_EQ(r.accepted[0].request, 1u);
}

TEST(Oracle, MandatoryOnlyWhenFullChainDoesNotFit) {
  const Substrate s = make_substrate(2, {{0, 1}, {1, 0}}, 100, 10, {{0}, {}}, 2);
  const std::vector<ServiceRequest> reqs{make_request(0, {1}, {{0, true}, {0, false}}, 6, 6, 1, 2)};
  const OracleResult r = offline_optimum(s, reqs, tiny_params());
  ASSERT_EQ(r.accepted.size(), 1u);
  EXPECT_FALSE(r.accepted[0].full_chain);
  EXPECT_DOUBLE_EQ(r.profit, 6.0 + 6.0);
}

TEST(Oracle, LargeInstanceExceedsBudget) {
  const Substrate s = make_substrate(8, line_edges(8), 10, 10, {});
  const std::vector<ServiceRequest> reqs{make_request(0, {1}, {}, 1, 0)};
  EXPECT_THROW(offline_optimum(s, reqs, tiny_params()), BudgetExceeded);
}

TEST(Oracle, EnumeratesSimplePathsOfCompleteGraph) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) edges.emplace_back(a, b);
  const Substrate s = make_substrate(4, both_ways(edges), 10, 0, {});
  const MultilayerGraph g(s, std::vector<NfTypeId>{});
  const std::vector<VertexId> term{3};
  EXPECT_EQ(enumerate_routes(g, 0, term, 100).size(), 5u);
  EXPECT_THROW(enumerate_routes(g, 0, term, 3), BudgetExceeded);
}

TEST(Oracle, EnumeratedMulticastTreesAreMinimal) {
  const Substrate s = make_substrate(3, both_ways({{0, 1}, {1, 2}, {0, 2}}), 10, 0, {});
  const MultilayerGraph g(s, std::vector<NfTypeId>{});
  const std::vector<VertexId> terms{1, 2};
  const auto trees = enumerate_routes(g, 0, terms, 100);
  // 0->1 & 0->2, 0->1->2, 0->2->1.
  EXPECT_EQ(trees.size(), 3u);
  for (const auto& t : trees) EXPECT_NO_THROW(project(g, t.edges, 0, terms));
}

TEST(Oracle, TinyInstancesAreWithinLimits) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TinyInstance inst = make_tiny_instance(seed);
    EXPECT_LE(inst.substrate.node_count(), 6u);
    EXPECT_GE(inst.requests.size(), 1u);
    EXPECT_LE(inst.requests.size(), 5u);
    EXPECT_EQ(inst.params.mode, PricingMode::approximation);
    EXPECT_EQ(inst.params.max_route_links,
              (inst.params.max_chain_length + 1) * static_cast<int>(inst.substrate.node_count() - 1));
  }
  EXPECT_EQ(to_json(make_tiny_instance(5).substrate), to_json(make_tiny_instance(5).substrate));
}

TEST(OracleProperty, OnlineWithinCompetitiveFactor) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const CompetitiveCheck c = check_competitive(make_tiny_instance(seed));
    EXPECT_TRUE(c.bound_holds()) << "seed " << seed << " opt " << c.optimum << " online " << c.online;
    EXPECT_LE(c.online, c.optimum + 1e-9);
    EXPECT_EQ(c.capacity_violations, 0u);
    EXPECT_LE(c.closed_form_deviation, 1e-9);
  }
}
