#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "nfv/baselines.hpp"
#include "nfv/errors.hpp"
#include "nfv/topologies.hpp"
#include "nfv/workload.hpp"

using namespace nfv;
using namespace nfv::testing;

namespace {

// One link each way, L = K = D_max = 1: heuristic prices never exceed 1
// per unit rate, approximation prices reach 3.
PricingParams unit_params() {
  PricingParams p;
  p.max_route_links = 1;
  p.max_chain_length = 1;
  p.max_destinations = 1;
  return p;
}

struct Loaded {
  Substrate s = make_substrate(2, {{0, 1}, {1, 0}}, 100, 0, {});
  CostState costs{s};
  ResidualLedger ledger{s};

  Loaded(double load, const PricingParams& p) {
    const ServiceRequest hog = make_request(0, {1}, {}, load, 0);
    const Embedding e{{LinkId(0)}, {}};
    commit_embedding(ledger, s, e, hog);
    commit_costs(costs, s, e, hog, profit(hog, true, p), p);
  }
};

}  // namespace

TEST(Baselines, ParamsForSelectsExponents) {
  EXPECT_EQ(params_for(Algorithm::approximation, unit_params()).mode, PricingMode::approximation);
  EXPECT_EQ(params_for(Algorithm::heuristic, unit_params()).mode, PricingMode::heuristic);
  EXPECT_EQ(params_for(Algorithm::greedy, unit_params()).mode, PricingMode::heuristic);
}

TEST(Baselines, FreshSubstrateAcceptedByAll) {
  const Substrate s = make_substrate(3, line_edges(3), 1000, 1000, {{0}, {1}, {}});
  for (Algorithm a : {Algorithm::approximation, Algorithm::heuristic, Algorithm::greedy}) {
    OnlineAlgorithm alg(s, a, unit_params());
    EXPECT_EQ(alg.offer(make_request(0, {2}, {{0, true}, {1, true}}, 10, 10)).decision,
              Decision::accepted_full)
        << to_string(a);
  }
}

TEST(Baselines, HeuristicPostCheckCatchesOverload) {
  const PricingParams h = params_for(Algorithm::heuristic, unit_params());
  Loaded heur(95, h);
  const auto out = admit_heuristic(make_request(0, {1}, {}, 10, 10), heur.s, heur.costs, heur.ledger, h);
  EXPECT_EQ(out.decision, Decision::rejected);
  EXPECT_EQ(out.reason, RejectReason::capacity_post_check);
  EXPECT_TRUE(out.passes[0].conditions_hold);
  EXPECT_FALSE(out.passes[0].feasible);
  EXPECT_DOUBLE_EQ(heur.ledger.allocated_rate(LinkId(0)), 95.0);

  const PricingParams a = params_for(Algorithm::approximation, unit_params());
  Loaded approx(95, a);
  const auto strict = admit(make_request(0, {1}, {}, 10, 10), approx.s, approx.costs, approx.ledger, a);
  EXPECT_EQ(strict.reason, RejectReason::admission_conditions);
}

TEST(Baselines, GreedyAcceptsWhatPricesRefuse) {
  const PricingParams a = params_for(Algorithm::approximation, unit_params());
  Loaded approx(80, a);
  EXPECT_FALSE(admit(make_request(0, {1}, {}, 10, 10), approx.s, approx.costs, approx.ledger, a).accepted());

  const PricingParams g = params_for(Algorithm::greedy, unit_params());
  Loaded greedy(80, g);
  const auto out = admit_greedy(make_request(0, {1}, {}, 10, 10), greedy.s, greedy.costs, greedy.ledger, g);
  EXPECT_EQ(out.decision, Decision::accepted_full);
  EXPECT_DOUBLE_EQ(greedy.ledger.allocated_rate(LinkId(0)), 90.0);
}

TEST(Baselines, GreedyRejectsWithoutResidual) {
  const PricingParams g = params_for(Algorithm::greedy, unit_params());
  Loaded full(100, g);
  const auto out = admit_greedy(make_request(0, {1}, {}, 1, 1), full.s, full.costs, full.ledger, g);
  EXPECT_EQ(out.decision, Decision::rejected);
  EXPECT_EQ(out.reason, RejectReason::infeasible);
}

TEST(Baselines, GreedyFallsBackToMandatoryChainWhenFullDoesNotFit) {
  const Substrate s = make_substrate(2, {{0, 1}, {1, 0}}, 100, 10, {{0}, {1}});
  OnlineAlgorithm alg(s, Algorithm::greedy, unit_params());
  // f0 only runs on node 0 and f1 only on node 1. After the first request
  // node 1 has 4 left, so the second fits only without its f1.
  EXPECT_EQ(alg.offer(make_request(0, {1}, {{1, true}}, 6, 6)).decision, Decision::accepted_full);
  EXPECT_EQ(alg.offer(make_request(0, {1}, {{0, true}, {1, false}}, 5, 5)).decision,
            Decision::accepted_mandatory_only);
}

TEST(Baselines, GreedyUnitWeightsUseFewestHops) {
  // Ring 0-1-2-3-0; the short way 0 -> 3 is the direct link.
  const Substrate s = make_substrate(4, both_ways({{0, 1}, {1, 2}, {2, 3}, {3, 0}}), 100, 0, {});
  AdmissionOptions opts;
  opts.greedy_weights = GreedyWeights::unit;
  OnlineAlgorithm alg(s, Algorithm::greedy, unit_params(), opts);
  for (int i = 0; i < 9; ++i) {
    const auto out = alg.offer(make_request(0, {3}, {}, 10, 10));
    ASSERT_TRUE(out.accepted());
    EXPECT_EQ(out.embedding->links, std::vector<LinkId>{find_link(s, 0, 3)});
  }
}

TEST(Baselines, InvalidParamsRejected) {
  const Substrate s = make_substrate(2, {{0, 1}}, 100, 0, {});
  PricingParams bad = unit_params();
  bad.alpha = 0.0;
  EXPECT_THROW(OnlineAlgorithm(s, Algorithm::heuristic, bad), ConfigError);
}

TEST(BaselinesProperty, NeverExceedCapacity) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Substrate s = barabasi_albert(15, 2, CapacitySpec{50, 200, 50, 200}, HostingSpec{}, seed);
    WorkloadSpec spec;
    spec.chain_length = {1, 3};
    spec.best_effort = {0, 2};
    spec.destinations = {1, 3};
    spec.seed = seed;
    PricingParams p;
    p.max_route_links = auto_L(s);
    p.max_chain_length = 3;
    p.max_destinations = 3;
    for (Algorithm a : {Algorithm::heuristic, Algorithm::greedy}) {
      OnlineAlgorithm alg(s, a, p);
      for (const auto& r : generate(spec, s, 600)) ASSERT_NO_THROW(alg.offer(r));
      for (const auto& l : s.links())
        EXPECT_LE(alg.residuals().allocated_rate(l.id), l.capacity + kCapacityTolerance);
      for (const auto& n : s.nodes())
        EXPECT_LE(alg.residuals().allocated_proc(n.id), n.capacity + kCapacityTolerance);
    }
  }
}
