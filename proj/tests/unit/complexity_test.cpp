#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "hlearn/complexity.hpp"
#include "hlearn/errors.hpp"
#include "hlearn/random.hpp"

namespace hlearn {
namespace {

using Labels = std::vector<std::string>;

Labels labels_of(const PathInstance& x, const std::vector<VertexId>& ids) {
  Labels out;
  for (auto v : ids) out.push_back(x.label(v));
  return out;
}

TEST(LowerBoundFamily, Structure) {
  const auto family = build_lower_bound_family(8);
  ASSERT_EQ(family.size(), 4u);
  for (std::size_t i = 1; i <= 4; ++i) {
    const auto& x = family[i - 1];
    EXPECT_TRUE(x.valid());
    EXPECT_EQ(x.labels(), (Labels{"s", "r", "t", "1", "2", "3", "4", "5"}));
    EXPECT_EQ(x.label(x.start()), "s");
    EXPECT_EQ(x.label(x.goal()), "t");
    // 5 edges out of s, (v,t) for v > i, (i,r), (r,t).
    EXPECT_EQ(x.edges().size(), 5 + (5 - i) + 2);
    EXPECT_NE(x.weight(x.id_of(std::to_string(i)), x.id_of("r")), nullptr);
    EXPECT_EQ(x.weight(x.id_of(std::to_string(i)), x.id_of("t")), nullptr);
    for (const auto& e : x.edges()) EXPECT_EQ(e.weight, 1);
  }
  EXPECT_THROW(build_lower_bound_family(5), InvalidInput);
}

TEST(LowerBoundFamily, HeuristicForEmptySubset) {
  const auto rho = rho_for_subset(8, SubsetMask{0});
  const auto x = build_lower_bound_family(8).front();
  EXPECT_EQ(rho[x.id_of("s")], 8);
  EXPECT_EQ(rho[x.id_of("r")], 0);
  EXPECT_EQ(rho[x.id_of("t")], 0);
  for (const char* v : {"1", "2", "3", "4"}) EXPECT_EQ(rho[x.id_of(v)], 8);
  EXPECT_EQ(rho[x.id_of("5")], 7);
}

TEST(LowerBoundFamily, HeuristicForSubset) {
  const auto rho = rho_for_subset(8, std::vector<std::size_t>{2, 3});
  const auto x = build_lower_bound_family(8).front();
  EXPECT_EQ(rho[x.id_of("1")], 8);
  EXPECT_EQ(rho[x.id_of("2")], 4);
  EXPECT_EQ(rho[x.id_of("3")], 5);
  EXPECT_EQ(rho[x.id_of("4")], 8);
  EXPECT_EQ(rho[x.id_of("5")], 7);
  EXPECT_EQ(subset_mask({2, 3}), SubsetMask{0b110});
  EXPECT_THROW(rho_for_subset(8, SubsetMask{1} << 4), InvalidInput);
  EXPECT_THROW(subset_mask({0}), InvalidInput);
}

TEST(LowerBoundFamily, ReturnedPathsForSubsetTwoThree) {
  const auto family = build_lower_bound_family(8);
  const auto rho = rho_for_subset(8, std::vector<std::size_t>{2, 3});
  const std::vector<Labels> expected{
      {"s", "2", "t"}, {"s", "2", "r", "t"}, {"s", "3", "r", "t"}, {"s", "5", "t"}};
  for (auto algo : {Algorithm::Gbfs, Algorithm::AstarReopen, Algorithm::AstarNoReopen}) {
    for (std::size_t i = 0; i < 4; ++i) {
      const auto trace = run_search(algo, family[i], rho);
      EXPECT_EQ(labels_of(family[i], trace.path), expected[i]) << to_string(algo) << " x" << i + 1;
      EXPECT_EQ(trace.cost, static_cast<long>(expected[i].size() - 1));
    }
  }
  EXPECT_EQ(run_gbfs(family[1], rho).iterations(), 3u);
  const auto opt = dijkstra_opt(family[1]);
  EXPECT_EQ(labels_of(family[1], opt.path), (Labels{"s", "3", "t"}));
  EXPECT_EQ(opt.cost, 2);
}

class ShatteringTest : public ::testing::TestWithParam<std::tuple<std::size_t, Algorithm>> {};

TEST_P(ShatteringTest, ExhaustivePatternsEqualSubsets) {
  const auto [n, algo] = GetParam();
  const auto result = verify_shattering(n, algo);
  EXPECT_TRUE(result.shattered());
  EXPECT_EQ(result.achieved.size(), std::size_t{1} << (n - 4));
  EXPECT_EQ(result.missing_count, 0u);
  EXPECT_EQ(result.witnesses, result.achieved);
  for (const auto& z : result.thresholds) EXPECT_EQ(z, make_rational(5, 2));
}

INSTANTIATE_TEST_SUITE_P(Small, ShatteringTest,
                         ::testing::Combine(::testing::Values<std::size_t>(6, 7, 8, 10),
                                            ::testing::Values(Algorithm::Gbfs, Algorithm::AstarReopen,
                                                              Algorithm::AstarNoReopen)));

TEST(Shattering, SampledModeAndJobsIndependence) {
  ShatterOptions options;
  options.exhaustive = false;
  options.samples = 300;
  options.seed = 4;
  const auto one = verify_shattering(14, Algorithm::Gbfs, options);
  options.jobs = 4;
  const auto four = verify_shattering(14, Algorithm::Gbfs, options);
  EXPECT_EQ(one.subsets_tested, 300u);
  EXPECT_EQ(one.achieved, four.achieved);
  EXPECT_FALSE(one.shattered());
  EXPECT_EQ(shatter_to_json(one, true).dump(), shatter_to_json(four, true).dump());
}

TEST(GCostCatalog, PowersOfTwoGadgetHasAllDistinctCosts) {
  const auto x = powers_of_two_gadget(4);
  const auto catalog = gcost_catalog(x);
  for (VertexId v = 0; v < 4; ++v) {
    if (v == x.start()) {
      EXPECT_EQ(catalog.costs[v], std::vector<Rational>{0});
      continue;
    }
    EXPECT_EQ(catalog.path_counts[v], 5u);
    EXPECT_EQ(catalog.costs[v].size(), 5u);
  }
  EXPECT_EQ(catalog.total_size(), 16u);
}

TEST(GCostCatalog, MatchesBruteForcePathCosts) {
  for (std::uint64_t i = 0; i < 150; ++i) {
    auto spec = testing::er_spec(3 + i % 6, 3, 7, 0.5);
    if (i % 2) spec.weights = WeightModel::RationalBounded;
    const auto x = sample_instance(spec, i);
    const auto catalog = gcost_catalog(x);
    for (VertexId v = 0; v < x.size(); ++v) {
      std::set<Rational> costs;
      const auto paths = v == x.start() ? std::vector<std::vector<VertexId>>{{v}} : testing::simple_paths(x, x.start(), v);
      for (const auto& p : paths) costs.insert(p.size() == 1 ? Rational(0) : path_cost(x, p));
      EXPECT_EQ(catalog.costs[v], std::vector<Rational>(costs.begin(), costs.end()));
      EXPECT_EQ(catalog.path_counts[v], paths.size());
    }
  }
}

TEST(GCostCatalog, IntegerWeightsStayWithinNTimesL) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::int64_t ell = 1 + static_cast<std::int64_t>(i % 4);
    auto spec = testing::er_spec(8, ell, 8, 0.6);
    const auto x = sample_instance(spec, i);
    const auto catalog = gcost_catalog(x);
    ASSERT_TRUE(catalog.integer_weight_bound.has_value());
    for (const auto& costs : catalog.costs) {
      EXPECT_LE(costs.size(), std::max<std::size_t>(x.size() * *catalog.integer_weight_bound, 1));
    }
  }
}

TEST(GCostCatalog, ZeroWeightsGiveSingletonCatalogs) {
  const PathInstance x({"s", "a", "t"}, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}}, 0, 2);
  const auto catalog = gcost_catalog(x);
  EXPECT_EQ(*catalog.integer_weight_bound, 0);
  for (const auto& costs : catalog.costs) EXPECT_EQ(costs.size(), 1u);
}

TEST(GCostCatalog, CompleteDigraphNotesTheFactorialSum) {
  InstanceDistributionSpec spec;
  spec.kind = DistributionKind::Complete;
  spec.n = 5;
  spec.random_start = false;
  const auto catalog = gcost_catalog(sample_instance(spec, 0));
  EXPECT_EQ(catalog.path_counts[4], 16u);
  ASSERT_EQ(catalog.notes.size(), 1u);
  EXPECT_NE(catalog.notes.front().find("16"), std::string::npos);
}

TEST(GCostCatalog, RefusesOversizedInstances) {
  const auto x = powers_of_two_gadget(6);
  EXPECT_THROW(gcost_catalog(x, CatalogOptions{5, 1000}), CatalogOverflow);
  EXPECT_THROW(gcost_catalog(x, CatalogOptions{12, 10}), CatalogOverflow);
}

TEST(ScoreGap, GapAndTieComponents) {
  const auto x = testing::chain();
  const auto catalog = gcost_catalog(x);  // g = 0,1,2,3 for s,a,b,t
  const HeuristicVector rho(std::vector<Rational>{3, 2, 1, 0});  // every score is 3
  EXPECT_FALSE(min_score_gap(catalog, rho).has_value());
  const auto all = score_tie_components(catalog, rho);
  EXPECT_EQ(std::set<std::size_t>(all.begin(), all.end()).size(), 1u);
  const HeuristicVector spread(std::vector<Rational>{0, 0, make_rational(1, 2), 10});
  EXPECT_EQ(*min_score_gap(catalog, spread), 1);  // scores 0, 1, 5/2, 13
  const auto separate = score_tie_components(catalog, spread);
  EXPECT_EQ(std::set<std::size_t>(separate.begin(), separate.end()).size(), 4u);
}

TEST(ScoreGap, TiePreservingPerturbationKeepsAstarBehavior) {
  Rng rng(21);
  std::size_t nonzero = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto x = sample_instance(testing::er_spec(6, 3, 77, 0.5), i);
    const auto catalog = gcost_catalog(x);
    const auto rho = testing::random_rho(6, 0, 4, rng);
    const auto perturbed = tie_preserving_perturbation(catalog, rho, rng);
    if (const auto gap = min_score_gap(catalog, rho)) {
      for (VertexId v = 0; v < 6; ++v) {
        const Rational d = perturbed[v] - rho[v];
        EXPECT_LT(abs(d), *gap / 2);
      }
    }
    nonzero += !(perturbed == rho);
    for (bool reopening : {true, false}) {
      EXPECT_EQ(trace_fingerprint(run_astar(x, rho, reopening)), trace_fingerprint(run_astar(x, perturbed, reopening)));
    }
  }
  EXPECT_GT(nonzero, 150u);
}

TEST(Census, GbfsOnTheSmallFamily) {
  const auto family = build_lower_bound_family(6);
  const auto report = gbfs_behavior_census(family, 3);
  EXPECT_EQ(report.order_count, 720u);
  EXPECT_EQ(report.order_pair_checks, 720u);
  EXPECT_LE(report.distinct_tuples, 720u);
  EXPECT_GT(report.distinct_tuples, 1u);
}

TEST(Census, GbfsRejectsMixedOrLargeSets) {
  EXPECT_THROW(gbfs_behavior_census({testing::chain(), testing::reopen_fixture()}), InvalidInput);
  EXPECT_THROW(gbfs_behavior_census(build_lower_bound_family(8)), InvalidInput);
  EXPECT_THROW(gbfs_behavior_census({}), InvalidInput);
}

TEST(Census, AstarGridAndRandomSamples) {
  std::vector<PathInstance> corpus;
  for (std::uint64_t i = 0; i < 3; ++i) corpus.push_back(sample_instance(testing::er_spec(5, 3, 55, 0.5), i));
  RhoSampleSpec grid;
  grid.grid_points = 3;
  const auto a = astar_behavior_census(corpus, grid, true);
  EXPECT_EQ(a.rho_evaluated, 243u);
  EXPECT_EQ(a.shift_checks, 243u);
  EXPECT_GT(a.consistent_samples, 0u);
  EXPECT_GE(a.hyperplanes, 1u);
  EXPECT_GT(a.log10_region_bound, std::log10(static_cast<double>(a.distinct_tuples)));
  RhoSampleSpec random;
  random.grid_points = 0;
  random.random_samples = 100;
  random.seed = 9;
  const auto b = astar_behavior_census(corpus, random, false);
  EXPECT_EQ(b.rho_evaluated, 100u);
  EXPECT_EQ(census_to_json(b).dump(), census_to_json(astar_behavior_census(corpus, random, false)).dump());
  RhoSampleSpec empty;
  empty.lo = 3;
  empty.hi = 2;
  EXPECT_THROW(astar_behavior_census(corpus, empty, true), InvalidInput);
}

}  // namespace
}  // namespace hlearn
