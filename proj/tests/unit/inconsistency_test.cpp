#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hlearn/errors.hpp"
#include "hlearn/inconsistency.hpp"

namespace hlearn {
namespace {

using testing::chain;
using testing::chain_rho;
using testing::reopen_fixture;
using testing::reopen_rho;

TEST(Inconsistency, ChainFixture) {
  const auto report = inconsistency(chain(), chain_rho());
  EXPECT_EQ(report.delta, 1);
  ASSERT_EQ(report.terms.size(), 2u);  // a->b and b->t; s->a is excluded
  EXPECT_EQ(report.terms[0].value, 1);
  EXPECT_EQ(report.terms[1].value, 0);
  EXPECT_EQ(report.opt, 3);
}

TEST(Inconsistency, EdgeLeavingStartIsExcluded) {
  auto rho = chain_rho();
  rho[0] = 1000;
  EXPECT_EQ(inconsistency(chain(), rho).delta, 1);
  rho[0] = -1000;
  EXPECT_EQ(inconsistency(chain(), rho).delta, 1);
}

TEST(Inconsistency, ConsistentHeuristicsHaveZeroInconsistency) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto x = sample_instance(testing::er_spec(10, 6, 41), i);
    const auto to_goal = distances_to(x, x.goal());
    HeuristicVector rho(x.size());
    for (VertexId v = 0; v < x.size(); ++v) rho[v] = to_goal[v] ? *to_goal[v] : Rational(1000);
    EXPECT_EQ(inconsistency(x, rho).delta, 0);
    EXPECT_EQ(inconsistency(x, HeuristicVector(x.size())).delta, 0);
  }
}

TEST(Inconsistency, ShiftInvariance) {
  Rng rng(8);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto x = sample_instance(testing::er_spec(9, 4, 43), i);
    const auto rho = testing::random_rho(x.size(), 0, 20, rng);
    EXPECT_EQ(inconsistency(x, rho).delta, inconsistency(x, shifted(rho, make_rational(-7, 3))).delta);
  }
}

// Heuristics built as exact distances under estimated weights w_hat are
// consistent for w_hat, so each path term is at most |w - w_hat|.
TEST(Inconsistency, EstimatedWeightHeuristicsAreBoundedByEstimationError) {
  Rng rng(19);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::int64_t ell = 8;
    const auto x = sample_instance(testing::er_spec(10, ell, 47), i);
    std::vector<Edge> estimated;
    for (const auto& e : x.edges()) estimated.push_back({e.from, e.to, Rational(static_cast<long>(rng.between(0, ell)))});
    const PathInstance x_hat(x.labels(), estimated, x.start(), x.goal());
    const auto to_goal = distances_to(x_hat, x.goal());
    HeuristicVector rho(x.size());
    for (VertexId v = 0; v < x.size(); ++v) rho[v] = to_goal[v] ? *to_goal[v] : Rational(ell * 10);
    const auto report = inconsistency(x, rho);
    Rational error = 0;
    for (std::size_t j = 1; j + 1 < report.optimal_path.size(); ++j) {
      const VertexId v = report.optimal_path[j];
      const VertexId c = report.optimal_path[j + 1];
      error += abs(*x.weight(v, c) - *x_hat.weight(v, c));
    }
    EXPECT_LE(report.delta, error) << i;
  }
}

TEST(Inconsistency, RejectsWrongHeuristicSize) {
  EXPECT_THROW(inconsistency(chain(), HeuristicVector(3)), InvalidInput);
}

TEST(Certificate, BothReopeningModesOnTheFixture) {
  const auto x = reopen_fixture();
  const auto with = check_suboptimality_bound(x, reopen_rho(), true);
  EXPECT_EQ(with.delta, 2);
  EXPECT_EQ(*with.cost, 4);
  EXPECT_EQ(*with.slack, 2);
  EXPECT_EQ(*with.algorithm, Algorithm::AstarReopen);
  const auto without = check_suboptimality_bound(x, reopen_rho(), false);
  EXPECT_EQ(*without.cost, 5);
  EXPECT_EQ(*without.slack, 1);
}

TEST(Certificate, FlippedMaxIsCaught) {
  const auto x = reopen_fixture();
  EXPECT_THROW(check_suboptimality_bound(x, reopen_rho(), false, FaultInjection::FlipMaxToMin),
               CertificateViolation);
  // Slack edges drag the flipped bound below Opt even on the optimal run.
  EXPECT_THROW(check_suboptimality_bound(x, reopen_rho(), true, FaultInjection::FlipMaxToMin), CertificateViolation);
  // Exact distances leave every term at 0: nothing to flip.
  EXPECT_NO_THROW(check_suboptimality_bound(chain(), HeuristicVector(std::vector<Rational>{3, 2, 1, 0}), false,
                                            FaultInjection::FlipMaxToMin));
}

TEST(Certificate, HoldsOnRandomTriples) {
  Rng rng(23);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto x = sample_instance(testing::er_spec(4 + i % 12, 1 + static_cast<std::int64_t>(i % 9), 51), i);
    const auto rho = testing::random_rho(x.size(), 0, 40, rng);
    for (bool reopening : {true, false}) {
      const auto report = check_suboptimality_bound(x, rho, reopening);
      EXPECT_GE(*report.slack, 0);
      EXPECT_EQ(*report.slack, report.opt + report.delta - *report.cost);
    }
  }
}

TEST(Ledger, FixtureReplay) {
  const auto x = reopen_fixture();
  const auto ledger = verify_appendix_ledger(x, reopen_rho(), false);
  EXPECT_EQ(ledger.final_iteration, 4u);
  ASSERT_EQ(ledger.shallowest.size(), 5u);
  EXPECT_EQ(ledger.shallowest, (std::vector<std::size_t>{0, 1, 1, 3, 4}));
  EXPECT_EQ(ledger.prefix_inc, (std::vector<Rational>{0, 0, 2, 2, 2}));
  EXPECT_EQ(ledger.cost, 5);
  EXPECT_EQ(ledger.opt, 4);
  EXPECT_LE(ledger.cost, ledger.decomposition_bound);
  EXPECT_LE(ledger.decomposition_bound, ledger.opt + ledger.delta);
  const auto with = verify_appendix_ledger(x, reopen_rho(), true);
  EXPECT_EQ(with.cost, 4);
  EXPECT_GT(with.g_error_checks, 0u);
}

TEST(Ledger, HoldsOnRandomTriples) {
  Rng rng(29);
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto spec = testing::er_spec(4 + i % 14, 1 + static_cast<std::int64_t>(i % 5), 53);
    if (i % 4 == 0) spec.weights = WeightModel::RationalBounded;
    const auto x = sample_instance(spec, i);
    const auto rho = testing::random_rho(x.size(), 0, 25, rng);
    for (bool reopening : {true, false}) {
      const auto ledger = verify_appendix_ledger(x, rho, reopening);
      EXPECT_EQ(ledger.shallowest.size(), ledger.final_iteration + 1);
      EXPECT_LE(ledger.cost, ledger.opt + ledger.delta);
    }
  }
}

TEST(Ledger, JsonReport) {
  const auto x = reopen_fixture();
  const auto doc = ledger_to_json(verify_appendix_ledger(x, reopen_rho(), true), x);
  EXPECT_EQ(doc.at("passed"), true);
  EXPECT_EQ(doc.at("optimal_path"), Json::parse(R"(["s","a","b","c","t"])"));
}

TEST(Sweep, CountsAreDeterministicAcrossJobs) {
  BoundSweepOptions options;
  options.count = 200;
  options.max_vertices = 16;
  options.seed = 7;
  const auto one = run_bound_sweep(options);
  options.jobs = 3;
  const auto three = run_bound_sweep(options);
  EXPECT_EQ(bound_sweep_to_json(one).dump(), bound_sweep_to_json(three).dump());
  EXPECT_EQ(one.count, 200u);
  EXPECT_GE(one.min_slack, 0);
  EXPECT_GT(one.suboptimal_runs, 0u);
  EXPECT_GT(one.reopening_runs, 0u);
  EXPECT_LT(one.reopening_runs, 200u);
}

TEST(Sweep, InjectedFaultIsReported) {
  BoundSweepOptions options;
  options.count = 200;
  options.max_vertices = 12;
  options.fault = FaultInjection::FlipMaxToMin;
  EXPECT_THROW(run_bound_sweep(options), CertificateViolation);
}

TEST(Sweep, RejectsBadRanges) {
  BoundSweepOptions options;
  options.count = 0;
  EXPECT_THROW(run_bound_sweep(options), InvalidInput);
  options.count = 5;
  options.min_vertices = 10;
  options.max_vertices = 5;
  EXPECT_THROW(run_bound_sweep(options), InvalidInput);
}

}  // namespace
}  // namespace hlearn
