#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "hlearn/complexity.hpp"
#include "hlearn/errors.hpp"
#include "hlearn/generators.hpp"

namespace hlearn {
namespace {

TEST(Generators, DeterministicInSpecAndIndex) {
  const auto spec = testing::er_spec(10, 5, 42);
  EXPECT_EQ(sample_instance(spec, 3), sample_instance(spec, 3));
  EXPECT_FALSE(sample_instance(spec, 3) == sample_instance(spec, 4));
  auto other = spec;
  other.seed = 43;
  EXPECT_FALSE(sample_instance(spec, 3) == sample_instance(other, 3));
}

TEST(Generators, EveryKindAndWeightModelYieldsValidInstances) {
  for (auto kind : {DistributionKind::ErdosRenyi, DistributionKind::LayeredDag, DistributionKind::Grid,
                    DistributionKind::Complete}) {
    for (auto weights : {WeightModel::Unit, WeightModel::IntegerBounded, WeightModel::RationalBounded,
                         WeightModel::PowersOfTwo}) {
      InstanceDistributionSpec spec;
      spec.kind = kind;
      spec.weights = weights;
      spec.n = 9;
      spec.ell = 6;
      spec.edge_probability = 0.5;
      for (std::uint64_t i = 0; i < 20; ++i) {
        const auto x = sample_instance(spec, i);
        EXPECT_TRUE(x.valid());
        EXPECT_EQ(x.size(), 9u);
        EXPECT_EQ(x.label(x.goal()), "v8");
        for (const auto& e : x.edges()) {
          EXPECT_GE(e.weight, 0);
          if (weights == WeightModel::Unit) EXPECT_EQ(e.weight, 1);
          if (weights == WeightModel::IntegerBounded) {
            EXPECT_TRUE(is_integer(e.weight));
            EXPECT_LE(e.weight, 6);
          }
          if (weights == WeightModel::RationalBounded) EXPECT_LE(e.weight, 6);
        }
        if (kind == DistributionKind::LayeredDag) EXPECT_EQ(x.start(), 0u);
        if (kind == DistributionKind::Complete) EXPECT_EQ(x.edges().size(), 72u);
      }
    }
  }
}

TEST(Generators, PowersOfTwoWeightsAreDistinctPowers) {
  const auto x = powers_of_two_gadget(4);
  ASSERT_EQ(x.edges().size(), 12u);
  Rational expected = 1;
  for (const auto& e : x.edges()) {
    EXPECT_EQ(e.weight, expected);
    expected *= 2;
  }
  EXPECT_EQ(x.start(), 0u);
  EXPECT_EQ(x.goal(), 3u);
}

TEST(Generators, InfeasibleSpecFailsAfterRetries) {
  auto spec = testing::er_spec(6, 1, 0, 0.0);
  spec.max_retries = 5;
  EXPECT_THROW(sample_instance(spec, 0), GeneratorFailure);
}

TEST(Generators, RejectsUnusableSpecs) {
  auto spec = testing::er_spec(1, 1, 0);
  EXPECT_THROW(sample_instance(spec, 0), InvalidInput);
  spec = testing::er_spec(5, 1, 0);
  spec.edge_probability = 1.5;
  EXPECT_THROW(sample_instance(spec, 0), InvalidInput);
  spec = testing::er_spec(5, 1, 0);
  spec.ell = -1;
  spec.weights = WeightModel::IntegerBounded;
  EXPECT_THROW(sample_instance(spec, 0), InvalidInput);
  EXPECT_THROW(parse_distribution_kind("small-world"), InvalidInput);
  EXPECT_THROW(parse_weight_model("gaussian"), InvalidInput);
}

TEST(Generators, LowerBoundFamilyKindCyclesThroughTheFamily) {
  InstanceDistributionSpec spec;
  spec.kind = DistributionKind::LowerBoundFamily;
  spec.n = 8;
  const auto family = build_lower_bound_family(8);
  for (std::uint64_t i = 0; i < 8; ++i) EXPECT_EQ(sample_instance(spec, i), family[i % 4]);
}

TEST(Generators, FileCorpusKindReadsSortedFiles) {
  InstanceDistributionSpec spec;
  spec.kind = DistributionKind::FileCorpus;
  spec.corpus_dir = testing::data_path("data/chain");
  EXPECT_EQ(sample_instance(spec, 0), testing::chain());
  EXPECT_EQ(sample_instance(spec, 5), testing::chain());
  spec.corpus_dir = testing::data_path("data/none");
  EXPECT_THROW(sample_instance(spec, 0), InvalidInput);
}

TEST(Generators, SpecJsonRoundTrip) {
  auto spec = testing::er_spec(12, 7, 99, 0.25);
  spec.kind = DistributionKind::Grid;
  spec.random_start = false;
  const auto back = spec_from_json(spec_to_json(spec));
  EXPECT_EQ(spec_to_json(back), spec_to_json(spec));
  EXPECT_THROW(spec_from_json(Json::parse(R"({"n":4})")), InvalidInput);
}

TEST(Generators, StartsVaryAcrossDraws) {
  const auto spec = testing::er_spec(8, 1, 5, 0.5);
  std::set<VertexId> starts;
  for (std::uint64_t i = 0; i < 100; ++i) starts.insert(sample_instance(spec, i).start());
  EXPECT_GT(starts.size(), 3u);
  EXPECT_EQ(starts.count(7), 0u);
}

}  // namespace
}  // namespace hlearn
