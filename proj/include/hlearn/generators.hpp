#pragma once

#include <cstdint>
#include <string>

#include "hlearn/instance.hpp"
#include "hlearn/io.hpp"

namespace hlearn {

enum class DistributionKind { ErdosRenyi, LayeredDag, Grid, Complete, LowerBoundFamily, FileCorpus };
enum class WeightModel { Unit, IntegerBounded, RationalBounded, PowersOfTwo };

/// A concrete instance distribution. Random kinds use labels v0..v{n-1} with
/// the goal fixed at v{n-1}, so every draw shares one vertex set and goal.
struct InstanceDistributionSpec {
  DistributionKind kind = DistributionKind::ErdosRenyi;
  std::size_t n = 8;
  WeightModel weights = WeightModel::Unit;
  std::int64_t ell = 1;           // weight bound for the bounded models
  std::uint64_t seed = 0;
  double edge_probability = 0.3;  // ER / layered-dag / grid edge keep probability
  bool random_start = true;       // ER, grid, complete: start drawn from v0..v{n-2}
  std::size_t max_retries = 1000;
  std::string corpus_dir;         // file-corpus only
};

std::string_view to_string(DistributionKind kind);
std::string_view to_string(WeightModel model);
DistributionKind parse_distribution_kind(std::string_view text);
WeightModel parse_weight_model(std::string_view text);

Json spec_to_json(const InstanceDistributionSpec& spec);
InstanceDistributionSpec spec_from_json(const Json& doc);

/// Deterministic in (spec, index); the result passes validate(). Throws
/// GeneratorFailure when no feasible draw is found within max_retries, and
/// InvalidInput for an unusable spec.
PathInstance sample_instance(const InstanceDistributionSpec& spec, std::uint64_t index);

/// Complete digraph on n vertices (s = first, t = last) whose i-th edge in
/// (from, to) order weighs 2^(i-1).
PathInstance powers_of_two_gadget(std::size_t n);

}  // namespace hlearn
