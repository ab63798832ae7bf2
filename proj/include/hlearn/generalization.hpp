#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hlearn/generators.hpp"
#include "hlearn/learner.hpp"
#include "hlearn/utility.hpp"

namespace hlearn {

enum class CandidateSource {
  Grid,     // a fixed finite set of candidate heuristic vectors
  Learner,  // the learner's output on each training set
};

struct GapExperimentConfig {
  InstanceDistributionSpec distribution;
  std::vector<std::size_t> sizes{8, 16, 32, 64, 128, 256, 512};
  std::size_t trials = 20;
  CandidateSource source = CandidateSource::Learner;
  MeasureKind measure = MeasureKind::Suboptimality;
  double delta = 0.05;  // reported only
  std::uint64_t seed = 0;
  std::size_t heldout = 2048;
  bool reopening = false;
  LearnerConfig learner{0.5, 0.5, 200, LearnerInit::Zeros, {}, 24};
  std::size_t grid_candidates = 32;
  unsigned jobs = 1;
};

/// Throws InvalidInput when sizes are not increasing, trials == 0 or delta is outside (0, 1).
void check_config(const GapExperimentConfig& config);
GapExperimentConfig gap_config_from_json(const Json& doc);
Json gap_config_to_json(const GapExperimentConfig& config);

struct GapRow {
  std::size_t n_train = 0;
  std::size_t trial = 0;
  Rational train_inc;
  Rational heldout_inc;
  Rational heldout_subopt;
  Rational heldout_slack;                // mean of opt + delta - cost
  std::optional<Rational> max_grid_gap;  // grid mode
  std::optional<Rational> learner_objective;
  std::uint64_t evaluated = 0;           // held-out instances checked pointwise
  std::uint64_t pointwise_violations = 0;
};

struct GapPoint {
  std::size_t n_train = 0;
  Rational mean_gap;  // learner: mean |train_inc - heldout_inc|; grid: mean max_grid_gap
  Rational mean_train_inc;
  Rational mean_heldout_inc;
  Rational mean_heldout_subopt;
  Rational mean_slack;
};

struct GapCurve {
  CandidateSource source = CandidateSource::Learner;
  std::size_t vertex_count = 0;
  std::vector<GapRow> rows;  // ordered by (N, trial)
  std::vector<GapPoint> points;
  std::uint64_t evaluated = 0;
  std::uint64_t pointwise_violations = 0;

  /// Adjacent pairs (N_k, N_{k+1}) whose mean gap increases.
  std::size_t gap_inversions() const;
};

/// Deterministic in (config, seed); independent of config.jobs.
GapCurve run_gap_experiment(const GapExperimentConfig& config);

/// CSV: N,trial,train_inc,heldout_inc,heldout_subopt,max_grid_gap
std::string gap_csv(const GapCurve& curve);

enum class PdimHint { NLogN, N2LogN };

struct BoundShapeReport {
  PdimHint hint = PdimHint::NLogN;
  double pdim = 0.0;
  double scale = 0.0;  // least-squares C in C * sqrt(pdim / N)
  std::vector<std::size_t> sizes;
  std::vector<double> observed;
  std::vector<double> reference;
};

BoundShapeReport report_bound_shape(const GapCurve& curve, PdimHint hint);

/// CSV: N,observed,ref_nlogn,ref_n2logn
std::string bound_shape_csv(const std::vector<BoundShapeReport>& reports);

}  // namespace hlearn
