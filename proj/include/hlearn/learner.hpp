#pragma once

#include <vector>

#include "hlearn/instance.hpp"
#include "hlearn/search.hpp"

namespace hlearn {

/// Empirical inconsistency f(rho) = (1/N) sum_i delta_rho(x_i) over a fixed
/// training set. Canonical optimal paths are computed once at construction;
/// they do not depend on rho.
class InconsistencyObjective {
 public:
  explicit InconsistencyObjective(const std::vector<PathInstance>& instances);

  std::size_t vertex_count() const { return n_; }
  std::size_t instance_count() const { return terms_.size(); }
  const std::vector<CanonicalOptimalPath>& optimal_paths() const { return paths_; }

  Rational value(const HeuristicVector& rho) const;
  /// Value plus a subgradient scaled by N: counts[v] = #active terms leaving
  /// v minus #active terms entering v. Terms exactly at 0 contribute nothing.
  Rational value_and_subgradient(const HeuristicVector& rho, std::vector<long>& counts) const;

 private:
  struct Term {
    VertexId from;
    VertexId to;
    Rational weight;
  };
  std::size_t n_ = 0;
  std::vector<CanonicalOptimalPath> paths_;
  std::vector<std::vector<Term>> terms_;
};

/// Mean inconsistency over a non-empty instance list.
Rational empirical_inconsistency(const std::vector<PathInstance>& instances, const HeuristicVector& rho);

enum class LearnerInit { Zeros, ExactDistances, Given };

std::string_view to_string(LearnerInit init);
LearnerInit parse_learner_init(std::string_view text);  // "zeros" | "exact" | "given"

struct LearnerConfig {
  double eta = 0.5;          // base step
  double decay = 0.5;        // step at iteration t is eta / t^decay
  std::size_t max_steps = 2000;
  LearnerInit init = LearnerInit::Zeros;
  HeuristicVector initial;   // used with LearnerInit::Given
  unsigned step_bits = 24;   // steps are rounded down to multiples of 2^-step_bits
};

struct LearnerResult {
  HeuristicVector rho;             // best iterate seen
  Rational objective;              // f(rho)
  std::vector<Rational> history;   // f at every visited iterate, starting with the initial one
  std::size_t best_step = 0;
  std::size_t steps = 0;
  bool converged = false;          // reached the global minimum 0
};

/// Subgradient descent on the empirical inconsistency. Returns the best
/// iterate; stops early once the objective is exactly 0.
LearnerResult minimize_empirical_inconsistency(const InconsistencyObjective& objective, const LearnerConfig& config,
                                               const PathInstance* reference = nullptr);

/// Exact v-t distances on `instance`; vertices that cannot reach the goal get
/// (sum of all weights + 1).
HeuristicVector exact_distance_heuristic(const PathInstance& instance);

}  // namespace hlearn
