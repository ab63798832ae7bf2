#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hlearn/instance.hpp"
#include "hlearn/io.hpp"
#include "hlearn/search.hpp"

namespace hlearn {

/// max{rho_v - rho_c - w, 0} for one edge of the canonical optimal path.
struct EdgeTerm {
  VertexId from;
  VertexId to;
  Rational value;
};

struct InconsistencyReport {
  Rational delta;
  std::vector<EdgeTerm> terms;  // canonical optimal path edges, the edge leaving s excluded
  std::vector<VertexId> optimal_path;
  Rational opt;
  // Filled by check_suboptimality_bound.
  std::optional<Algorithm> algorithm;
  std::optional<Rational> cost;
  std::optional<Rational> slack;  // opt + delta - cost
};

/// Deliberate defects for exercising the violation paths.
enum class FaultInjection {
  None,
  FlipMaxToMin,  // per-edge terms use min{., 0} instead of max{., 0}
};

/// Inconsistency of rho along the canonical optimal path of `instance`.
InconsistencyReport inconsistency(const PathInstance& instance, const HeuristicVector& rho,
                                  FaultInjection fault = FaultInjection::None);

/// Same, along a caller-supplied optimal path.
InconsistencyReport inconsistency_on_path(const PathInstance& instance, const CanonicalOptimalPath& optimal,
                                          const HeuristicVector& rho, FaultInjection fault = FaultInjection::None);

/// Runs A* in the given mode and certifies Cost <= Opt + delta. Throws
/// CertificateViolation when the slack is negative.
InconsistencyReport check_suboptimality_bound(const PathInstance& instance, const HeuristicVector& rho,
                                              bool reopening, FaultInjection fault = FaultInjection::None);

Json inconsistency_to_json(const InconsistencyReport& report, const PathInstance& instance);

/// Result of replaying the worst-case analysis of A* against a real trace.
struct LedgerReport {
  std::vector<VertexId> optimal_path;  // v_0 .. v_k
  /// prefix_inc[i] = sum_{j=1}^{i-1} Inc(v_j, v_{j+1})
  std::vector<Rational> prefix_inc;
  /// Index (into optimal_path) of the shallowest vertex after iteration tau, tau = 0..T.
  std::vector<std::size_t> shallowest;
  std::size_t final_iteration = 0;  // T: the goal is selected at iteration T+1
  std::uint64_t g_error_checks = 0;
  Rational cost;
  Rational opt;
  Rational delta;
  /// Opt + dg_T(v_i) + rho_{v_i} - rho*_{v_i} - rho_t for the shallowest v_i at T.
  Rational decomposition_bound;
};

/// Instruments an A* run: a shallowest optimal-path vertex exists after every
/// iteration tau <= T; every selected v_i on the optimal path has g-cost
/// error at most prefix_inc[i]; g-costs never increase; and
/// Cost <= decomposition_bound <= Opt + delta. Throws LedgerViolation on the
/// first failed check.
LedgerReport verify_appendix_ledger(const PathInstance& instance, const HeuristicVector& rho, bool reopening);

Json ledger_to_json(const LedgerReport& report, const PathInstance& instance);

/// Random (instance, rho, reopening) triples over integer-weight Erdos-Renyi
/// graphs, each certified with check_suboptimality_bound and (unless a fault
/// is injected) verify_appendix_ledger.
struct BoundSweepOptions {
  std::size_t count = 10000;
  std::size_t min_vertices = 4;
  std::size_t max_vertices = 32;
  std::int64_t max_ell = 16;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  FaultInjection fault = FaultInjection::None;
};

struct BoundSweepReport {
  std::size_t count = 0;
  std::size_t reopening_runs = 0;
  std::size_t suboptimal_runs = 0;  // cost > opt
  std::size_t tight_runs = 0;       // slack == 0
  Rational min_slack;
  std::uint64_t g_error_checks = 0;
};

/// Throws the first violation (lowest triple index), annotated with the index.
BoundSweepReport run_bound_sweep(const BoundSweepOptions& options);

Json bound_sweep_to_json(const BoundSweepReport& report);

}  // namespace hlearn
