#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlearn/errors.hpp"
#include "hlearn/instance.hpp"
#include "hlearn/io.hpp"
#include "hlearn/search.hpp"

namespace hlearn {

// ---------------------------------------------------------------------------
// Lower-bound family
// ---------------------------------------------------------------------------

/// The n-4 unit-weight instances x_1..x_{n-4} over vertices ordered
/// s < r < t < 1 < ... < n-3. x_i has (s,v) for every labeled v, (v,t) for
/// v > i, and (i,r), (r,t). Throws InvalidInput when n < 6.
std::vector<PathInstance> build_lower_bound_family(std::size_t n);

/// Subset of [n-4] encoded as a bitmask: bit (i-1) set iff i is in S.
using SubsetMask = std::uint64_t;

SubsetMask subset_mask(const std::vector<std::size_t>& members);

/// rho_s = n, rho_r = rho_t = 0, rho_i = i+2 for i in S or i = n-3, rho_i = n otherwise.
HeuristicVector rho_for_subset(std::size_t n, SubsetMask subset);
HeuristicVector rho_for_subset(std::size_t n, const std::vector<std::size_t>& subset);

struct ShatterOptions {
  bool exhaustive = true;
  std::size_t samples = 4096;  // subsets drawn when not exhaustive
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct ShatterResult {
  std::size_t n = 0;
  Algorithm algorithm = Algorithm::Gbfs;
  std::size_t instance_count = 0;
  std::vector<Rational> thresholds;
  bool exhaustive = true;
  std::uint64_t subsets_tested = 0;
  /// Achieved sign patterns (bit i-1 = 1 iff utility on x_i >= threshold), ascending.
  std::vector<std::uint64_t> achieved;
  /// Witness subset for each achieved pattern (parallel to `achieved`).
  std::vector<SubsetMask> witnesses;
  std::uint64_t missing_count = 0;

  std::uint64_t pattern_space() const { return std::uint64_t{1} << instance_count; }
  bool shattered() const { return achieved.size() == pattern_space(); }
};

/// Runs `algo` on every x_i with rho_for_subset(n, S) for every S (or a
/// sample of subsets), thresholds path cost at 2.5 and records the patterns.
/// Throws ConstructionViolation when some pattern differs from indicator(S).
ShatterResult verify_shattering(std::size_t n, Algorithm algo, const ShatterOptions& options = {});

Json shatter_to_json(const ShatterResult& result, bool include_patterns);

// ---------------------------------------------------------------------------
// g-cost catalogs
// ---------------------------------------------------------------------------

struct CatalogOptions {
  std::size_t max_vertices = 12;
  std::uint64_t max_paths = 20'000'000;
};

struct GCostCatalog {
  /// Distinct simple s-v path costs per vertex, ascending.
  std::vector<std::vector<Rational>> costs;
  /// Number of simple s-v paths per vertex (the empty path counts for s).
  std::vector<std::uint64_t> path_counts;
  std::size_t max_out_degree = 0;
  /// Set when every weight is an integer: the largest weight.
  std::optional<std::int64_t> integer_weight_bound;
  std::vector<std::string> notes;

  std::size_t total_size() const;
};

class CatalogOverflow : public InvalidInput {
 public:
  CatalogOverflow(const std::string& what, std::uint64_t paths_seen)
      : InvalidInput(what), paths_seen_(paths_seen) {}
  std::uint64_t paths_seen() const { return paths_seen_; }

 private:
  std::uint64_t paths_seen_;
};

/// Enumerates every simple s-v path by DFS. Checks |G_v| <= #paths,
/// |G_v| <= max(n*l, 1) under integer weights bounded by l, and
/// #paths <= sum_{k=0}^{n-2} d^k under out-degree d; a failed check throws
/// CensusViolation. Throws CatalogOverflow past the size caps.
GCostCatalog gcost_catalog(const PathInstance& instance, const CatalogOptions& options = {});

Json catalog_to_json(const GCostCatalog& catalog, const PathInstance& instance);

/// Smallest positive |(g + rho_v) - (g' + rho_w)| over all catalog pairs,
/// nullopt when all scores coincide.
std::optional<Rational> min_score_gap(const GCostCatalog& catalog, const HeuristicVector& rho);

/// Groups of vertices linked by an exact score tie (g + rho_v == g' + rho_w, v != w).
/// Returns a component id per vertex.
std::vector<std::size_t> score_tie_components(const GCostCatalog& catalog, const HeuristicVector& rho);

// ---------------------------------------------------------------------------
// Behavior censuses
// ---------------------------------------------------------------------------

struct CensusReport {
  Algorithm algorithm = Algorithm::Gbfs;
  std::size_t instance_count = 0;
  std::size_t vertex_count = 0;
  std::uint64_t rho_evaluated = 0;
  std::uint64_t distinct_tuples = 0;
  // GBFS
  std::uint64_t order_count = 0;  // n!
  std::uint64_t order_pair_checks = 0;
  // A*
  std::uint64_t hyperplanes = 0;     // sum_k C(|G_V(x_k)|, 2)
  double log10_region_bound = 0.0;   // log10(2 (e M)^n)
  std::uint64_t shift_checks = 0;
  std::uint64_t consistent_samples = 0;
  std::vector<std::string> notes;
};

/// Runs GBFS for every rank vector (all n! vertex orders) on each instance
/// and counts distinct fingerprint tuples. Each rank vector is paired with a
/// random order-preserving remap whose tuple must coincide. Throws
/// CensusViolation on a count above n! or a non-colliding pair.
CensusReport gbfs_behavior_census(const std::vector<PathInstance>& instances, std::uint64_t seed = 0);

struct RhoSampleSpec {
  std::size_t grid_points = 4;  // per coordinate, over [lo, hi]; 0 disables the grid
  std::size_t random_samples = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 6;
  std::uint64_t seed = 0;
};

/// Samples rho, counts distinct A* fingerprint tuples and compares with the
/// hyperplane-arrangement bound 2 (e M)^n. Also checks that rho and rho + c
/// collide and that consistent samples return optimal costs. Throws
/// CensusViolation on any failed check.
CensusReport astar_behavior_census(const std::vector<PathInstance>& instances, const RhoSampleSpec& sample,
                                   bool reopening);

Json census_to_json(const CensusReport& report);

}  // namespace hlearn

namespace hlearn {

class Rng;

/// rho plus a per-component offset of magnitude below gamma/2 (gamma =
/// min_score_gap), equal within each score-tie component. Preserves the
/// strict order and every exact tie of the catalog scores.
HeuristicVector tie_preserving_perturbation(const GCostCatalog& catalog, const HeuristicVector& rho, Rng& rng);

}  // namespace hlearn
