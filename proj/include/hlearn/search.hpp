#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlearn/instance.hpp"
#include "hlearn/io.hpp"
#include "hlearn/rational.hpp"

namespace hlearn {

enum class Algorithm { Gbfs, AstarReopen, AstarNoReopen };

std::string_view to_string(Algorithm algo);
inline bool is_astar(Algorithm algo) { return algo != Algorithm::Gbfs; }

/// State after one iteration (one selection) of the search loop.
struct Snapshot {
  std::size_t iteration = 0;  // 1-based
  VertexId selected = 0;
  std::vector<VertexId> open;    // ascending vertex order
  std::vector<VertexId> closed;  // ascending vertex order
  std::vector<std::optional<VertexId>> parent;
  std::vector<std::optional<Rational>> g;  // empty for GBFS; nullopt = never generated
};

enum class TraceDetail {
  Full,     // one Snapshot per iteration
  Summary,  // selection order, path and cost only
};

struct SearchTrace {
  Algorithm algorithm = Algorithm::Gbfs;
  TraceDetail detail = TraceDetail::Full;
  std::size_t vertex_count = 0;
  std::vector<Snapshot> snapshots;
  /// Every selection in order; a reopened vertex appears more than once.
  std::vector<VertexId> selections;
  /// First-selection order (the monotone SELECTED list).
  std::vector<VertexId> selected;
  std::vector<VertexId> path;
  Rational cost;
  std::size_t reopenings = 0;

  std::size_t iterations() const { return selections.size(); }
};

struct SearchOptions {
  TraceDetail detail = TraceDetail::Full;
  /// 0 = unlimited. Exceeding it throws std::runtime_error.
  std::size_t max_iterations = 0;
};

/// Greedy best-first search: selects argmin rho over OPEN (ties to the
/// smaller vertex) and returns as soon as the goal is generated as a child.
SearchTrace run_gbfs(const PathInstance& instance, const HeuristicVector& rho, const SearchOptions& options = {});

/// A*: selects argmin g + rho over OPEN (ties to the smaller vertex), goal
/// test on selection. With `reopening`, a CLOSED child reached with strictly
/// smaller g moves back to OPEN.
SearchTrace run_astar(const PathInstance& instance, const HeuristicVector& rho, bool reopening,
                      const SearchOptions& options = {});

SearchTrace run_search(Algorithm algo, const PathInstance& instance, const HeuristicVector& rho,
                       const SearchOptions& options = {});

struct CanonicalOptimalPath {
  std::vector<VertexId> path;
  Rational cost;
};

/// Shortest distances from `source` (nullopt = unreachable).
std::vector<std::optional<Rational>> distances_from(const PathInstance& instance, VertexId source);
/// Shortest distances to `target` (nullopt = cannot reach target).
std::vector<std::optional<Rational>> distances_to(const PathInstance& instance, VertexId target);

/// Exact Opt(x) and the lexicographically least minimum-cost simple path
/// under the vertex order.
CanonicalOptimalPath dijkstra_opt(const PathInstance& instance);

/// Sum of edge weights along `path`; throws InvalidInput on a missing edge.
Rational path_cost(const PathInstance& instance, const std::vector<VertexId>& path);

/// Exact behavior witness: two fingerprints compare equal iff the traces have
/// the same algorithm, selections, snapshots (OPEN, CLOSED, parents, g) and
/// returned path.
struct TraceFingerprint {
  std::string canonical;

  /// Short hex digest of `canonical` for display.
  std::string digest() const;
  auto operator<=>(const TraceFingerprint&) const = default;
};

TraceFingerprint trace_fingerprint(const SearchTrace& trace);

/// {"algorithm":..,"snapshots":[{"iter","selected","open","closed","parent","g"}..],"path":[..],"cost":"p/q"}
Json trace_to_json(const SearchTrace& trace, const PathInstance& instance);
Json path_to_json(const std::vector<VertexId>& path, const PathInstance& instance);

}  // namespace hlearn
