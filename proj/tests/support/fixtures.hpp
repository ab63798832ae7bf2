#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hlearn/generators.hpp"
#include "hlearn/instance.hpp"
#include "hlearn/random.hpp"
#include "hlearn/search.hpp"

namespace hlearn::testing {

inline std::string data_path(const std::string& relative) { return std::string(HLEARN_TEST_DATA) + "/" + relative; }

// s -> a -> b -> t, unit weights.
inline PathInstance chain() {
  return PathInstance::from_labels({"s", "a", "b", "t"}, {{"s", "a", 1}, {"a", "b", 1}, {"b", "t", 1}}, "s", "t");
}

inline HeuristicVector chain_rho() { return HeuristicVector(std::vector<Rational>{0, 3, 1, 0}); }

// Reopening changes the answer: with reopening A* returns s,a,b,c,t (cost 4),
// without it s,b,c,t (cost 5).
inline PathInstance reopen_fixture() {
  return PathInstance::from_labels({"s", "a", "b", "c", "t"},
                                   {{"s", "a", 1}, {"s", "b", 3}, {"a", "b", 1}, {"b", "c", 1}, {"c", "t", 1}}, "s",
                                   "t");
}

inline HeuristicVector reopen_rho() { return HeuristicVector(std::vector<Rational>{0, 3, 0, 0, 0}); }

// Every simple s-t path, by DFS in vertex order (so the list is lexicographic).
inline std::vector<std::vector<VertexId>> simple_paths(const PathInstance& x, VertexId from, VertexId to) {
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> path{from};
  std::vector<bool> on(x.size(), false);
  on[from] = true;
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    if (v == to) {
      out.push_back(path);
      return;
    }
    for (const auto& arc : x.successors(v)) {
      if (on[arc.to]) continue;
      on[arc.to] = true;
      path.push_back(arc.to);
      dfs(arc.to);
      path.pop_back();
      on[arc.to] = false;
    }
  };
  dfs(from);
  return out;
}

inline InstanceDistributionSpec er_spec(std::size_t n, std::int64_t ell, std::uint64_t seed, double p = 0.35) {
  InstanceDistributionSpec spec;
  spec.kind = DistributionKind::ErdosRenyi;
  spec.n = n;
  spec.weights = ell > 0 ? WeightModel::IntegerBounded : WeightModel::Unit;
  spec.ell = ell > 0 ? ell : 1;
  spec.edge_probability = p;
  spec.seed = seed;
  return spec;
}

inline HeuristicVector random_rho(std::size_t n, std::int64_t lo, std::int64_t hi, Rng& rng) {
  HeuristicVector rho(n);
  for (std::size_t v = 0; v < n; ++v) rho[v] = static_cast<long>(rng.between(lo, hi));
  return rho;
}

}  // namespace hlearn::testing
