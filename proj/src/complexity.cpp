#include "hlearn/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "hlearn/parallel.hpp"
#include "hlearn/random.hpp"

namespace hlearn {
namespace {

constexpr VertexId kS = 0;
constexpr VertexId kR = 1;
constexpr VertexId kT = 2;
VertexId labeled(std::size_t i) { return static_cast<VertexId>(2 + i); }

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f = saturating_mul(f, k);
  return f;
}

std::size_t common_size(const std::vector<PathInstance>& instances) {
  if (instances.empty()) throw InvalidInput("census needs at least one instance");
  const std::size_t n = instances.front().size();
  for (const auto& x : instances) {
    x.require_valid();
    if (x.size() != n) throw InvalidInput("census instances must share one vertex set");
  }
  return n;
}

bool is_consistent(const PathInstance& x, const HeuristicVector& rho) {
  for (const auto& e : x.edges()) {
    if (rho[e.from] > rho[e.to] + e.weight) return false;
  }
  return true;
}

struct ScoreEntry {
  Rational score;
  VertexId vertex;
};

std::vector<ScoreEntry> catalog_scores(const GCostCatalog& catalog, const HeuristicVector& rho) {
  std::vector<ScoreEntry> entries;
  for (VertexId v = 0; v < catalog.costs.size(); ++v) {
    for (const auto& g : catalog.costs[v]) entries.push_back({g + rho[v], v});
  }
  std::sort(entries.begin(), entries.end(), [](const ScoreEntry& a, const ScoreEntry& b) {
    return a.score != b.score ? a.score < b.score : a.vertex < b.vertex;
  });
  return entries;
}

}  // namespace

std::vector<PathInstance> build_lower_bound_family(std::size_t n) {
  if (n < 6) throw InvalidInput("lower-bound family needs n >= 6");
  std::vector<std::string> labels{"s", "r", "t"};
  for (std::size_t i = 1; i <= n - 3; ++i) labels.push_back(std::to_string(i));

  std::vector<PathInstance> family;
  for (std::size_t i = 1; i <= n - 4; ++i) {
    std::vector<Edge> edges;
    for (std::size_t v = 1; v <= n - 3; ++v) {
      edges.push_back({kS, labeled(v), 1});
      if (v > i) edges.push_back({labeled(v), kT, 1});
    }
    edges.push_back({labeled(i), kR, 1});
    edges.push_back({kR, kT, 1});
    family.emplace_back(labels, std::move(edges), kS, kT);
  }
  return family;
}

SubsetMask subset_mask(const std::vector<std::size_t>& members) {
  SubsetMask mask = 0;
  for (auto i : members) {
    if (i == 0 || i > 64) throw InvalidInput("subset member out of range");
    mask |= SubsetMask{1} << (i - 1);
  }
  return mask;
}

HeuristicVector rho_for_subset(std::size_t n, SubsetMask subset) {
  if (n < 6) throw InvalidInput("lower-bound family needs n >= 6");
  if (n - 4 < 64 && (subset >> (n - 4)) != 0) throw InvalidInput("subset must lie within [n-4]");
  const Rational big(static_cast<long>(n));
  HeuristicVector rho(n);
  rho[kS] = big;
  rho[kR] = 0;
  rho[kT] = 0;
  for (std::size_t i = 1; i <= n - 3; ++i) {
    const bool small = i == n - 3 || ((subset >> (i - 1)) & 1U);
    rho[labeled(i)] = small ? Rational(static_cast<long>(i + 2)) : big;
  }
  return rho;
}

HeuristicVector rho_for_subset(std::size_t n, const std::vector<std::size_t>& subset) {
  return rho_for_subset(n, subset_mask(subset));
}

ShatterResult verify_shattering(std::size_t n, Algorithm algo, const ShatterOptions& options) {
  const auto family = build_lower_bound_family(n);
  const std::size_t count = family.size();
  if (count > 63) throw InvalidInput("n too large for shattering patterns");
  const Rational threshold = make_rational(5, 2);
  const SubsetMask space = SubsetMask{1} << count;

  ShatterResult result;
  result.n = n;
  result.algorithm = algo;
  result.instance_count = count;
  result.thresholds.assign(count, threshold);
  result.exhaustive = options.exhaustive;

  std::vector<SubsetMask> subsets;
  if (options.exhaustive) {
    if (count > 24) throw InvalidInput("exhaustive shattering limited to n <= 28");
    subsets.resize(space);
    std::iota(subsets.begin(), subsets.end(), SubsetMask{0});
  } else {
    Rng rng(options.seed);
    for (std::size_t k = 0; k < options.samples; ++k) subsets.push_back(rng.next() & (space - 1));
  }

  std::vector<std::uint64_t> patterns(subsets.size());
  const SearchOptions summary{TraceDetail::Summary, 0};
  parallel_for(subsets.size(), options.jobs, [&](std::size_t k) {
    const auto rho = rho_for_subset(n, subsets[k]);
    std::uint64_t pattern = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto trace = run_search(algo, family[i], rho, summary);
      if (trace.cost >= threshold) pattern |= std::uint64_t{1} << i;
    }
    patterns[k] = pattern;
  });

  std::map<std::uint64_t, SubsetMask> achieved;
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    if (patterns[k] != subsets[k]) {
      throw ConstructionViolation("pattern " + std::to_string(patterns[k]) + " differs from subset " +
                                  std::to_string(subsets[k]) + " at n=" + std::to_string(n));
    }
    achieved.emplace(patterns[k], subsets[k]);
  }
  result.subsets_tested = subsets.size();
  for (const auto& [pattern, witness] : achieved) {
    result.achieved.push_back(pattern);
    result.witnesses.push_back(witness);
  }
  result.missing_count = space - result.achieved.size();
  return result;
}

Json shatter_to_json(const ShatterResult& result, bool include_patterns) {
  Json doc{{"n", result.n},
           {"algorithm", std::string(to_string(result.algorithm))},
           {"instances", result.instance_count},
           {"threshold", result.thresholds.empty() ? "" : to_string(result.thresholds.front())},
           {"exhaustive", result.exhaustive},
           {"subsets_tested", result.subsets_tested},
           {"achieved", result.achieved.size()},
           {"pattern_space", result.pattern_space()},
           {"missing", result.missing_count},
           {"shattered", result.shattered()}};
  if (include_patterns) {
    Json patterns = Json::array();
    for (std::size_t k = 0; k < result.achieved.size(); ++k) {
      patterns.push_back(Json{{"pattern", result.achieved[k]}, {"witness_subset", result.witnesses[k]}});
    }
    doc["patterns"] = std::move(patterns);
  }
  return doc;
}

std::size_t GCostCatalog::total_size() const {
  std::size_t total = 0;
  for (const auto& c : costs) total += c.size();
  return total;
}

GCostCatalog gcost_catalog(const PathInstance& instance, const CatalogOptions& options) {
  instance.require_valid();
  const std::size_t n = instance.size();
  if (n > options.max_vertices) {
    throw CatalogOverflow("catalog refused: n=" + std::to_string(n) + " exceeds cap " +
                              std::to_string(options.max_vertices),
                          0);
  }

  GCostCatalog catalog;
  catalog.path_counts.assign(n, 0);
  std::vector<std::set<Rational>> sets(n);
  std::vector<bool> on_path(n, false);
  std::uint64_t paths = 0;

  std::function<void(VertexId, const Rational&)> dfs = [&](VertexId v, const Rational& cost) {
    sets[v].insert(cost);
    ++catalog.path_counts[v];
    if (++paths > options.max_paths) {
      throw CatalogOverflow("catalog refused: more than " + std::to_string(options.max_paths) + " simple paths",
                            paths);
    }
    on_path[v] = true;
    for (const auto& arc : instance.successors(v)) {
      if (!on_path[arc.to]) dfs(arc.to, cost + arc.weight);
    }
    on_path[v] = false;
  };
  dfs(instance.start(), Rational(0));

  catalog.costs.resize(n);
  for (VertexId v = 0; v < n; ++v) catalog.costs[v].assign(sets[v].begin(), sets[v].end());
  for (VertexId v = 0; v < n; ++v) catalog.max_out_degree = std::max(catalog.max_out_degree, instance.successors(v).size());

  bool all_integer = true;
  std::int64_t max_weight = 0;
  for (const auto& e : instance.edges()) {
    if (!is_integer(e.weight) || !e.weight.get_num().fits_slong_p()) {
      all_integer = false;
      break;
    }
    max_weight = std::max<std::int64_t>(max_weight, e.weight.get_num().get_si());
  }
  if (all_integer) catalog.integer_weight_bound = max_weight;

  // Simple s-v paths under out-degree d: at most sum_{k=0}^{n-2} d^k.
  std::uint64_t degree_bound = 0;
  std::uint64_t power = 1;
  for (std::size_t k = 0; k + 2 <= n; ++k) {
    degree_bound = saturating_add(degree_bound, power);
    power = saturating_mul(power, catalog.max_out_degree);
  }

  for (VertexId v = 0; v < n; ++v) {
    const std::size_t size = catalog.costs[v].size();
    if (size > catalog.path_counts[v]) {
      throw CensusViolation("|G_v| exceeds simple path count at '" + instance.label(v) + "'");
    }
    if (catalog.integer_weight_bound) {
      const auto cap = std::max<std::uint64_t>(saturating_mul(n, static_cast<std::uint64_t>(max_weight)), 1);
      if (size > cap) throw CensusViolation("|G_v| exceeds n*l at '" + instance.label(v) + "'");
    }
    if (v != instance.start() && catalog.path_counts[v] > degree_bound) {
      throw CensusViolation("simple path count exceeds the out-degree bound at '" + instance.label(v) + "'");
    }
  }

  if (n >= 2 && instance.edges().size() == n * (n - 1)) {
    // Complete digraph: sum_{k=0}^{n-2} (n-2)!/(n-2-k)! simple s-v paths per v != s.
    std::uint64_t exact = 0;
    std::uint64_t closed_form = 0;
    std::uint64_t falling = 1;
    for (std::size_t k = 0; k + 2 <= n; ++k) {
      exact = saturating_add(exact, falling);
      closed_form = saturating_add(closed_form, factorial(k));
      falling = saturating_mul(falling, n - 2 - k);
    }
    if (exact != closed_form) {
      catalog.notes.push_back("complete digraph: " + std::to_string(exact) + " simple s-v paths per vertex; the " +
                              "closed form sum_{k=0}^{n-2} k! gives " + std::to_string(closed_form));
    }
  }
  return catalog;
}

Json catalog_to_json(const GCostCatalog& catalog, const PathInstance& instance) {
  Json vertices = Json::array();
  for (VertexId v = 0; v < catalog.costs.size(); ++v) {
    Json costs = Json::array();
    for (const auto& c : catalog.costs[v]) costs.push_back(to_string(c));
    vertices.push_back(Json{{"vertex", instance.label(v)},
                            {"distinct_costs", catalog.costs[v].size()},
                            {"simple_paths", catalog.path_counts[v]},
                            {"costs", std::move(costs)}});
  }
  Json doc{{"n", instance.size()},
           {"total_size", catalog.total_size()},
           {"max_out_degree", catalog.max_out_degree},
           {"vertices", std::move(vertices)}};
  if (catalog.integer_weight_bound) doc["integer_weight_bound"] = *catalog.integer_weight_bound;
  doc["notes"] = catalog.notes;
  return doc;
}

std::optional<Rational> min_score_gap(const GCostCatalog& catalog, const HeuristicVector& rho) {
  const auto entries = catalog_scores(catalog, rho);
  std::optional<Rational> gap;
  for (std::size_t k = 1; k < entries.size(); ++k) {
    Rational d = entries[k].score - entries[k - 1].score;
    if (sgn(d) > 0 && (!gap || d < *gap)) gap = d;
  }
  return gap;
}

std::vector<std::size_t> score_tie_components(const GCostCatalog& catalog, const HeuristicVector& rho) {
  const std::size_t n = catalog.costs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = root(parent[v]);
  };
  const auto entries = catalog_scores(catalog, rho);
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].score == entries[k - 1].score) parent[root(entries[k].vertex)] = root(entries[k - 1].vertex);
  }
  std::vector<std::size_t> component(n);
  for (std::size_t v = 0; v < n; ++v) component[v] = root(v);
  return component;
}

HeuristicVector tie_preserving_perturbation(const GCostCatalog& catalog, const HeuristicVector& rho, Rng& rng) {
  const auto gap = min_score_gap(catalog, rho);
  const Rational half_gap = gap ? Rational(*gap / 2) : Rational(1);
  const auto component = score_tie_components(catalog, rho);
  constexpr std::int64_t kSteps = 1000;
  std::map<std::size_t, Rational> offset;
  HeuristicVector out = rho;
  for (VertexId v = 0; v < rho.size(); ++v) {
    auto it = offset.find(component[v]);
    if (it == offset.end()) {
      // |k| <= kSteps keeps the offset strictly inside (-gamma/2, gamma/2).
      const Rational eps = half_gap * make_rational(rng.between(-kSteps, kSteps), kSteps + 1);
      it = offset.emplace(component[v], eps).first;
    }
    out[v] += it->second;
  }
  return out;
}

CensusReport gbfs_behavior_census(const std::vector<PathInstance>& instances, std::uint64_t seed) {
  const std::size_t n = common_size(instances);
  if (n > 7) throw InvalidInput("GBFS census enumerates n! orders; n must be <= 7");

  CensusReport report;
  report.algorithm = Algorithm::Gbfs;
  report.instance_count = instances.size();
  report.vertex_count = n;
  report.order_count = factorial(n);

  Rng rng(seed);
  std::set<std::vector<TraceFingerprint>> tuples;
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  auto tuple_for = [&](const HeuristicVector& rho) {
    std::vector<TraceFingerprint> tuple;
    for (const auto& x : instances) tuple.push_back(trace_fingerprint(run_gbfs(x, rho)));
    return tuple;
  };
  do {
    std::vector<Rational> by_rank(n);
    Rational level(static_cast<long>(rng.between(-50, 50)));
    for (std::size_t k = 0; k < n; ++k) {
      level += make_rational(rng.between(1, 1000), rng.between(1, 7));
      by_rank[k] = level;
    }
    HeuristicVector rho(n);
    HeuristicVector remapped(n);
    for (VertexId v = 0; v < n; ++v) {
      rho[v] = rank[v];
      remapped[v] = by_rank[rank[v]];
    }
    auto tuple = tuple_for(rho);
    if (tuple_for(remapped) != tuple) {
      throw CensusViolation("order-equal heuristic vectors produced different GBFS behavior");
    }
    ++report.order_pair_checks;
    tuples.insert(std::move(tuple));
    report.rho_evaluated += 2;
  } while (std::next_permutation(rank.begin(), rank.end()));

  report.distinct_tuples = tuples.size();
  if (report.distinct_tuples > report.order_count) {
    throw CensusViolation("more distinct GBFS behaviors than vertex orders");
  }
  return report;
}

CensusReport astar_behavior_census(const std::vector<PathInstance>& instances, const RhoSampleSpec& sample,
                                   bool reopening) {
  const std::size_t n = common_size(instances);
  if (sample.hi < sample.lo) throw InvalidInput("rho sample range is empty");

  CensusReport report;
  report.algorithm = reopening ? Algorithm::AstarReopen : Algorithm::AstarNoReopen;
  report.instance_count = instances.size();
  report.vertex_count = n;

  std::vector<GCostCatalog> catalogs;
  std::vector<Rational> opts;
  for (const auto& x : instances) {
    catalogs.push_back(gcost_catalog(x));
    opts.push_back(dijkstra_opt(x).cost);
    const std::uint64_t size = catalogs.back().total_size();
    report.hyperplanes = saturating_add(report.hyperplanes, size * (size - 1) / 2);
  }
  // m hyperplanes cut R^n into at most 2 (e m)^n regions for m >= n.
  const double m = std::max<double>(static_cast<double>(report.hyperplanes), static_cast<double>(n));
  report.log10_region_bound = std::log10(2.0) + static_cast<double>(n) * std::log10(std::exp(1.0) * m);
  if (report.hyperplanes < n) report.notes.push_back("fewer hyperplanes than dimensions; bound evaluated at m = n");

  std::vector<HeuristicVector> samples;
  if (sample.grid_points > 0) {
    const std::size_t k = sample.grid_points;
    const double total = std::pow(static_cast<double>(k), static_cast<double>(n));
    if (total > 2e6) throw InvalidInput("rho grid too large");
    std::vector<std::size_t> digits(n, 0);
    const Rational step = k == 1 ? Rational(0) : make_rational(sample.hi - sample.lo, static_cast<long>(k - 1));
    while (true) {
      HeuristicVector rho(n);
      for (VertexId v = 0; v < n; ++v) rho[v] = Rational(sample.lo) + step * static_cast<long>(digits[v]);
      samples.push_back(std::move(rho));
      std::size_t pos = 0;
      while (pos < n && ++digits[pos] == k) digits[pos++] = 0;
      if (pos == n) break;
    }
  }
  Rng rng(sample.seed);
  for (std::size_t k = 0; k < sample.random_samples; ++k) {
    HeuristicVector rho(n);
    for (VertexId v = 0; v < n; ++v) rho[v] = make_rational(rng.between(sample.lo * 8, sample.hi * 8), 8);
    samples.push_back(std::move(rho));
  }

  std::set<std::vector<TraceFingerprint>> tuples;
  for (const auto& rho : samples) {
    std::vector<TraceFingerprint> tuple;
    for (std::size_t k = 0; k < instances.size(); ++k) {
      const auto trace = run_astar(instances[k], rho, reopening);
      if (is_consistent(instances[k], rho)) {
        ++report.consistent_samples;
        if (trace.cost != opts[k]) throw CensusViolation("consistent heuristic returned a suboptimal path");
      }
      tuple.push_back(trace_fingerprint(trace));
    }
    const Rational c = make_rational(rng.between(-1000, 1000), rng.between(1, 9));
    if (trace_fingerprint(run_astar(instances.front(), shifted(rho, c), reopening)) != tuple.front()) {
      throw CensusViolation("rho and rho + c produced different A* behavior");
    }
    ++report.shift_checks;
    const auto perturbed = tie_preserving_perturbation(catalogs.front(), rho, rng);
    if (trace_fingerprint(run_astar(instances.front(), perturbed, reopening)) != tuple.front()) {
      throw CensusViolation("score-order-preserving perturbation changed A* behavior");
    }
    tuples.insert(std::move(tuple));
    ++report.rho_evaluated;
  }
  report.distinct_tuples = tuples.size();
  if (std::log10(static_cast<double>(std::max<std::uint64_t>(report.distinct_tuples, 1))) >
      report.log10_region_bound) {
    throw CensusViolation("more distinct A* behaviors than arrangement regions");
  }
  return report;
}

Json census_to_json(const CensusReport& report) {
  Json doc{{"algorithm", std::string(to_string(report.algorithm))},
           {"instances", report.instance_count},
           {"n", report.vertex_count},
           {"rho_evaluated", report.rho_evaluated},
           {"distinct_tuples", report.distinct_tuples}};
  if (report.algorithm == Algorithm::Gbfs) {
    doc["order_count"] = report.order_count;
    doc["order_pair_checks"] = report.order_pair_checks;
  } else {
    doc["hyperplanes"] = report.hyperplanes;
    doc["log10_region_bound"] = report.log10_region_bound;
    doc["shift_checks"] = report.shift_checks;
    doc["consistent_samples"] = report.consistent_samples;
  }
  doc["notes"] = report.notes;
  return doc;
}

}  // namespace hlearn
