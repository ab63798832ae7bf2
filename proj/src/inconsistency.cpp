#include "hlearn/inconsistency.hpp"

#include <sstream>

#include "hlearn/errors.hpp"
#include "hlearn/generators.hpp"
#include "hlearn/parallel.hpp"
#include "hlearn/random.hpp"

namespace hlearn {
namespace {

Rational edge_term(const Rational& diff, FaultInjection fault) {
  if (fault == FaultInjection::FlipMaxToMin) return sgn(diff) < 0 ? diff : Rational(0);
  return sgn(diff) > 0 ? diff : Rational(0);
}

[[noreturn]] void ledger_fail(const std::string& what, std::size_t tau) {
  throw LedgerViolation(what + " (after iteration " + std::to_string(tau) + ")");
}

}  // namespace

InconsistencyReport inconsistency_on_path(const PathInstance& instance, const CanonicalOptimalPath& optimal,
                                          const HeuristicVector& rho, FaultInjection fault) {
  if (rho.size() != instance.size()) throw InvalidInput("heuristic vector size mismatch");
  InconsistencyReport report;
  report.optimal_path = optimal.path;
  report.opt = optimal.cost;
  report.delta = 0;
  for (std::size_t j = 1; j + 1 < optimal.path.size(); ++j) {
    const VertexId v = optimal.path[j];
    const VertexId c = optimal.path[j + 1];
    const Rational* w = instance.weight(v, c);
    if (w == nullptr) throw InvalidInput("optimal path uses a missing edge");
    EdgeTerm term{v, c, edge_term(rho[v] - rho[c] - *w, fault)};
    report.delta += term.value;
    report.terms.push_back(std::move(term));
  }
  return report;
}

InconsistencyReport inconsistency(const PathInstance& instance, const HeuristicVector& rho, FaultInjection fault) {
  return inconsistency_on_path(instance, dijkstra_opt(instance), rho, fault);
}

InconsistencyReport check_suboptimality_bound(const PathInstance& instance, const HeuristicVector& rho,
                                              bool reopening, FaultInjection fault) {
  auto report = inconsistency(instance, rho, fault);
  const auto trace = run_astar(instance, rho, reopening, {TraceDetail::Summary, 0});
  report.algorithm = trace.algorithm;
  report.cost = trace.cost;
  report.slack = report.opt + report.delta - trace.cost;
  if (sgn(*report.slack) < 0) {
    throw CertificateViolation("suboptimality bound violated: cost " + to_string(trace.cost) + " > opt " +
                               to_string(report.opt) + " + delta " + to_string(report.delta));
  }
  return report;
}

Json inconsistency_to_json(const InconsistencyReport& report, const PathInstance& instance) {
  Json terms = Json::array();
  for (const auto& t : report.terms) {
    terms.push_back(Json{{"u", instance.label(t.from)}, {"v", instance.label(t.to)}, {"inc", to_string(t.value)}});
  }
  Json doc{{"delta", to_string(report.delta)},
           {"terms", std::move(terms)},
           {"optimal_path", path_to_json(report.optimal_path, instance)},
           {"opt", to_string(report.opt)}};
  if (report.algorithm) doc["algorithm"] = std::string(to_string(*report.algorithm));
  if (report.cost) doc["cost"] = to_string(*report.cost);
  if (report.slack) doc["slack"] = to_string(*report.slack);
  return doc;
}

LedgerReport verify_appendix_ledger(const PathInstance& instance, const HeuristicVector& rho, bool reopening) {
  const auto optimal = dijkstra_opt(instance);
  const auto inc = inconsistency_on_path(instance, optimal, rho);
  const auto trace = run_astar(instance, rho, reopening);
  const auto g_star = distances_from(instance, instance.start());
  const auto rho_star = distances_to(instance, instance.goal());

  const auto& path = optimal.path;
  const std::size_t k = path.size() - 1;
  const std::size_t n = instance.size();

  LedgerReport report;
  report.optimal_path = path;
  report.cost = trace.cost;
  report.opt = optimal.cost;
  report.delta = inc.delta;
  // inc.terms[j-1] is Inc(v_j, v_{j+1}).
  report.prefix_inc.assign(k + 1, Rational(0));
  for (std::size_t i = 2; i <= k; ++i) report.prefix_inc[i] = report.prefix_inc[i - 1] + inc.terms[i - 2].value;

  std::vector<std::ptrdiff_t> position(n, -1);
  for (std::size_t i = 0; i <= k; ++i) position[path[i]] = static_cast<std::ptrdiff_t>(i);

  const std::size_t T = trace.iterations() - 1;
  report.final_iteration = T;
  if (trace.selections.back() != instance.goal()) ledger_fail("search did not end by selecting the goal", T + 1);

  // State after iteration tau: OPEN membership and g-costs.
  std::vector<bool> open(n, false);
  std::vector<std::optional<Rational>> g(n);
  std::vector<bool> selected(n, false);
  open[instance.start()] = true;
  g[instance.start()] = Rational(0);

  std::size_t shallowest_index = 0;
  for (std::size_t tau = 0; tau <= T; ++tau) {
    if (tau > 0) {
      const auto& snap = trace.snapshots[tau - 1];
      selected[snap.selected] = true;
      std::fill(open.begin(), open.end(), false);
      for (auto v : snap.open) open[v] = true;
      for (VertexId v = 0; v < n; ++v) {
        if (g[v] && (!snap.g[v] || *snap.g[v] > *g[v])) ledger_fail("g-cost increased", tau);
        g[v] = snap.g[v];
      }
    }

    // The shallowest vertex can only be the first optimal-path vertex not yet selected.
    std::size_t i = 0;
    while (i <= k && selected[path[i]]) ++i;
    if (i > k || !open[path[i]]) ledger_fail("no shallowest optimal-path vertex", tau);
    report.shallowest.push_back(i);
    shallowest_index = i;

    for (std::size_t j = 0; j <= k; ++j) {
      const VertexId v = path[j];
      if (!selected[v]) continue;
      if (!g[v]) ledger_fail("selected vertex without g-cost", tau);
      const Rational error = *g[v] - *g_star[v];
      if (error > report.prefix_inc[j]) {
        ledger_fail("g-cost error of '" + instance.label(v) + "' exceeds accumulated inconsistency", tau);
      }
      ++report.g_error_checks;
    }
  }

  const VertexId vi = path[shallowest_index];
  const Rational g_error = *g[vi] - *g_star[vi];
  const Rational inadmissibility = rho[vi] - *rho_star[vi] - rho[instance.goal()];
  Rational suffix_inc = 0;
  for (std::size_t j = std::max<std::size_t>(shallowest_index, 1); j < k; ++j) suffix_inc += inc.terms[j - 1].value;
  if (g_error > report.prefix_inc[shallowest_index]) ledger_fail("final g-cost error bound failed", T);
  if (inadmissibility > suffix_inc) ledger_fail("inadmissibility exceeds suffix inconsistency", T);

  report.decomposition_bound = report.opt + g_error + inadmissibility;
  if (trace.cost > report.decomposition_bound) ledger_fail("cost exceeds the shallowest-vertex decomposition", T);
  if (report.decomposition_bound > report.opt + report.delta) ledger_fail("decomposition exceeds opt + delta", T);
  return report;
}

Json ledger_to_json(const LedgerReport& report, const PathInstance& instance) {
  Json shallowest = Json::array();
  for (auto i : report.shallowest) shallowest.push_back(instance.label(report.optimal_path[i]));
  Json prefix = Json::array();
  for (const auto& p : report.prefix_inc) prefix.push_back(to_string(p));
  return Json{{"optimal_path", path_to_json(report.optimal_path, instance)},
              {"T", report.final_iteration},
              {"shallowest", std::move(shallowest)},
              {"prefix_inc", std::move(prefix)},
              {"g_error_checks", report.g_error_checks},
              {"cost", to_string(report.cost)},
              {"opt", to_string(report.opt)},
              {"delta", to_string(report.delta)},
              {"decomposition_bound", to_string(report.decomposition_bound)},
              {"passed", true}};
}

namespace {

struct SweepOutcome {
  bool reopening = false;
  bool suboptimal = false;
  Rational slack;
  std::uint64_t g_error_checks = 0;
};

// Half of the draws perturb the exact goal distances (near-consistent), the
// other half are arbitrary integers up to l(n-1).
HeuristicVector sweep_rho(const PathInstance& x, std::int64_t ell, Rng& rng) {
  HeuristicVector rho(x.size());
  const auto top = ell * static_cast<std::int64_t>(x.size() - 1);
  if (rng.bernoulli(0.5)) {
    for (VertexId v = 0; v < x.size(); ++v) rho[v] = static_cast<long>(rng.between(0, top));
    return rho;
  }
  const auto to_goal = distances_to(x, x.goal());
  for (VertexId v = 0; v < x.size(); ++v) {
    const Rational base = to_goal[v] ? *to_goal[v] : Rational(top);
    const Rational noisy = base + static_cast<long>(rng.between(-ell, ell));
    rho[v] = sgn(noisy) < 0 ? Rational(0) : noisy;
  }
  return rho;
}

}  // namespace

BoundSweepReport run_bound_sweep(const BoundSweepOptions& options) {
  if (options.count == 0) throw InvalidInput("sweep count must be positive");
  if (options.min_vertices < 2 || options.min_vertices > options.max_vertices) {
    throw InvalidInput("sweep vertex range must satisfy 2 <= min <= max");
  }
  if (options.max_ell < 1) throw InvalidInput("sweep weight bound must be positive");

  std::vector<SweepOutcome> outcomes(options.count);
  parallel_for(options.count, options.jobs, [&](std::size_t index) {
    Rng rng(derive_seed(options.seed, index));
    InstanceDistributionSpec spec;
    spec.kind = DistributionKind::ErdosRenyi;
    spec.n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(options.min_vertices),
                                                  static_cast<std::int64_t>(options.max_vertices)));
    spec.weights = WeightModel::IntegerBounded;
    spec.ell = rng.between(1, options.max_ell);
    spec.edge_probability = 0.1 + 0.4 * rng.uniform01();
    spec.seed = rng.next();
    const auto x = sample_instance(spec, 0);
    const auto rho = sweep_rho(x, spec.ell, rng);
    const bool reopening = rng.bernoulli(0.5);
    try {
      const auto report = check_suboptimality_bound(x, rho, reopening, options.fault);
      SweepOutcome out{reopening, *report.cost > report.opt, *report.slack, 0};
      if (options.fault == FaultInjection::None) {
        out.g_error_checks = verify_appendix_ledger(x, rho, reopening).g_error_checks;
      }
      outcomes[index] = std::move(out);
    } catch (const CertificateViolation& ex) {
      throw CertificateViolation("triple " + std::to_string(index) + ": " + ex.what());
    } catch (const LedgerViolation& ex) {
      throw LedgerViolation("triple " + std::to_string(index) + ": " + ex.what());
    }
  });

  BoundSweepReport report;
  report.count = options.count;
  report.min_slack = outcomes.front().slack;
  for (const auto& out : outcomes) {
    if (out.reopening) ++report.reopening_runs;
    if (out.suboptimal) ++report.suboptimal_runs;
    if (sgn(out.slack) == 0) ++report.tight_runs;
    if (out.slack < report.min_slack) report.min_slack = out.slack;
    report.g_error_checks += out.g_error_checks;
  }
  return report;
}

Json bound_sweep_to_json(const BoundSweepReport& report) {
  return Json{{"count", report.count},
              {"reopening_runs", report.reopening_runs},
              {"suboptimal_runs", report.suboptimal_runs},
              {"tight_runs", report.tight_runs},
              {"min_slack", to_string(report.min_slack)},
              {"g_error_checks", report.g_error_checks}};
}

}  // namespace hlearn
