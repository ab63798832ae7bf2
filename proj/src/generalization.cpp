#include "hlearn/generalization.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "hlearn/errors.hpp"
#include "hlearn/inconsistency.hpp"
#include "hlearn/parallel.hpp"
#include "hlearn/random.hpp"

namespace hlearn {
namespace {

constexpr std::uint64_t kHeldoutStream = 0x68656c646f7574ULL;

InstanceDistributionSpec with_seed(InstanceDistributionSpec spec, std::uint64_t seed) {
  spec.seed = seed;
  return spec;
}

std::vector<PathInstance> draw(const InstanceDistributionSpec& spec, std::size_t count) {
  std::vector<PathInstance> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(sample_instance(spec, j));
  return out;
}

Rational mean(const std::vector<Rational>& xs) {
  Rational sum = 0;
  for (const auto& x : xs) sum += x;
  return xs.empty() ? sum : Rational(sum / static_cast<long>(xs.size()));
}

Rational abs_value(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }

struct HeldoutSet {
  std::vector<PathInstance> instances;
  std::vector<CanonicalOptimalPath> optimal;
};

// Mean suboptimality / inconsistency of rho on the held-out set, with the
// pointwise check subopt <= delta.
struct HeldoutEval {
  Rational mean_inc;
  Rational mean_subopt;
  Rational mean_slack;
  std::uint64_t violations = 0;
};

HeldoutEval evaluate_heldout(const HeldoutSet& set, const HeuristicVector& rho, bool reopening) {
  Rational inc_sum = 0;
  Rational subopt_sum = 0;
  HeldoutEval out;
  const SearchOptions summary{TraceDetail::Summary, 0};
  for (std::size_t j = 0; j < set.instances.size(); ++j) {
    const auto& x = set.instances[j];
    const Rational delta = inconsistency_on_path(x, set.optimal[j], rho).delta;
    const Rational subopt = run_astar(x, rho, reopening, summary).cost - set.optimal[j].cost;
    if (subopt > delta) ++out.violations;
    inc_sum += delta;
    subopt_sum += subopt;
  }
  const long count = static_cast<long>(set.instances.size());
  out.mean_inc = inc_sum / count;
  out.mean_subopt = subopt_sum / count;
  out.mean_slack = out.mean_inc - out.mean_subopt;
  return out;
}

Rational mean_utility(const std::vector<PathInstance>& xs, const HeuristicVector& rho, const UtilityMeasure& measure,
                      bool reopening) {
  Rational sum = 0;
  for (const auto& x : xs) {
    sum += evaluate(measure, x, run_astar(x, rho, reopening, {TraceDetail::Summary, 0})).value;
  }
  return sum / static_cast<long>(xs.size());
}

}  // namespace

void check_config(const GapExperimentConfig& config) {
  if (config.sizes.empty()) throw InvalidInput("gap experiment needs at least one sample size");
  for (std::size_t k = 0; k < config.sizes.size(); ++k) {
    if (config.sizes[k] == 0) throw InvalidInput("sample sizes must be positive");
    if (k > 0 && config.sizes[k] <= config.sizes[k - 1]) throw InvalidInput("sample sizes must be increasing");
  }
  if (config.trials < 1) throw InvalidInput("gap experiment needs trials >= 1");
  if (!(config.delta > 0.0 && config.delta < 1.0)) throw InvalidInput("delta must lie in (0, 1)");
  if (config.heldout < 1) throw InvalidInput("held-out set must be non-empty");
  if (config.source == CandidateSource::Grid && config.grid_candidates < 1) {
    throw InvalidInput("grid mode needs at least one candidate");
  }
}

GapExperimentConfig gap_config_from_json(const Json& doc) {
  try {
    GapExperimentConfig config;
    config.distribution = spec_from_json(doc.at("distribution"));
    if (doc.contains("sizes")) config.sizes = doc.at("sizes").get<std::vector<std::size_t>>();
    config.trials = doc.value("trials", config.trials);
    const std::string mode = doc.value("mode", std::string("learner"));
    if (mode == "learner") config.source = CandidateSource::Learner;
    else if (mode == "grid") config.source = CandidateSource::Grid;
    else throw InvalidInput("unknown gap mode '" + mode + "'");
    config.measure = parse_measure_kind(doc.value("measure", std::string("subopt")));
    config.delta = doc.value("delta", config.delta);
    config.seed = doc.value("seed", config.seed);
    config.heldout = doc.value("heldout", config.heldout);
    config.reopening = doc.value("reopen", config.reopening);
    config.grid_candidates = doc.value("grid_candidates", config.grid_candidates);
    if (doc.contains("learner")) {
      const auto& l = doc.at("learner");
      config.learner.eta = l.value("eta", config.learner.eta);
      config.learner.decay = l.value("decay", config.learner.decay);
      config.learner.max_steps = l.value("steps", config.learner.max_steps);
      config.learner.init = parse_learner_init(l.value("init", std::string("zeros")));
    }
    check_config(config);
    return config;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(std::string("malformed gap config: ") + ex.what());
  }
}

Json gap_config_to_json(const GapExperimentConfig& config) {
  return Json{{"distribution", spec_to_json(config.distribution)},
              {"sizes", config.sizes},
              {"trials", config.trials},
              {"mode", config.source == CandidateSource::Learner ? "learner" : "grid"},
              {"measure", std::string(to_string(config.measure))},
              {"delta", config.delta},
              {"seed", config.seed},
              {"heldout", config.heldout},
              {"reopen", config.reopening},
              {"grid_candidates", config.grid_candidates},
              {"learner",
               Json{{"eta", config.learner.eta},
                    {"decay", config.learner.decay},
                    {"steps", config.learner.max_steps},
                    {"init", std::string(to_string(config.learner.init))}}}};
}

std::size_t GapCurve::gap_inversions() const {
  std::size_t count = 0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].mean_gap > points[k - 1].mean_gap) ++count;
  }
  return count;
}

GapCurve run_gap_experiment(const GapExperimentConfig& config) {
  check_config(config);
  const std::uint64_t base = derive_seed(config.distribution.seed, config.seed);

  HeldoutSet heldout;
  heldout.instances = draw(with_seed(config.distribution, derive_seed(base, kHeldoutStream)), config.heldout);
  for (const auto& x : heldout.instances) heldout.optimal.push_back(dijkstra_opt(x));
  const std::size_t n = heldout.instances.front().size();

  const std::int64_t ell = std::max<std::int64_t>(config.distribution.ell, 1);
  UtilityMeasure measure{config.measure, config.measure == MeasureKind::Expansions
                                             ? Rational(static_cast<long>(n))
                                             : default_suboptimality_cap(ell, n)};

  // Grid candidates are shift-canonical (rho_goal = 0) integer vectors.
  std::vector<HeuristicVector> candidates;
  std::vector<Rational> heldout_utility;
  if (config.source == CandidateSource::Grid) {
    Rng rng(derive_seed(base, 0x67726964ULL));
    const auto goal = heldout.instances.front().goal();
    const std::int64_t top = ell * static_cast<std::int64_t>(n - 1);
    for (std::size_t c = 0; c < config.grid_candidates; ++c) {
      HeuristicVector rho(n);
      for (VertexId v = 0; v < n; ++v) rho[v] = v == goal ? 0L : static_cast<long>(rng.between(0, top));
      candidates.push_back(std::move(rho));
    }
    heldout_utility.resize(candidates.size());
    parallel_for(candidates.size(), config.jobs, [&](std::size_t c) {
      heldout_utility[c] = mean_utility(heldout.instances, candidates[c], measure, config.reopening);
    });
  }

  GapCurve curve;
  curve.source = config.source;
  curve.vertex_count = n;
  curve.rows.resize(config.sizes.size() * config.trials);

  parallel_for(curve.rows.size(), config.jobs, [&](std::size_t index) {
    const std::size_t a = index / config.trials;
    const std::size_t b = index % config.trials;
    const std::size_t size = config.sizes[a];
    // Trial b draws its training sets as prefixes of one stream, so adjacent
    // sample sizes are compared on nested data.
    const auto train = draw(with_seed(config.distribution, derive_seed(base, 1 + b)), size);
    InconsistencyObjective objective(train);

    GapRow row;
    row.n_train = size;
    row.trial = b;
    HeuristicVector chosen;
    if (config.source == CandidateSource::Learner) {
      const auto fit = minimize_empirical_inconsistency(objective, config.learner, &train.front());
      chosen = fit.rho;
      row.learner_objective = fit.objective;
      row.train_inc = fit.objective;
    } else {
      Rational worst = 0;
      std::optional<Rational> best_train;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const Rational train_utility = mean_utility(train, candidates[c], measure, config.reopening);
        const Rational gap = abs_value(train_utility - heldout_utility[c]);
        if (gap > worst) worst = gap;
        if (!best_train || train_utility < *best_train) {
          best_train = train_utility;
          chosen = candidates[c];
        }
      }
      row.max_grid_gap = worst;
      row.train_inc = objective.value(chosen);
    }
    const auto eval = evaluate_heldout(heldout, chosen, config.reopening);
    row.heldout_inc = eval.mean_inc;
    row.heldout_subopt = eval.mean_subopt;
    row.heldout_slack = eval.mean_slack;
    row.evaluated = heldout.instances.size();
    row.pointwise_violations = eval.violations;
    curve.rows[index] = std::move(row);
  });

  for (std::size_t a = 0; a < config.sizes.size(); ++a) {
    std::vector<Rational> gaps, train_inc, heldout_inc, subopt, slack;
    for (std::size_t b = 0; b < config.trials; ++b) {
      const auto& row = curve.rows[a * config.trials + b];
      gaps.push_back(row.max_grid_gap ? *row.max_grid_gap : abs_value(row.train_inc - row.heldout_inc));
      train_inc.push_back(row.train_inc);
      heldout_inc.push_back(row.heldout_inc);
      subopt.push_back(row.heldout_subopt);
      slack.push_back(row.heldout_slack);
      curve.evaluated += row.evaluated;
      curve.pointwise_violations += row.pointwise_violations;
    }
    curve.points.push_back(
        GapPoint{config.sizes[a], mean(gaps), mean(train_inc), mean(heldout_inc), mean(subopt), mean(slack)});
  }
  return curve;
}

std::string gap_csv(const GapCurve& curve) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "N,trial,train_inc,heldout_inc,heldout_subopt,max_grid_gap\n";
  for (const auto& row : curve.rows) {
    out << row.n_train << ',' << row.trial << ',' << to_double(row.train_inc) << ',' << to_double(row.heldout_inc)
        << ',' << to_double(row.heldout_subopt) << ',';
    if (row.max_grid_gap) out << to_double(*row.max_grid_gap);
    out << '\n';
  }
  return out.str();
}

BoundShapeReport report_bound_shape(const GapCurve& curve, PdimHint hint) {
  BoundShapeReport report;
  report.hint = hint;
  const double n = static_cast<double>(std::max<std::size_t>(curve.vertex_count, 2));
  report.pdim = (hint == PdimHint::NLogN ? n : n * n) * std::log2(n);
  double num = 0.0;
  double den = 0.0;
  for (const auto& p : curve.points) {
    const double f = std::sqrt(report.pdim / static_cast<double>(p.n_train));
    const double y = to_double(p.mean_gap);
    report.sizes.push_back(p.n_train);
    report.observed.push_back(y);
    num += f * y;
    den += f * f;
  }
  report.scale = den > 0.0 ? num / den : 0.0;
  for (auto size : report.sizes) {
    report.reference.push_back(report.scale * std::sqrt(report.pdim / static_cast<double>(size)));
  }
  return report;
}

std::string bound_shape_csv(const std::vector<BoundShapeReport>& reports) {
  std::ostringstream out;
  out << std::setprecision(10) << "N,observed";
  for (const auto& r : reports) out << (r.hint == PdimHint::NLogN ? ",ref_nlogn" : ",ref_n2logn");
  out << '\n';
  if (reports.empty()) return out.str();
  for (std::size_t k = 0; k < reports.front().sizes.size(); ++k) {
    out << reports.front().sizes[k] << ',' << reports.front().observed[k];
    for (const auto& r : reports) out << ',' << r.reference[k];
    out << '\n';
  }
  return out.str();
}

}  // namespace hlearn
