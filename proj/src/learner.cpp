#include "hlearn/learner.hpp"

#include <cmath>

#include "hlearn/errors.hpp"

namespace hlearn {

InconsistencyObjective::InconsistencyObjective(const std::vector<PathInstance>& instances) {
  if (instances.empty()) throw InvalidInput("empirical inconsistency needs at least one instance");
  n_ = instances.front().size();
  for (const auto& x : instances) {
    if (x.size() != n_) throw InvalidInput("training instances must share one vertex set");
    auto opt = dijkstra_opt(x);
    std::vector<Term> terms;
    for (std::size_t j = 1; j + 1 < opt.path.size(); ++j) {
      terms.push_back({opt.path[j], opt.path[j + 1], *x.weight(opt.path[j], opt.path[j + 1])});
    }
    terms_.push_back(std::move(terms));
    paths_.push_back(std::move(opt));
  }
}

Rational InconsistencyObjective::value(const HeuristicVector& rho) const {
  std::vector<long> unused;
  return value_and_subgradient(rho, unused);
}

Rational InconsistencyObjective::value_and_subgradient(const HeuristicVector& rho, std::vector<long>& counts) const {
  if (rho.size() != n_) throw InvalidInput("heuristic vector size mismatch");
  counts.assign(n_, 0);
  Rational sum = 0;
  Rational diff;
  for (const auto& terms : terms_) {
    for (const auto& t : terms) {
      diff = rho[t.from] - rho[t.to] - t.weight;
      if (sgn(diff) > 0) {
        sum += diff;
        ++counts[t.from];
        --counts[t.to];
      }
    }
  }
  return sum / static_cast<long>(terms_.size());
}

Rational empirical_inconsistency(const std::vector<PathInstance>& instances, const HeuristicVector& rho) {
  return InconsistencyObjective(instances).value(rho);
}

std::string_view to_string(LearnerInit init) {
  switch (init) {
    case LearnerInit::Zeros:
      return "zeros";
    case LearnerInit::ExactDistances:
      return "exact";
    case LearnerInit::Given:
      return "given";
  }
  return "?";
}

LearnerInit parse_learner_init(std::string_view text) {
  if (text == "zeros") return LearnerInit::Zeros;
  if (text == "exact" || text == "exact-distances") return LearnerInit::ExactDistances;
  if (text == "given") return LearnerInit::Given;
  throw InvalidInput("unknown init mode '" + std::string(text) + "'");
}

HeuristicVector exact_distance_heuristic(const PathInstance& instance) {
  const auto dist = distances_to(instance, instance.goal());
  Rational sentinel = 1;
  for (const auto& e : instance.edges()) sentinel += e.weight;
  HeuristicVector rho(instance.size());
  for (VertexId v = 0; v < instance.size(); ++v) rho[v] = dist[v] ? *dist[v] : sentinel;
  return rho;
}

LearnerResult minimize_empirical_inconsistency(const InconsistencyObjective& objective, const LearnerConfig& config,
                                               const PathInstance* reference) {
  if (!(config.eta > 0.0)) throw InvalidInput("learner step eta must be positive");
  if (config.max_steps < 1) throw InvalidInput("learner needs at least one step");
  const std::size_t n = objective.vertex_count();

  HeuristicVector rho;
  switch (config.init) {
    case LearnerInit::Zeros:
      rho = HeuristicVector(n);
      break;
    case LearnerInit::ExactDistances:
      if (reference == nullptr) throw InvalidInput("exact-distance init needs a reference instance");
      rho = exact_distance_heuristic(*reference);
      break;
    case LearnerInit::Given:
      if (config.initial.size() != n) throw InvalidInput("initial heuristic vector size mismatch");
      rho = config.initial;
      break;
  }

  LearnerResult result;
  std::vector<long> counts;
  const long count_scale = static_cast<long>(objective.instance_count());
  Rational value = objective.value_and_subgradient(rho, counts);
  result.rho = rho;
  result.objective = value;
  result.history.push_back(value);

  for (std::size_t t = 1; t <= config.max_steps && sgn(value) != 0; ++t) {
    const double raw = config.eta / std::pow(static_cast<double>(t), config.decay);
    Rational step = dyadic_from_double(raw, config.step_bits);
    if (sgn(step) == 0) break;
    step /= count_scale;
    for (VertexId v = 0; v < n; ++v) {
      if (counts[v] != 0) rho[v] -= step * counts[v];
    }
    value = objective.value_and_subgradient(rho, counts);
    result.history.push_back(value);
    result.steps = t;
    if (value < result.objective) {
      result.objective = value;
      result.rho = rho;
      result.best_step = t;
    }
  }
  result.converged = sgn(result.objective) == 0;
  return result;
}

}  // namespace hlearn
