#include "hlearn/generators.hpp"

#include <cmath>
#include <deque>

#include "hlearn/complexity.hpp"
#include "hlearn/errors.hpp"
#include "hlearn/random.hpp"

namespace hlearn {
namespace {

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return labels;
}

Rational draw_weight(const InstanceDistributionSpec& spec, Rng& rng) {
  switch (spec.weights) {
    case WeightModel::Unit:
      return 1;
    case WeightModel::IntegerBounded:
      return Rational(static_cast<long>(rng.between(0, spec.ell)));
    case WeightModel::RationalBounded: {
      static constexpr long kDenominators[] = {1, 2, 3, 4, 5, 6, 8, 12};
      const long den = kDenominators[rng.below(std::size(kDenominators))];
      return make_rational(rng.between(0, spec.ell * den), den);
    }
    case WeightModel::PowersOfTwo:
      return 0;  // assigned after the edge set is fixed
  }
  return 1;
}

void assign_powers_of_two(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.from != b.from ? a.from < b.from : a.to < b.to; });
  mpz_class w = 1;
  for (auto& e : edges) {
    e.weight = Rational(w);
    w *= 2;
  }
}

std::vector<Edge> draw_edges(const InstanceDistributionSpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  std::vector<Edge> edges;
  auto add = [&](std::size_t u, std::size_t v) {
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), draw_weight(spec, rng)});
  };
  switch (spec.kind) {
    case DistributionKind::ErdosRenyi:
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (u != v && rng.bernoulli(spec.edge_probability)) add(u, v);
        }
      }
      break;
    case DistributionKind::Complete:
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (u != v) add(u, v);
        }
      }
      break;
    case DistributionKind::LayeredDag: {
      // v0 alone in the first layer, v{n-1} alone in the last, the rest split evenly.
      const std::size_t inner = n - 2;
      const std::size_t layers = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(inner))));
      std::vector<std::size_t> layer_of(n);
      layer_of[0] = 0;
      layer_of[n - 1] = layers + 1;
      for (std::size_t i = 0; i < inner; ++i) layer_of[i + 1] = 1 + i * layers / std::max<std::size_t>(inner, 1);
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (layer_of[v] == layer_of[u] + 1 && rng.bernoulli(spec.edge_probability)) add(u, v);
          else if (layer_of[v] == layer_of[u] + 2 && rng.bernoulli(spec.edge_probability / 2)) add(u, v);
        }
      }
      break;
    }
    case DistributionKind::Grid: {
      const std::size_t width = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
      for (std::size_t u = 0; u < n; ++u) {
        const std::size_t x = u % width;
        const std::size_t neighbors[] = {x + 1 < width ? u + 1 : n, x > 0 ? u - 1 : n, u + width,
                                         u >= width ? u - width : n};
        for (std::size_t v : neighbors) {
          if (v < n && rng.bernoulli(spec.edge_probability)) add(u, v);
        }
      }
      break;
    }
    default:
      throw std::logic_error("not a random graph kind");
  }
  if (spec.weights == WeightModel::PowersOfTwo) assign_powers_of_two(edges);
  return edges;
}

void check_spec(const InstanceDistributionSpec& spec) {
  if (spec.kind == DistributionKind::FileCorpus || spec.kind == DistributionKind::LowerBoundFamily) return;
  if (spec.n < 2) throw InvalidInput("distribution needs n >= 2");
  if (spec.kind == DistributionKind::LayeredDag && spec.n < 3) throw InvalidInput("layered-dag needs n >= 3");
  if (spec.ell < 0) throw InvalidInput("weight bound must be non-negative");
  if (!(spec.edge_probability >= 0.0 && spec.edge_probability <= 1.0)) {
    throw InvalidInput("edge_probability must lie in [0, 1]");
  }
  if (spec.weights == WeightModel::PowersOfTwo && spec.n > 12) {
    throw InvalidInput("powers-of-two weights limited to n <= 12");
  }
}

}  // namespace

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::ErdosRenyi:
      return "erdos-renyi";
    case DistributionKind::LayeredDag:
      return "layered-dag";
    case DistributionKind::Grid:
      return "grid";
    case DistributionKind::Complete:
      return "complete";
    case DistributionKind::LowerBoundFamily:
      return "lower-bound-family";
    case DistributionKind::FileCorpus:
      return "file-corpus";
  }
  return "?";
}

std::string_view to_string(WeightModel model) {
  switch (model) {
    case WeightModel::Unit:
      return "unit";
    case WeightModel::IntegerBounded:
      return "integer";
    case WeightModel::RationalBounded:
      return "rational";
    case WeightModel::PowersOfTwo:
      return "powers-of-two";
  }
  return "?";
}

DistributionKind parse_distribution_kind(std::string_view text) {
  for (auto k : {DistributionKind::ErdosRenyi, DistributionKind::LayeredDag, DistributionKind::Grid,
                 DistributionKind::Complete, DistributionKind::LowerBoundFamily, DistributionKind::FileCorpus}) {
    if (to_string(k) == text) return k;
  }
  throw InvalidInput("unknown distribution kind '" + std::string(text) + "'");
}

WeightModel parse_weight_model(std::string_view text) {
  for (auto m : {WeightModel::Unit, WeightModel::IntegerBounded, WeightModel::RationalBounded,
                 WeightModel::PowersOfTwo}) {
    if (to_string(m) == text) return m;
  }
  throw InvalidInput("unknown weight model '" + std::string(text) + "'");
}

Json spec_to_json(const InstanceDistributionSpec& spec) {
  Json doc{{"kind", std::string(to_string(spec.kind))},
           {"n", spec.n},
           {"weights", std::string(to_string(spec.weights))},
           {"ell", spec.ell},
           {"seed", spec.seed},
           {"edge_probability", spec.edge_probability},
           {"random_start", spec.random_start},
           {"max_retries", spec.max_retries}};
  if (spec.kind == DistributionKind::FileCorpus) doc["corpus_dir"] = spec.corpus_dir;
  return doc;
}

InstanceDistributionSpec spec_from_json(const Json& doc) {
  try {
    InstanceDistributionSpec spec;
    spec.kind = parse_distribution_kind(doc.at("kind").get<std::string>());
    spec.n = doc.value("n", spec.n);
    spec.weights = parse_weight_model(doc.value("weights", std::string(to_string(spec.weights))));
    spec.ell = doc.value("ell", spec.ell);
    spec.seed = doc.value("seed", spec.seed);
    spec.edge_probability = doc.value("edge_probability", spec.edge_probability);
    spec.random_start = doc.value("random_start", spec.random_start);
    spec.max_retries = doc.value("max_retries", spec.max_retries);
    spec.corpus_dir = doc.value("corpus_dir", spec.corpus_dir);
    return spec;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(std::string("malformed distribution spec: ") + ex.what());
  }
}

PathInstance sample_instance(const InstanceDistributionSpec& spec, std::uint64_t index) {
  check_spec(spec);
  switch (spec.kind) {
    case DistributionKind::LowerBoundFamily: {
      auto family = build_lower_bound_family(spec.n);
      return family[index % family.size()];
    }
    case DistributionKind::FileCorpus: {
      const auto files = corpus_files(spec.corpus_dir);
      if (files.empty()) throw InvalidInput("empty corpus: " + spec.corpus_dir);
      auto x = load_instance(files[index % files.size()]);
      x.require_valid();
      return x;
    }
    default:
      break;
  }

  const std::size_t n = spec.n;
  for (std::size_t attempt = 0; attempt < spec.max_retries; ++attempt) {
    Rng rng(derive_seed(derive_seed(spec.seed, index), attempt));
    auto edges = draw_edges(spec, rng);
    VertexId start = 0;
    if (spec.random_start && spec.kind != DistributionKind::LayeredDag) {
      start = static_cast<VertexId>(rng.below(n - 1));
    }
    PathInstance x(numbered_labels(n), std::move(edges), start, static_cast<VertexId>(n - 1));
    if (x.valid()) return x;
  }
  throw GeneratorFailure("no feasible instance after " + std::to_string(spec.max_retries) + " draws");
}

PathInstance powers_of_two_gadget(std::size_t n) {
  InstanceDistributionSpec spec;
  spec.kind = DistributionKind::Complete;
  spec.n = n;
  spec.weights = WeightModel::PowersOfTwo;
  spec.random_start = false;
  return sample_instance(spec, 0);
}

}  // namespace hlearn
