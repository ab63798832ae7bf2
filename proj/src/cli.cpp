#include "hlearn/cli.hpp"

#include <gmp.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hlearn/complexity.hpp"
#include "hlearn/errors.hpp"
#include "hlearn/generalization.hpp"
#include "hlearn/inconsistency.hpp"
#include "hlearn/io.hpp"
#include "hlearn/learner.hpp"
#include "hlearn/search.hpp"
#include "hlearn/utility.hpp"

namespace hlearn {
namespace {

namespace fs = std::filesystem;

constexpr const char* kVersion = "1.0.0";

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out;
  std::string format;
};

// Everything one subcommand produced.
struct Emission {
  Json result = Json::object();
  std::string csv;  // empty: derive a key,value table from `result`
  int status = kExitOk;
  std::string message;
};

class Context {
 public:
  explicit Context(const Globals& globals) : globals_(globals) {}

  const Globals& globals() const { return globals_; }
  Json& config() { return config_; }
  std::vector<std::string>& outputs() { return outputs_; }

  std::string read(const std::string& path) {
    std::string text = read_file(path);
    inputs_.push_back(Json{{"path", path}, {"fnv1a64", fnv1a_hex(text)}});
    return text;
  }

  PathInstance instance(const std::string& path) { return parse_instance(read(path)); }

  HeuristicVector rho(const std::string& path, const PathInstance& x) {
    return rho_from_json(parse_json(read(path)), x.labels());
  }

  std::vector<PathInstance> corpus(const std::string& dir) {
    std::vector<PathInstance> out;
    for (const auto& file : corpus_files(dir)) out.push_back(instance(file.string()));
    if (out.empty()) throw InvalidInput("corpus " + dir + " has no *.json instances");
    return out;
  }

  Json manifest(const std::string& subcommand, const std::vector<std::string>& argv) const {
    return Json{{"subcommand", subcommand},
                {"argv", argv},
                {"config", config_},
                {"seed", globals_.seed},
                {"versions",
                 Json{{"hlearn", kVersion},
                      {"gmp", gmp_version},
                      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                      {"cli11", CLI11_VERSION}}},
                {"inputs", inputs_},
                {"outputs", outputs_}};
  }

 private:
  const Globals& globals_;
  Json config_ = Json::object();
  Json inputs_ = Json::array();
  std::vector<std::string> outputs_;
};

Algorithm resolve_algorithm(const std::string& name, bool reopen) {
  if (name == "gbfs") return Algorithm::Gbfs;
  if (name == "astar") return reopen ? Algorithm::AstarReopen : Algorithm::AstarNoReopen;
  if (name == "astar-reopen") return Algorithm::AstarReopen;
  if (name == "astar-noreopen") return Algorithm::AstarNoReopen;
  throw UsageError("unknown algorithm '" + name + "'");
}

const std::vector<std::string> kAlgorithmNames{"gbfs", "astar", "astar-reopen", "astar-noreopen"};

std::string csv_cell(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

// Fallback CSV for results without a natural table: scalar top-level fields.
std::string key_value_csv(const Json& result) {
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [key, value] : result.items()) {
    if (value.is_primitive()) out << key << ',' << csv_cell(value) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct InstanceArgs {
  std::string instance;
  std::string rho;
};

void add_instance_rho(CLI::App* sub, InstanceArgs& a, bool with_rho = true) {
  sub->add_option("--instance", a.instance, "Instance JSON file")->required();
  if (with_rho) sub->add_option("--rho", a.rho, "Heuristic JSON file")->required();
}

Emission cmd_validate(Context& ctx, const InstanceArgs& a) {
  ctx.config() = Json{{"instance", a.instance}};
  const auto x = ctx.instance(a.instance);
  const auto report = validate(x);
  Emission e;
  e.result = Json{{"valid", report.ok()}, {"n", x.size()}, {"edges", x.edges().size()},
                  {"violations", report.violations}};
  if (!report.ok()) {
    e.status = kExitInvalidInput;
    e.message = "instance is invalid: " + report.violations.front();
  }
  return e;
}

struct RunArgs {
  InstanceArgs io;
  std::string algo = "astar";
  bool reopen = true;
  std::string emit_trace;
};

Emission cmd_run(Context& ctx, const RunArgs& a) {
  const Algorithm algo = resolve_algorithm(a.algo, a.reopen);
  ctx.config() = Json{{"instance", a.io.instance}, {"rho", a.io.rho}, {"algorithm", to_string(algo)}};
  const auto x = ctx.instance(a.io.instance);
  const auto rho = ctx.rho(a.io.rho, x);
  const auto trace = run_search(algo, x, rho);
  if (!a.emit_trace.empty()) {
    write_file(a.emit_trace, trace_to_json(trace, x).dump(1) + "\n");
    ctx.outputs().push_back(a.emit_trace);
  }
  Emission e;
  Json selected = Json::array();
  for (auto v : trace.selections) selected.push_back(x.label(v));
  e.result = Json{{"algorithm", to_string(algo)},
                  {"path", path_to_json(trace.path, x)},
                  {"cost", to_string(trace.cost)},
                  {"iterations", trace.iterations()},
                  {"reopenings", trace.reopenings},
                  {"selections", selected}};
  std::ostringstream csv;
  csv << "iteration,selected\n";
  for (std::size_t k = 0; k < trace.selections.size(); ++k) csv << k + 1 << ',' << x.label(trace.selections[k]) << '\n';
  e.csv = csv.str();
  return e;
}

Emission cmd_opt(Context& ctx, const InstanceArgs& a) {
  ctx.config() = Json{{"instance", a.instance}};
  const auto x = ctx.instance(a.instance);
  x.require_valid();
  const auto best = dijkstra_opt(x);
  Emission e;
  e.result = Json{{"opt", to_string(best.cost)}, {"path", path_to_json(best.path, x)}};
  return e;
}

struct EvalArgs {
  InstanceArgs io;
  std::string measure = "path-cost";
  std::string cap;
  std::string algo = "astar";
  bool reopen = true;
};

Emission cmd_eval(Context& ctx, const EvalArgs& a) {
  const Algorithm algo = resolve_algorithm(a.algo, a.reopen);
  UtilityMeasure measure{parse_measure_kind(a.measure), parse_rational(a.cap)};
  ctx.config() = Json{{"instance", a.io.instance},
                      {"rho", a.io.rho},
                      {"measure", to_string(measure.kind)},
                      {"cap", to_string(measure.cap)},
                      {"algorithm", to_string(algo)}};
  const auto x = ctx.instance(a.io.instance);
  const auto rho = ctx.rho(a.io.rho, x);
  const auto value = evaluate(measure, x, run_search(algo, x, rho, {TraceDetail::Summary, 0}));
  Emission e;
  e.result = Json{{"measure", to_string(measure.kind)},
                  {"algorithm", to_string(algo)},
                  {"cap", to_string(measure.cap)},
                  {"value", to_string(value.value)},
                  {"raw", to_string(value.raw)},
                  {"clipped", value.clipped}};
  return e;
}

Emission cmd_inconsistency(Context& ctx, const InstanceArgs& a) {
  ctx.config() = Json{{"instance", a.instance}, {"rho", a.rho}};
  const auto x = ctx.instance(a.instance);
  x.require_valid();
  Emission e;
  e.result = inconsistency_to_json(inconsistency(x, ctx.rho(a.rho, x)), x);
  return e;
}

struct BoundArgs {
  InstanceArgs io;
  bool reopen = true;
  std::size_t sweep = 0;
  std::size_t max_n = 32;
  std::int64_t max_ell = 16;
  std::string fault = "none";
};

FaultInjection parse_fault(const std::string& name) {
  if (name == "none") return FaultInjection::None;
  if (name == "flip-max") return FaultInjection::FlipMaxToMin;
  throw UsageError("unknown fault '" + name + "'");
}

Emission cmd_check_bound(Context& ctx, const BoundArgs& a) {
  const FaultInjection fault = parse_fault(a.fault);
  Emission e;
  if (a.sweep > 0) {
    if (!a.io.instance.empty() || !a.io.rho.empty()) throw UsageError("--sweep takes no --instance/--rho");
    BoundSweepOptions options;
    options.count = a.sweep;
    options.max_vertices = a.max_n;
    options.max_ell = a.max_ell;
    options.seed = ctx.globals().seed;
    options.jobs = ctx.globals().jobs;
    options.fault = fault;
    ctx.config() = Json{{"sweep", a.sweep}, {"max_n", a.max_n}, {"max_ell", a.max_ell}, {"fault", a.fault}};
    e.result = bound_sweep_to_json(run_bound_sweep(options));
    return e;
  }
  if (a.io.instance.empty() || a.io.rho.empty()) throw UsageError("check-bound needs --instance and --rho, or --sweep");
  ctx.config() = Json{{"instance", a.io.instance}, {"rho", a.io.rho}, {"reopen", a.reopen}, {"fault", a.fault}};
  const auto x = ctx.instance(a.io.instance);
  e.result = inconsistency_to_json(check_suboptimality_bound(x, ctx.rho(a.io.rho, x), a.reopen, fault), x);
  return e;
}

struct LedgerArgs {
  InstanceArgs io;
  bool reopen = true;
};

Emission cmd_ledger(Context& ctx, const LedgerArgs& a) {
  ctx.config() = Json{{"instance", a.io.instance}, {"rho", a.io.rho}, {"reopen", a.reopen}};
  const auto x = ctx.instance(a.io.instance);
  Emission e;
  e.result = ledger_to_json(verify_appendix_ledger(x, ctx.rho(a.io.rho, x), a.reopen), x);
  return e;
}

struct LearnArgs {
  std::string corpus;
  double eta = 0.5;
  double decay = 0.5;
  std::size_t steps = 2000;
  std::string init = "zeros";
  std::string rho_init;
  unsigned step_bits = 24;
};

Emission cmd_learn(Context& ctx, const LearnArgs& a) {
  LearnerConfig config;
  config.eta = a.eta;
  config.decay = a.decay;
  config.max_steps = a.steps;
  config.init = parse_learner_init(a.init);
  config.step_bits = a.step_bits;
  ctx.config() = Json{{"corpus", a.corpus}, {"eta", a.eta}, {"decay", a.decay}, {"steps", a.steps},
                      {"init", a.init},     {"step_bits", a.step_bits}};
  const auto instances = ctx.corpus(a.corpus);
  if (config.init == LearnerInit::Given) {
    if (a.rho_init.empty()) throw UsageError("--init given needs --rho-init FILE");
    config.initial = ctx.rho(a.rho_init, instances.front());
    ctx.config()["rho_init"] = a.rho_init;
  }
  InconsistencyObjective objective(instances);
  const auto fit = minimize_empirical_inconsistency(objective, config, &instances.front());
  Emission e;
  e.result = rho_to_json(fit.rho, instances.front());
  e.result["objective"] = to_string(fit.objective);
  e.result["initial_objective"] = to_string(fit.history.front());
  e.result["instances"] = instances.size();
  e.result["steps"] = fit.steps;
  e.result["best_step"] = fit.best_step;
  e.result["converged"] = fit.converged;
  return e;
}

struct LowerBoundArgs {
  std::size_t n = 8;
  std::vector<std::size_t> subset;
};

Emission cmd_lower_bound(Context& ctx, const LowerBoundArgs& a) {
  ctx.config() = Json{{"n", a.n}, {"subset", a.subset}};
  const auto family = build_lower_bound_family(a.n);
  Emission e;
  std::optional<HeuristicVector> rho;
  if (!a.subset.empty()) rho = rho_for_subset(a.n, a.subset);
  const std::string& dir = ctx.globals().out;
  if (dir.empty()) {
    Json instances = Json::array();
    for (const auto& x : family) instances.push_back(instance_to_json(x));
    e.result = Json{{"n", a.n}, {"instances", std::move(instances)}};
    if (rho) e.result["rho"] = rho_to_json(*rho, family.front());
    return e;
  }
  fs::create_directories(dir);
  Json files = Json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto path = (fs::path(dir) / ("x" + std::to_string(i + 1) + ".json")).string();
    save_instance(path, family[i]);
    ctx.outputs().push_back(path);
    files.push_back(path);
  }
  e.result = Json{{"n", a.n}, {"instances", std::move(files)}};
  if (rho) {
    const auto path = (fs::path(dir) / "rho.json").string();
    save_rho(path, *rho, family.front().labels());
    ctx.outputs().push_back(path);
    e.result["rho"] = path;
  }
  return e;
}

struct ShatterArgs {
  std::size_t n = 8;
  std::string algo = "gbfs";
  bool reopen = true;
  bool exhaustive = false;
  std::size_t samples = 4096;
  bool patterns = false;
};

Emission cmd_shatter(Context& ctx, const ShatterArgs& a) {
  const Algorithm algo = resolve_algorithm(a.algo, a.reopen);
  ShatterOptions options;
  options.exhaustive = a.exhaustive;
  options.samples = a.samples;
  options.seed = ctx.globals().seed;
  options.jobs = ctx.globals().jobs;
  ctx.config() = Json{{"n", a.n}, {"algorithm", to_string(algo)}, {"exhaustive", a.exhaustive}};
  if (!a.exhaustive) ctx.config()["samples"] = a.samples;
  const auto result = verify_shattering(a.n, algo, options);
  Emission e;
  e.result = shatter_to_json(result, a.patterns);
  std::ostringstream csv;
  csv << "pattern,witness\n";
  for (std::size_t k = 0; k < result.achieved.size(); ++k) csv << result.achieved[k] << ',' << result.witnesses[k] << '\n';
  e.csv = csv.str();
  if (!result.shattered() && a.exhaustive) {
    e.status = kExitTheoryViolation;
    e.message = "exhaustive run missed " + std::to_string(result.missing_count) + " patterns";
  }
  return e;
}

struct CensusArgs {
  std::string algo = "gbfs";
  bool reopen = true;
  std::string corpus;
  bool permutations = false;
  std::size_t samples = 0;
  std::size_t grid_points = 4;
  std::int64_t lo = 0;
  std::int64_t hi = 6;
};

Emission cmd_census(Context& ctx, const CensusArgs& a) {
  const Algorithm algo = resolve_algorithm(a.algo, a.reopen);
  ctx.config() = Json{{"algorithm", to_string(algo)}, {"corpus", a.corpus}};
  const auto instances = ctx.corpus(a.corpus);
  Emission e;
  if (algo == Algorithm::Gbfs) {
    if (a.samples > 0) throw UsageError("the GBFS census enumerates every vertex order; drop --samples");
    ctx.config()["permutations"] = true;
    e.result = census_to_json(gbfs_behavior_census(instances, ctx.globals().seed));
    return e;
  }
  if (a.permutations) throw UsageError("--permutations applies to the GBFS census only");
  RhoSampleSpec sample;
  sample.grid_points = a.samples > 0 ? 0 : a.grid_points;
  sample.random_samples = a.samples;
  sample.lo = a.lo;
  sample.hi = a.hi;
  sample.seed = ctx.globals().seed;
  ctx.config().update(Json{{"grid_points", sample.grid_points}, {"samples", a.samples}, {"lo", a.lo}, {"hi", a.hi}});
  e.result = census_to_json(astar_behavior_census(instances, sample, algo == Algorithm::AstarReopen));
  return e;
}

struct GCostArgs {
  InstanceArgs io;
  std::uint64_t max_paths = 20'000'000;
  std::size_t max_vertices = 12;
};

Emission cmd_gcosts(Context& ctx, const GCostArgs& a) {
  ctx.config() = Json{{"instance", a.io.instance}, {"max_paths", a.max_paths}, {"max_vertices", a.max_vertices}};
  const auto x = ctx.instance(a.io.instance);
  const auto catalog = gcost_catalog(x, CatalogOptions{a.max_vertices, a.max_paths});
  Emission e;
  e.result = catalog_to_json(catalog, x);
  std::ostringstream csv;
  csv << "vertex,simple_paths,distinct_costs,costs\n";
  for (VertexId v = 0; v < x.size(); ++v) {
    csv << x.label(v) << ',' << catalog.path_counts[v] << ',' << catalog.costs[v].size() << ',';
    for (std::size_t k = 0; k < catalog.costs[v].size(); ++k) csv << (k ? " " : "") << to_string(catalog.costs[v][k]);
    csv << '\n';
  }
  e.csv = csv.str();
  return e;
}

struct GapArgs {
  std::string config;
  std::string bound_shape;
  bool seed_given = false;
};

Emission cmd_gap(Context& ctx, const GapArgs& a) {
  auto config = gap_config_from_json(parse_json(ctx.read(a.config)));
  if (a.seed_given) config.seed = ctx.globals().seed;
  config.jobs = ctx.globals().jobs;
  ctx.config() = gap_config_to_json(config);
  const auto curve = run_gap_experiment(config);

  std::vector<BoundShapeReport> shapes{report_bound_shape(curve, PdimHint::NLogN),
                                       report_bound_shape(curve, PdimHint::N2LogN)};
  if (!a.bound_shape.empty()) {
    write_file(a.bound_shape, bound_shape_csv(shapes));
    ctx.outputs().push_back(a.bound_shape);
  }
  Emission e;
  Json points = Json::array();
  for (const auto& p : curve.points) {
    points.push_back(Json{{"N", p.n_train},
                          {"mean_gap", to_string(p.mean_gap)},
                          {"mean_train_inc", to_string(p.mean_train_inc)},
                          {"mean_heldout_inc", to_string(p.mean_heldout_inc)},
                          {"mean_heldout_subopt", to_string(p.mean_heldout_subopt)},
                          {"mean_slack", to_string(p.mean_slack)}});
  }
  Json scales = Json::object();
  scales["nlogn"] = shapes[0].scale;
  scales["n2logn"] = shapes[1].scale;
  e.result = Json{{"points", std::move(points)},
                  {"gap_inversions", curve.gap_inversions()},
                  {"evaluated", curve.evaluated},
                  {"pointwise_violations", curve.pointwise_violations},
                  {"bound_shape_scale", std::move(scales)},
                  {"delta", config.delta}};
  e.csv = gap_csv(curve);
  if (curve.pointwise_violations > 0) {
    e.status = kExitTheoryViolation;
    e.message = std::to_string(curve.pointwise_violations) + " held-out instances exceed the inconsistency bound";
  }
  return e;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

std::string resolve_format(const Globals& g) {
  if (!g.format.empty()) return g.format;
  if (g.out.size() >= 4 && g.out.compare(g.out.size() - 4, 4, ".csv") == 0) return "csv";
  return "json";
}

void emit(Context& ctx, const std::string& subcommand, const std::vector<std::string>& argv, Emission& e,
          bool out_is_dir, std::ostream& out, std::ostream& err) {
  const Globals& g = ctx.globals();
  const std::string format = resolve_format(g);
  std::string body;
  if (format == "csv") {
    body = e.csv.empty() ? key_value_csv(e.result) : e.csv;
  } else {
    body = e.result.dump(1) + "\n";
  }

  if (out_is_dir) {
    const auto path = (fs::path(g.out) / "manifest.json").string();
    write_file(path, ctx.manifest(subcommand, argv).dump(1) + "\n");
    out << body;
    return;
  }
  if (!g.out.empty()) {
    ctx.outputs().push_back(g.out);
    write_file(g.out, body);
    write_file(g.out + ".manifest.json", ctx.manifest(subcommand, argv).dump(1) + "\n");
    return;
  }
  if (format == "csv") {
    out << body;
    err << "manifest: " << ctx.manifest(subcommand, argv).dump() << '\n';
  } else {
    out << Json{{"result", e.result}, {"manifest", ctx.manifest(subcommand, argv)}}.dump(1) << '\n';
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heuristic-parameterized best-first search: engines, certificates and learning experiments", "hlearn"};
  app.require_subcommand(1);
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads; never changes outputs")->capture_default_str();
  app.add_option("--out", g.out, "Output file (directory for lower-bound)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::function<Emission(Context&)> handler;
  std::string name;
  auto sub = [&](const char* cmd, const char* help) {
    auto* s = app.add_subcommand(cmd, help);
    s->fallthrough();
    return s;
  };

  InstanceArgs validate_args;
  auto* validate_cmd = sub("validate", "Check an instance against the problem assumptions");
  add_instance_rho(validate_cmd, validate_args, false);
  validate_cmd->callback([&] { handler = [&](Context& c) { return cmd_validate(c, validate_args); }; });

  RunArgs run_args;
  auto* run_cmd = sub("run", "Run GBFS or A* and report the returned path");
  add_instance_rho(run_cmd, run_args.io);
  run_cmd->add_option("--algo", run_args.algo)->check(CLI::IsMember(kAlgorithmNames))->capture_default_str();
  run_cmd->add_option("--reopen", run_args.reopen, "A* reopening (true|false)")->capture_default_str();
  run_cmd->add_option("--emit-trace", run_args.emit_trace, "Write the per-iteration trace JSON here");
  run_cmd->callback([&] { handler = [&](Context& c) { return cmd_run(c, run_args); }; });

  InstanceArgs opt_args;
  auto* opt_cmd = sub("opt", "Exact optimal cost and canonical optimal path");
  add_instance_rho(opt_cmd, opt_args, false);
  opt_cmd->callback([&] { handler = [&](Context& c) { return cmd_opt(c, opt_args); }; });

  EvalArgs eval_args;
  auto* eval_cmd = sub("eval", "Evaluate a bounded utility of one execution");
  add_instance_rho(eval_cmd, eval_args.io);
  eval_cmd->add_option("--measure", eval_args.measure)
      ->check(CLI::IsMember({"path-cost", "subopt", "expansions"}))
      ->capture_default_str();
  eval_cmd->add_option("--cap", eval_args.cap, "Utility cap H > 0")->required();
  eval_cmd->add_option("--algo", eval_args.algo)->check(CLI::IsMember(kAlgorithmNames))->capture_default_str();
  eval_cmd->add_option("--reopen", eval_args.reopen)->capture_default_str();
  eval_cmd->callback([&] { handler = [&](Context& c) { return cmd_eval(c, eval_args); }; });

  InstanceArgs inc_args;
  auto* inc_cmd = sub("inconsistency", "Inconsistency of rho along the canonical optimal path");
  add_instance_rho(inc_cmd, inc_args);
  inc_cmd->callback([&] { handler = [&](Context& c) { return cmd_inconsistency(c, inc_args); }; });

  BoundArgs bound_args;
  auto* bound_cmd = sub("check-bound", "Certify cost <= opt + inconsistency on one instance or a random sweep");
  bound_cmd->add_option("--instance", bound_args.io.instance);
  bound_cmd->add_option("--rho", bound_args.io.rho);
  bound_cmd->add_option("--reopen", bound_args.reopen)->capture_default_str();
  bound_cmd->add_option("--sweep", bound_args.sweep, "Check COUNT random triples instead");
  bound_cmd->add_option("--max-n", bound_args.max_n)->capture_default_str();
  bound_cmd->add_option("--max-ell", bound_args.max_ell)->capture_default_str();
  bound_cmd->add_option("--inject-fault", bound_args.fault)->group("");
  bound_cmd->callback([&] { handler = [&](Context& c) { return cmd_check_bound(c, bound_args); }; });

  LedgerArgs ledger_args;
  auto* ledger_cmd = sub("ledger", "Replay the worst-case A* analysis against a real trace");
  add_instance_rho(ledger_cmd, ledger_args.io);
  ledger_cmd->add_option("--reopen", ledger_args.reopen)->capture_default_str();
  ledger_cmd->callback([&] { handler = [&](Context& c) { return cmd_ledger(c, ledger_args); }; });

  LearnArgs learn_args;
  auto* learn_cmd = sub("learn", "Minimize empirical inconsistency over a corpus");
  learn_cmd->add_option("--corpus", learn_args.corpus, "Directory of instance JSON files")->required();
  learn_cmd->add_option("--eta", learn_args.eta)->capture_default_str();
  learn_cmd->add_option("--decay", learn_args.decay)->capture_default_str();
  learn_cmd->add_option("--steps", learn_args.steps)->capture_default_str();
  learn_cmd->add_option("--init", learn_args.init)
      ->check(CLI::IsMember({"zeros", "exact", "given"}))
      ->capture_default_str();
  learn_cmd->add_option("--rho-init", learn_args.rho_init, "Initial rho for --init given");
  learn_cmd->add_option("--step-bits", learn_args.step_bits)->capture_default_str();
  learn_cmd->callback([&] { handler = [&](Context& c) { return cmd_learn(c, learn_args); }; });

  LowerBoundArgs lb_args;
  auto* lb_cmd = sub("lower-bound", "Emit the shatterable instance family");
  lb_cmd->add_option("--n", lb_args.n)->required();
  lb_cmd->add_option("--subset", lb_args.subset, "Also emit rho for this subset")->delimiter(',');
  lb_cmd->callback([&] { handler = [&](Context& c) { return cmd_lower_bound(c, lb_args); }; });

  ShatterArgs shatter_args;
  auto* shatter_cmd = sub("shatter", "Verify that the family is shattered at threshold 5/2");
  shatter_cmd->add_option("--n", shatter_args.n)->required();
  shatter_cmd->add_option("--algo", shatter_args.algo)->check(CLI::IsMember(kAlgorithmNames))->capture_default_str();
  shatter_cmd->add_option("--reopen", shatter_args.reopen)->capture_default_str();
  shatter_cmd->add_flag("--exhaustive", shatter_args.exhaustive, "Test every subset");
  shatter_cmd->add_option("--samples", shatter_args.samples, "Subsets drawn otherwise")->capture_default_str();
  shatter_cmd->add_flag("--patterns", shatter_args.patterns, "List every achieved pattern");
  shatter_cmd->callback([&] { handler = [&](Context& c) { return cmd_shatter(c, shatter_args); }; });

  CensusArgs census_args;
  auto* census_cmd = sub("census", "Count distinct behaviors over a corpus");
  census_cmd->add_option("--algo", census_args.algo)->check(CLI::IsMember(kAlgorithmNames))->capture_default_str();
  census_cmd->add_option("--reopen", census_args.reopen)->capture_default_str();
  census_cmd->add_option("--corpus", census_args.corpus)->required();
  census_cmd->add_flag("--permutations", census_args.permutations, "Enumerate every vertex order (GBFS)");
  census_cmd->add_option("--samples", census_args.samples, "Random rho samples (A*)");
  census_cmd->add_option("--grid-points", census_args.grid_points)->capture_default_str();
  census_cmd->add_option("--lo", census_args.lo)->capture_default_str();
  census_cmd->add_option("--hi", census_args.hi)->capture_default_str();
  census_cmd->callback([&] { handler = [&](Context& c) { return cmd_census(c, census_args); }; });

  GCostArgs gcost_args;
  auto* gcost_cmd = sub("gcosts", "Catalog the distinct simple-path costs per vertex");
  add_instance_rho(gcost_cmd, gcost_args.io, false);
  gcost_cmd->add_option("--max-paths", gcost_args.max_paths)->capture_default_str();
  gcost_cmd->add_option("--max-vertices", gcost_args.max_vertices)->capture_default_str();
  gcost_cmd->callback([&] { handler = [&](Context& c) { return cmd_gcosts(c, gcost_args); }; });

  GapArgs gap_args;
  auto* gap_cmd = sub("gap", "Train/held-out inconsistency gap across sample sizes");
  gap_cmd->add_option("--config", gap_args.config)->required();
  gap_cmd->add_option("--bound-shape", gap_args.bound_shape, "Also write the bound-shape CSV here");
  gap_cmd->callback([&] { handler = [&](Context& c) { return cmd_gap(c, gap_args); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  name = app.get_subcommands().front()->get_name();
  gap_args.seed_given = seed_opt->count() > 0;
  if (g.jobs == 0) g.jobs = 1;

  Context ctx(g);
  try {
    Emission e = handler(ctx);
    emit(ctx, name, args, e, name == "lower-bound" && !g.out.empty(), out, err);
    if (e.status != kExitOk) err << "error: " << e.message << '\n';
    return e.status;
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& ex) {
    err << "invalid input: " << ex.what() << '\n';
    return kExitInvalidInput;
  } catch (const TheoryViolation& ex) {
    err << "theory violation: " << ex.what() << '\n';
    return kExitTheoryViolation;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "invalid input: " << ex.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace hlearn
