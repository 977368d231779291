#include "discrepancy/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "discrepancy/error.hpp"
#include "discrepancy/generators.hpp"
#include "discrepancy/halton_opt.hpp"
#include "discrepancy/io.hpp"
#include "discrepancy/l2.hpp"
#include "discrepancy/linf_approx.hpp"
#include "discrepancy/linf_exact.hpp"
#include "discrepancy/lp.hpp"
#include "discrepancy/quality_report.hpp"
#include "discrepancy/report.hpp"
#include "discrepancy/scenario.hpp"
#include "selftest.hpp"

namespace disc {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  bool json = false;
  bool no_timing = false;
  std::optional<std::uint64_t> seed;
};

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  Globals g;
  RunReport report;
};

std::vector<double> as_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Randomized commands need an explicit seed in structured mode; otherwise a
// clock-derived seed is used and echoed in the report.
std::uint64_t resolve_seed(const Context& ctx, const char* what) {
  if (ctx.g.seed) return *ctx.g.seed;
  if (ctx.g.json) throw UsageError(std::string(what) + " needs --seed in --json mode");
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const auto seed = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(now).count());
  ctx.err << "using clock seed " << seed << '\n';
  return seed;
}

PointSet load_points(Context& ctx, const std::string& path) {
  if (path == "-") return parse_pointset(ctx.in);
  return read_pointset(path);
}

DiscreteMeasure load_measure(Context& ctx, const std::string& path) {
  if (path == "-") return parse_measure(ctx.in);
  return read_measure(path);
}

void add_bound(Record& r, const BoundResult& b) {
  r.set("lower", b.lower).set("upper", b.upper).set("method", b.method);
  r.set("kind", std::string(to_string(b.kind))).set("witness", as_vector(b.witness.values()));
}

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  std::string type;
  std::size_t n = 0;
  std::size_t d = 1;
  std::string perms;
  std::vector<std::int64_t> z;
  std::string graph = "path";
  double alpha = 0.5;
  double beta = 0.0;
  std::string output;
};

void run_gen(Context& ctx, const GenOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  Record rec("gen");
  rec.set("type", o.type);
  std::optional<PointSet> x;
  if (o.type == "halton") {
    x = halton(o.n, o.d);
  } else if (o.type == "ghalton") {
    if (!o.perms.empty()) {
      const PermutationConfig perms = read_permutations(o.perms);
      x = halton(o.n, o.d, &perms);
    } else {
      const std::uint64_t seed = resolve_seed(ctx, "ghalton with random permutations");
      Rng rng(seed);
      std::vector<Permutation> list;
      for (std::uint32_t p : first_primes(o.d)) list.push_back(random_permutation(p, rng));
      const PermutationConfig perms(std::move(list));
      x = halton(o.n, o.d, &perms);
      rec.set("seed", seed);
    }
  } else if (o.type == "lattice") {
    if (o.z.empty()) throw UsageError("lattice needs --z");
    x = rank1_lattice(o.n, o.z);
  } else if (o.type == "midpoint") {
    x = midpoint_set(o.n);
  } else if (o.type == "domset") {
    Graph g;
    if (o.graph == "path") g = path_graph(o.n);
    else if (o.graph == "cycle") g = cycle_graph(o.n);
    else if (o.graph == "star") g = star_graph(o.n);
    else if (o.graph == "complete") g = complete_graph(o.n);
    else throw UsageError("unknown graph '" + o.graph + "'");
    x = dominating_set_instance(g, o.alpha, o.beta);
  } else {
    throw UsageError("unknown generator '" + o.type + "'");
  }

  std::ostringstream text;
  text << "# " << o.type << " n=" << x->size() << " d=" << x->dim() << '\n';
  write_pointset(text, *x);
  if (o.output.empty()) {
    ctx.out << text.str();
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw InvalidArgument("cannot write '" + o.output + "'");
  file << text.str();
  rec.set("n", static_cast<std::uint64_t>(x->size())).set("d", static_cast<std::uint64_t>(x->dim()));
  rec.set("output", o.output).set(kTimeKey, seconds_since(start));
  ctx.report.records.push_back(std::move(rec));
}

// ---- disc ------------------------------------------------------------------

struct DiscOptions {
  std::string input = "-";
  std::string measure;
  std::string method = "auto";
  std::string gstar;
  std::optional<double> budget;
  int p = 2;
  std::vector<double> gamma;
  double delta = 0.05;
  std::string variant = "improved";
  std::size_t iterations = 10000;
  std::size_t restarts = 1;
  std::size_t mc = 2;
  std::size_t k = 0;
  std::size_t mu = 20;
  std::size_t lambda_c = 20;
  std::size_t lambda_m = 20;
  std::size_t stagnation = 50;
  std::size_t max_generations = 5000;
};

std::size_t size_budget(const std::optional<double>& b, std::size_t fallback) {
  if (!b) return fallback;
  if (!(*b >= 1.0)) throw UsageError("--budget must be at least 1");
  return *b >= 1.8e19 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(*b);
}

ProductWeights weights_for(const DiscOptions& o, std::size_t d) {
  if (o.gamma.empty()) return ProductWeights::unit(d);
  if (o.gamma.size() != d) throw DimensionMismatch(d, o.gamma.size());
  return ProductWeights(o.gamma);
}

void run_disc(Context& ctx, const DiscOptions& o) {
  const PointSet x = load_points(ctx, o.input);
  const auto start = std::chrono::steady_clock::now();
  Record rec(o.measure);
  rec.set("n", static_cast<std::uint64_t>(x.size())).set("d", static_cast<std::uint64_t>(x.dim()));
  const std::string& m = o.measure;

  if (m == "star-linf") {
    std::optional<MarginalCDF> g;
    if (!o.gstar.empty()) g = read_gstar(o.gstar);
    std::optional<StarResult> r;
    const std::string method = o.method;
    if (g) {
      if (method != "auto" && method != "grid") throw UsageError("--gstar works with --method grid only");
      r = star_grid_enum(x, &*g, size_budget(o.budget, kDefaultGridBudget));
    } else if (method == "auto") {
      r = star_exact(x, o.budget.value_or(kDefaultExactBudget));
    } else if (method == "1d") {
      r = star_1d(x);
    } else if (method == "2d") {
      r = star_2d(x);
    } else if (method == "3d") {
      r = star_3d(x);
    } else if (method == "grid") {
      r = star_grid_enum(x, nullptr, size_budget(o.budget, kDefaultGridBudget));
    } else if (method == "dem") {
      r = star_dem(x);
    } else {
      throw UsageError("unknown method '" + method + "'");
    }
    rec.set("value", r->value).set("squared", false).set("method", r->method);
    rec.set("kind", std::string(to_string(r->kind))).set("witness", as_vector(r->witness.values()));
  } else if (m == "star-l2") {
    rec.set("value", star_l2_sq_fast(x)).set("squared", true).set("method", std::string("heinrich"));
  } else if (m == "extreme-l2") {
    rec.set("value", extreme_l2_sq(x)).set("squared", true).set("method", std::string("closed-form"));
  } else if (m == "modified-l2") {
    rec.set("value", modified_l2_sq(x)).set("squared", true).set("method", std::string("closed-form"));
  } else if (m == "weighted-l2") {
    rec.set("value", weighted_star_l2_sq(x, weights_for(o, x.dim())));
    rec.set("squared", true).set("method", std::string("closed-form"));
  } else if (m == "lp-even") {
    const double v = weighted_star_lp_pow(x, weights_for(o, x.dim()), o.p, o.budget.value_or(kDefaultLpBudget));
    rec.set("value", v).set("squared", true).set("power", static_cast<std::uint64_t>(o.p));
    rec.set("method", std::string("tuple-sum"));
  } else if (m == "cover-upper") {
    const BoundResult b = cover_bounds(x, o.delta, size_budget(o.budget, kDefaultCoverCap));
    add_bound(rec, b);
    rec.set("delta", o.delta);
  } else if (m == "ta-lower") {
    if (o.variant != "basic" && o.variant != "improved") throw UsageError("--variant is basic or improved");
    TAConfig cfg;
    cfg.iterations = o.iterations;
    cfg.mc = o.mc;
    cfg.k = o.k;
    cfg.seed = resolve_seed(ctx, "ta-lower");
    const auto variant = o.variant == "basic" ? TAVariant::basic : TAVariant::improved;
    const BoundResult b = ta_restarts(x, cfg, o.restarts, variant);
    add_bound(rec, b);
    rec.set("seed", cfg.seed).set("iterations", static_cast<std::uint64_t>(cfg.iterations));
    rec.set("restarts", static_cast<std::uint64_t>(o.restarts));
  } else if (m == "ga-lower") {
    GAConfig cfg;
    cfg.mu = o.mu;
    cfg.crossovers = o.lambda_c;
    cfg.mutations = o.lambda_m;
    cfg.stagnation = o.stagnation;
    cfg.max_generations = o.max_generations;
    cfg.seed = resolve_seed(ctx, "ga-lower");
    const BoundResult b = ga_lower_bound(x, cfg);
    add_bound(rec, b);
    rec.set("seed", cfg.seed).set("generations", static_cast<std::uint64_t>(b.iterations));
  } else {
    throw UsageError("unknown measure '" + m + "'");
  }
  rec.set(kTimeKey, seconds_since(start));
  ctx.report.records.push_back(std::move(rec));
}

// ---- reduce ----------------------------------------------------------------

struct ReduceOptions {
  std::string input;
  std::size_t n = 0;
  std::string method = "forward";
  bool exact_inner = false;
  std::optional<double> budget;
  std::string output;
};

void run_reduce(Context& ctx, const ReduceOptions& o) {
  const DiscreteMeasure p = load_measure(ctx, o.input);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t budget = size_budget(o.budget, kDefaultScenarioBudget);
  ReductionResult r = [&] {
    if (o.method == "forward") return forward_selection(p, o.n, o.exact_inner, budget);
    if (o.method == "backward") return backward_selection(p, o.n, o.exact_inner, budget);
    throw UsageError("--method is forward or backward");
  }();
  Record rec("reduce");
  rec.set("method", o.method).set("inner", std::string(o.exact_inner ? "lp" : "nearest"));
  rec.set("atoms", static_cast<std::uint64_t>(p.size())).set("n", static_cast<std::uint64_t>(o.n));
  rec.set("distance", r.distance);
  std::vector<double> support(r.support.begin(), r.support.end());
  rec.set("support", support).set("probabilities", as_vector(r.reduced.probabilities()));
  std::vector<double> sizes;
  std::vector<double> dists;
  for (const auto& s : r.trace) {
    sizes.push_back(static_cast<double>(s.support_size));
    dists.push_back(s.distance);
  }
  rec.set("trace_sizes", sizes).set("trace_distances", dists);
  if (!o.output.empty()) {
    std::ofstream file(o.output);
    if (!file) throw InvalidArgument("cannot write '" + o.output + "'");
    write_measure(file, r.reduced);
    rec.set("output", o.output);
  }
  rec.set(kTimeKey, seconds_since(start));
  ctx.report.records.push_back(std::move(rec));
}

// ---- optimize-perms --------------------------------------------------------

struct PermOptions {
  std::size_t d = 0;
  std::size_t points = 0;
  HaltonSearchConfig cfg;
  std::string output;
};

void run_optimize_perms(Context& ctx, PermOptions o) {
  o.cfg.seed = resolve_seed(ctx, "optimize-perms");
  const auto start = std::chrono::steady_clock::now();
  const PermutationConfig perms = optimize_halton_permutations(o.d, o.points, o.cfg);
  Record rec("optimize-perms");
  rec.set("d", static_cast<std::uint64_t>(o.d)).set("points", static_cast<std::uint64_t>(o.points));
  rec.set("seed", o.cfg.seed).set("fitness", halton_fitness(perms, o.points));
  rec.set("identity_fitness", halton_fitness(PermutationConfig::identity(o.d), o.points));
  const auto primes = first_primes(o.d);
  for (std::size_t j = 0; j < o.d; ++j) {
    std::vector<double> v(perms[j].begin(), perms[j].end());
    rec.set("perm." + std::to_string(primes[j]), v);
  }
  if (!o.output.empty()) {
    std::ofstream file(o.output);
    if (!file) throw InvalidArgument("cannot write '" + o.output + "'");
    write_permutations(file, perms);
    rec.set("output", o.output);
  }
  rec.set(kTimeKey, seconds_since(start));
  ctx.report.records.push_back(std::move(rec));
}

// ---- report ----------------------------------------------------------------

// Manifest: {"sets": [{"name": ..., "path": ...} | {"name": ..., "gen": "halton",
// "n": ..., "d": ...}], "measures": [...], "seed", "delta", "iterations",
// "restarts", "exact_budget", "p"}. Paths are relative to the manifest.
void run_report(Context& ctx, const std::string& manifest_path) {
  std::ifstream file(manifest_path);
  if (!file) throw InvalidArgument("cannot open '" + manifest_path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("manifest: ") + e.what());
  }
  const auto base = std::filesystem::path(manifest_path).parent_path();
  try {
    std::vector<std::pair<std::string, PointSet>> sets;
    for (const auto& s : doc.at("sets")) {
      const std::string name = s.at("name");
      if (s.contains("path")) {
        sets.emplace_back(name, read_pointset((base / s.at("path").get<std::string>()).string()));
        continue;
      }
      const std::string gen = s.at("gen");
      const std::size_t n = s.at("n");
      const std::size_t d = s.value("d", std::size_t{1});
      if (gen == "halton") sets.emplace_back(name, halton(n, d));
      else if (gen == "midpoint") sets.emplace_back(name, midpoint_set(n));
      else if (gen == "lattice") sets.emplace_back(name, rank1_lattice(n, s.at("z").get<std::vector<std::int64_t>>()));
      else throw InvalidArgument("manifest: unknown generator '" + gen + "'");
    }
    const auto measures = doc.value("measures", quality_measures());
    QualityOptions opts;
    if (doc.contains("seed")) ctx.g.seed = doc.at("seed").get<std::uint64_t>();
    opts.delta = doc.value("delta", opts.delta);
    opts.iterations = doc.value("iterations", opts.iterations);
    opts.restarts = doc.value("restarts", opts.restarts);
    opts.exact_budget = doc.value("exact_budget", opts.exact_budget);
    opts.lp_p = doc.value("p", opts.lp_p);
    if (std::find(measures.begin(), measures.end(), "star-linf") != measures.end()) {
      opts.seed = resolve_seed(ctx, "report");
    }
    for (const QualityCell& c : quality_report(sets, measures, opts)) {
      Record rec("report");
      rec.set("set", c.set).set("measure", c.measure);
      if (c.value) rec.set("value", *c.value);
      if (c.lower) rec.set("lower", *c.lower).set("upper", *c.upper);
      if (c.error.empty()) rec.set("squared", c.squared).set("method", c.method);
      if (c.seed) rec.set("seed", *c.seed);
      if (!c.error.empty()) rec.set("error", c.error);
      rec.set(kTimeKey, c.seconds);
      ctx.report.records.push_back(std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("manifest: ") + e.what());
  }
}

// ---- selftest --------------------------------------------------------------

bool run_selftest_command(Context& ctx) {
  bool ok = true;
  for (Record& r : detail::run_selftest()) {
    const auto* status = r.find("status");
    if (status && std::get<std::string>(*status) != "pass") ok = false;
    ctx.report.records.push_back(std::move(r));
  }
  return ok;
}

void emit(Context& ctx) {
  if (ctx.g.json) {
    write_json(ctx.out, ctx.report, !ctx.g.no_timing);
  } else {
    write_text(ctx.out, ctx.report, !ctx.g.no_timing);
  }
}

int fail(Context& ctx, int code, const std::string& command, const std::string& message) {
  ctx.err << "error: " << message << '\n';
  Record rec(command.empty() ? std::string("error") : command);
  const char* status = code == kExitUsage ? "usage" : code == kExitBudget ? "budget" : "numeric";
  rec.set("status", std::string(status)).set("error", message);
  ctx.report.records.push_back(std::move(rec));
  emit(ctx);
  return code;
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? " " : "") + args[i];
  return s;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Context ctx{in, out, err, {}, {}};
  ctx.report.command = join(args);

  CLI::App app{"Discrepancy measures for point sets in the unit cube", "discrepancy"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", ctx.g.json, "Emit the report as JSON");
  app.add_flag("--no-timing", ctx.g.no_timing, "Leave out wall-clock times");
  app.add_option("--seed", ctx.g.seed, "Seed for randomized steps");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a point set");
  gen_cmd->add_option("--type", gen.type, "halton|ghalton|lattice|midpoint|domset")->required();
  gen_cmd->add_option("--n", gen.n, "Number of points (vertices for domset)")->required();
  gen_cmd->add_option("--d", gen.d, "Dimension");
  gen_cmd->add_option("--perms", gen.perms, "Permutation file for ghalton");
  gen_cmd->add_option("--z", gen.z, "Lattice generating vector")->delimiter(',');
  gen_cmd->add_option("--graph", gen.graph, "path|cycle|star|complete");
  gen_cmd->add_option("--alpha", gen.alpha);
  gen_cmd->add_option("--beta", gen.beta);
  gen_cmd->add_option("--output", gen.output, "Write points here instead of stdout");

  DiscOptions disc;
  auto* disc_cmd = app.add_subcommand("disc", "Evaluate a discrepancy measure");
  disc_cmd->add_option("--input", disc.input, "Point file, - for stdin");
  disc_cmd->add_option("--measure", disc.measure,
                       "star-linf|star-l2|extreme-l2|modified-l2|weighted-l2|lp-even|cover-upper|ta-lower|ga-lower")
      ->required();
  disc_cmd->add_option("--method", disc.method, "auto|1d|2d|3d|grid|dem");
  disc_cmd->add_option("--gstar", disc.gstar, "Marginal distribution file");
  disc_cmd->add_option("--budget", disc.budget, "Work budget");
  disc_cmd->add_option("--p", disc.p, "Even exponent for lp-even");
  disc_cmd->add_option("--gamma", disc.gamma, "Product weights")->delimiter(',');
  disc_cmd->add_option("--delta", disc.delta, "Cover width");
  disc_cmd->add_option("--variant", disc.variant, "basic|improved");
  disc_cmd->add_option("--iterations", disc.iterations);
  disc_cmd->add_option("--restarts", disc.restarts);
  disc_cmd->add_option("--mc", disc.mc);
  disc_cmd->add_option("--k", disc.k);
  disc_cmd->add_option("--mu", disc.mu);
  disc_cmd->add_option("--lambda-c", disc.lambda_c);
  disc_cmd->add_option("--lambda-m", disc.lambda_m);
  disc_cmd->add_option("--stagnation", disc.stagnation);
  disc_cmd->add_option("--max-generations", disc.max_generations);

  ReduceOptions reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce the support of a discrete measure");
  reduce_cmd->add_option("--input", reduce.input, "Measure file, - for stdin")->required();
  reduce_cmd->add_option("--n", reduce.n, "Target support size")->required();
  reduce_cmd->add_option("--method", reduce.method, "forward|backward");
  reduce_cmd->add_flag("--exact-inner", reduce.exact_inner, "Solve the weight LP for every candidate");
  reduce_cmd->add_option("--budget", reduce.budget);
  reduce_cmd->add_option("--output", reduce.output, "Write the reduced measure here");

  PermOptions perm;
  auto* perm_cmd = app.add_subcommand("optimize-perms", "Search digit permutations for generalized Halton");
  perm_cmd->add_option("--d", perm.d)->required();
  perm_cmd->add_option("--points", perm.points)->required();
  perm_cmd->add_option("--mu", perm.cfg.mu);
  perm_cmd->add_option("--lambda", perm.cfg.lambda);
  perm_cmd->add_option("--generations", perm.cfg.generations);
  perm_cmd->add_option("--output", perm.output, "Write the permutation file here");

  std::string manifest;
  auto* report_cmd = app.add_subcommand("report", "Quality table over a manifest of point sets");
  report_cmd->add_option("--manifest", manifest)->required();

  auto* self_cmd = app.add_subcommand("selftest", "Cross-check the algorithms against each other");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(ctx, kExitUsage, "", e.what());
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();
  try {
    if (gen_cmd->parsed()) {
      run_gen(ctx, gen);
      if (ctx.report.records.empty()) return kExitOk;
    } else if (disc_cmd->parsed()) {
      run_disc(ctx, disc);
    } else if (reduce_cmd->parsed()) {
      run_reduce(ctx, reduce);
    } else if (perm_cmd->parsed()) {
      run_optimize_perms(ctx, perm);
    } else if (report_cmd->parsed()) {
      run_report(ctx, manifest);
    } else if (self_cmd->parsed()) {
      const bool ok = run_selftest_command(ctx);
      validate(ctx.report);
      emit(ctx);
      return ok ? kExitOk : kExitNumeric;
    }
    validate(ctx.report);
  } catch (const BudgetExceeded& e) {
    ctx.report.records.clear();
    return fail(ctx, kExitBudget, command, e.what());
  } catch (const NumericFailure& e) {
    ctx.report.records.clear();
    return fail(ctx, kExitNumeric, command, e.what());
  } catch (const Error& e) {
    ctx.report.records.clear();
    return fail(ctx, kExitUsage, command, e.what());
  } catch (const std::exception& e) {
    ctx.report.records.clear();
    return fail(ctx, kExitNumeric, command, e.what());
  }
  emit(ctx);
  return kExitOk;
}

}  // namespace disc
