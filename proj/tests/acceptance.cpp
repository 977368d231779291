// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include <omp.h>

#include "discrepancy/cli.hpp"
#include "discrepancy/generators.hpp"
#include "discrepancy/halton_opt.hpp"
#include "discrepancy/l2.hpp"
#include "discrepancy/linf_approx.hpp"
#include "discrepancy/linf_exact.hpp"
#include "discrepancy/lp.hpp"
#include "discrepancy/scenario.hpp"
#include "oracles.hpp"

using namespace disc;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && secs > time_limit) {
    o.pass = false;
    o.detail += "; over time limit";
  }
  std::printf("criterion %d %s: %s (%s; %.2fs)\n", id, title, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  std::fflush(stdout);
  failures += !o.pass;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

Outcome midpoint_1d() {
  double worst = 0;
  for (std::size_t n = 1; n <= 1000; ++n) {
    worst = std::max(worst, std::fabs(star_1d(midpoint_set(n)).value - 1.0 / (2.0 * static_cast<double>(n))));
  }
  return {worst <= 1e-15, fmt("max error %.3g", worst)};
}

Outcome oracle_web() {
  auto sets = oracle::random_suite(1001, 500, 24, 1, 5);
  for (std::size_t d : {2, 3, 4}) sets.push_back(halton(32, d));
  double worst = 0;
  for (const PointSet& x : sets) {
    const double ref = star_grid_enum(x).value;
    worst = std::max(worst, std::fabs(star_dem(x).value - ref));
    if (x.dim() == 1) worst = std::max(worst, std::fabs(star_1d(x).value - ref));
    if (x.dim() == 2) worst = std::max(worst, std::fabs(star_2d(x).value - ref));
    if (x.dim() == 3) worst = std::max(worst, std::fabs(star_3d(x).value - ref));
  }
  return {worst <= 1e-12, std::to_string(sets.size()) + " sets, " + fmt("max disagreement %.3g", worst)};
}

Outcome l2_consistency() {
  Rng rng(1002);
  double fast = 0, stable = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = std::size_t{1} << (8 + t % 7);
    const PointSet x = oracle::random_points(rng, n, 1 + t % 6);
    const double w = warnock_star_l2_sq(x);
    fast = std::max(fast, rel(star_l2_sq_fast(x), w));
  }
  for (int t = 0; t < 60; ++t) {
    const PointSet x = oracle::random_points(rng, 1 + uniform_index(rng, 1000), 1 + t % 8);
    stable = std::max(stable, rel(warnock_star_l2_sq_stable(x), warnock_star_l2_sq(x)));
  }
  return {fast <= 1e-10 && stable <= 1e-12,
          fmt("fast vs direct %.3g", fast) + fmt(", stable vs direct %.3g", stable)};
}

Outcome formula_cross() {
  Rng rng(1003);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 1 + t % 4;
    const PointSet x = oracle::random_points(rng, 1 + uniform_index(rng, 32), d, t % 3 ? 0 : 5);
    const auto unit = ProductWeights::unit(d);
    worst = std::max(worst, rel(weighted_star_lp_pow(x, unit, 2), weighted_star_l2_sq(x, unit)));
  }
  const PointSet half(1, {0.5}), zero(1, {0.0});
  const auto u = ProductWeights::unit(1);
  double analytic = 0;
  for (double v : {weighted_star_lp_pow(half, u, 2) - 1.0 / 12, weighted_star_l2_sq(half, u) - 1.0 / 12,
                   weighted_star_lp_pow(zero, u, 2) - 1.0 / 3, weighted_star_l2_sq(zero, u) - 1.0 / 3,
                   weighted_star_lp_pow(half, u, 4) - 0.0125}) {
    analytic = std::max(analytic, std::fabs(v));
  }
  return {worst <= 1e-10 && analytic <= 1e-12, fmt("p=2 vs L2 %.3g", worst) + fmt(", analytic %.3g", analytic)};
}

Outcome sandwich() {
  const auto sets = oracle::random_suite(1004, 100, 64, 1, 4);
  double worst = 0;
  for (const PointSet& x : sets) {
    const double exact = star_exact(x).value;
    for (double delta : {0.1, 0.05}) {
      const auto b = cover_bounds(x, delta);
      worst = std::max({worst, b.lower - exact, exact - (b.lower + delta)});
    }
  }
  return {worst <= 1e-12, fmt("largest violation %.3g", worst)};
}

Outcome heuristics() {
  const auto sets = oracle::random_suite(1005, 40, 64, 1, 5);
  double excess = -1;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < sets.size(); ++t) {
    const PointSet& x = sets[t];
    const double exact = star_exact(x).value;
    TAConfig cfg;
    cfg.iterations = 10000;
    cfg.seed = 100 * t;
    const auto best = ta_restarts(x, cfg, 10, TAVariant::improved);
    const auto basic = ta_restarts(x, cfg, 10, TAVariant::basic);
    GAConfig ga;
    ga.seed = t;
    const auto g = ga_lower_bound(x, ga);
    excess = std::max({excess, best.lower - exact, basic.lower - exact, g.lower - exact});
    hits += best.lower >= exact - 1e-3;
  }
  const double share = static_cast<double>(hits) / static_cast<double>(sets.size());
  return {excess <= 1e-12 && share >= 0.8,
          std::to_string(hits) + "/" + std::to_string(sets.size()) + " within 1e-3" +
              fmt(", largest excess over exact %.3g", excess)};
}

Outcome hardness() {
  std::vector<Graph> graphs;
  for (std::size_t n = 1; n <= 8; ++n) {
    graphs.push_back(path_graph(n));
    graphs.push_back(star_graph(n));
    graphs.push_back(complete_graph(n));
    graphs.push_back(Graph{n, {}});
    if (n >= 3) graphs.push_back(cycle_graph(n));
  }
  Rng rng(1006);
  for (int t = 0; t < 60; ++t) {
    Graph g;
    g.vertices = 1 + uniform_index(rng, 8);
    for (std::size_t a = 0; a < g.vertices; ++a) {
      for (std::size_t b = a + 1; b < g.vertices; ++b) {
        if (uniform_index(rng, 100) < static_cast<std::size_t>(15 + t)) g.edges.emplace_back(a, b);
      }
    }
    graphs.push_back(g);
  }
  std::size_t bad = 0;
  for (const Graph& g : graphs) {
    const double box = oracle::largest_empty_box(dominating_set_instance(g, 0.5, 0.0));
    bad += box != std::ldexp(1.0, -static_cast<int>(oracle::domination_number(g.vertices, g.edges)));
  }
  return {bad == 0, std::to_string(graphs.size()) + " graphs, " + std::to_string(bad) + " mismatches"};
}

Outcome scenario() {
  Rng rng(1007);
  double full = 0, recompute = 0, gap = 0;
  std::size_t cases = 0, mismatches = 0;
  for (std::size_t big_n = 1; big_n <= 6; ++big_n) {
    for (int rep = 0; rep < 6; ++rep) {
      std::vector<std::size_t> grid(20);
      for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = i + 1;
      shuffle(grid, rng);
      std::vector<double> c;
      for (std::size_t i = 0; i < big_n; ++i) c.push_back(static_cast<double>(grid[i]) / 21.0);
      const auto p = DiscreteMeasure::uniform(1, c);
      std::vector<std::size_t> all(big_n);
      for (std::size_t i = 0; i < big_n; ++i) all[i] = i;
      full = std::max(full, optimal_inner_weights(p, all).distance);
      for (std::size_t n = 1; n <= big_n; ++n) {
        const auto r = forward_selection(p, n, true);
        recompute = std::max(recompute, std::fabs(r.distance - two_measure_star_disc(p, r.reduced)));
        double best = 2;
        for (std::uint32_t mask = 1; mask < (1u << big_n); ++mask) {
          if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
          std::vector<std::size_t> s;
          for (std::size_t i = 0; i < big_n; ++i) {
            if (mask >> i & 1u) s.push_back(i);
          }
          best = std::min(best, optimal_inner_weights(p, s).distance);
        }
        ++cases;
        if (r.distance > best + 1e-12) {
          ++mismatches;
          gap = std::max(gap, r.distance - best);
        }
      }
    }
  }
  return {full <= 1e-12 && recompute <= 1e-9 && mismatches == 0,
          fmt("full-support distance %.3g", full) + fmt(", recompute %.3g", recompute) + ", greedy above best subset in " +
              std::to_string(mismatches) + "/" + std::to_string(cases) + fmt(" cases (largest gap %.4g)", gap)};
}

Outcome permutations() {
  std::size_t worse = 0, checks = 0, better = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    HaltonSearchConfig cfg;
    cfg.seed = seed;
    const auto perms = optimize_halton_permutations(4, 64, cfg);
    const double f = halton_fitness(perms, 64);
    const double plain = modified_l2_sq(halton(64, 4));
    better += f < plain;
    for (std::size_t d : {1, 2, 3}) {
      HaltonSearchConfig small = cfg;
      small.generations = 15;
      const auto p = optimize_halton_permutations(d, 20 + 10 * d, small);
      worse += halton_fitness(p, 20 + 10 * d) > halton_fitness(PermutationConfig::identity(d), 20 + 10 * d);
      ++checks;
    }
    worse += f > halton_fitness(PermutationConfig::identity(4), 64);
    ++checks;
  }
  return {worse == 0 && better >= 9, std::to_string(better) + "/10 seeds below plain Halton, " + std::to_string(worse) +
                                         "/" + std::to_string(checks) + " runs worse than identity"};
}

std::string run_cli(const std::string& args, const std::string& input) {
  std::istringstream in(input), words(args);
  std::vector<std::string> argv;
  for (std::string w; words >> w;) argv.push_back(w);
  std::ostringstream out, err;
  const int code = run_command(argv, in, out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
  std::ostringstream pts, measure;
  pts.precision(17);
  measure.precision(17);
  Rng rng(1010);
  const PointSet x = oracle::random_points(rng, 40, 3);
  for (std::size_t i = 0; i < x.size(); ++i) pts << x(i, 0) << ' ' << x(i, 1) << ' ' << x(i, 2) << '\n';
  for (std::size_t i = 0; i < 7; ++i) measure << 1.0 / 7 << ' ' << (i + 1) / 8.0 << ' ' << uniform01(rng) << '\n';
  const char* commands[] = {
      "--no-timing --seed 9 disc --measure ta-lower --iterations 2000 --restarts 6",
      "--no-timing --seed 9 disc --measure ta-lower --variant basic --iterations 2000 --restarts 6",
      "--no-timing --seed 9 disc --measure ga-lower",
      "--no-timing disc --measure cover-upper --delta 0.1",
      "--no-timing disc --measure star-l2",
      "--no-timing disc --measure lp-even --p 4",
      "--no-timing disc --measure star-linf --method grid",
      "--no-timing --seed 9 gen --type ghalton --n 30 --d 5",
      "--json --no-timing --seed 9 optimize-perms --d 4 --points 40 --generations 10",
  };
  const char* reduce[] = {"--no-timing reduce --input - --n 3 --exact-inner",
                          "--no-timing reduce --input - --n 3 --method backward --exact-inner",
                          "--no-timing reduce --input - --n 2"};
  const int threads = omp_get_max_threads();
  std::size_t runs = 0, diffs = 0;
  auto compare = [&](const std::string& args, const std::string& input) {
    omp_set_num_threads(1);
    const std::string one = run_cli(args, input);
    omp_set_num_threads(std::max(threads, 4));
    const std::string many = run_cli(args, input);
    const std::string again = run_cli(args, input);
    runs += 3;
    diffs += (one != many) + (many != again) + (one.rfind("0\n", 0) != 0);
  };
  for (const char* c : commands) compare(c, pts.str());
  for (const char* c : reduce) compare(c, measure.str());
  omp_set_num_threads(threads);
  return {diffs == 0, std::to_string(runs) + " runs over 1 and " + std::to_string(std::max(threads, 4)) +
                          " threads, " + std::to_string(diffs) + " differences"};
}

}  // namespace

int main() {
  criterion(1, "minimal 1-D discrepancy", 1.0, midpoint_1d);
  criterion(2, "exact algorithms agree", 120.0, oracle_web);
  criterion(3, "L2 consistency", 300.0, l2_consistency);
  criterion(4, "Lp and L2 formulas", 0, formula_cross);
  criterion(5, "cover sandwich", 300.0, sandwich);
  criterion(6, "heuristic soundness and strength", 0, heuristics);
  criterion(7, "dominating set instances", 0, hardness);
  criterion(8, "scenario reduction", 0, scenario);
  criterion(9, "permutation optimizer", 0, permutations);
  criterion(10, "determinism", 0, determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
