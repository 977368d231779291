#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "discrepancy/generators.hpp"
#include "discrepancy/l2.hpp"
#include "discrepancy/linf_approx.hpp"
#include "discrepancy/linf_exact.hpp"
#include "discrepancy/lp.hpp"
#include "discrepancy/random.hpp"
#include "discrepancy/scenario.hpp"

namespace disc::detail {

namespace {

PointSet random_set(Rng& rng, std::size_t n, std::size_t d, bool coarse) {
  std::vector<double> c(n * d);
  for (double& v : c) {
    v = uniform01(rng);
    if (coarse) v = std::floor(v * 4.0) / 4.0;
  }
  return PointSet(d, std::move(c));
}

std::vector<PointSet> suite(std::uint64_t seed, std::size_t count, std::size_t max_n, std::size_t max_d) {
  Rng rng(seed);
  std::vector<PointSet> out;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t d = 1 + t % max_d;
    const std::size_t n = 1 + uniform_index(rng, max_n);
    out.push_back(random_set(rng, n, d, t % 3 == 0));
  }
  return out;
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

Record check(const std::string& name, std::size_t cases, double max_error, double tolerance) {
  Record r("selftest");
  r.set("check", name).set("cases", static_cast<std::uint64_t>(cases)).set("max_error", max_error);
  r.set("tolerance", tolerance).set("status", std::string(max_error <= tolerance ? "pass" : "fail"));
  return r;
}

}  // namespace

std::vector<Record> run_selftest() {
  std::vector<Record> out;

  {
    double err = 0.0;
    const auto sets = suite(11, 60, 16, 5);
    for (const auto& x : sets) {
      const double ref = star_grid_enum(x).value;
      err = std::max(err, std::fabs(serial::star_grid_enum(x).value - ref));
      err = std::max(err, std::fabs(star_dem(x).value - ref));
      err = std::max(err, std::fabs(serial::star_dem(x).value - ref));
      if (x.dim() == 1) err = std::max(err, std::fabs(star_1d(x).value - ref));
      if (x.dim() == 2) err = std::max(err, std::fabs(star_2d(x).value - ref));
      if (x.dim() == 3) err = std::max(err, std::fabs(star_3d(x).value - ref));
    }
    out.push_back(check("star-linf-exact", sets.size(), err, 1e-12));
  }
  {
    double err = 0.0;
    std::size_t cases = 0;
    for (std::size_t d = 1; d <= 5; ++d) {
      const PointSet x = halton(200, d);
      const double ref = warnock_star_l2_sq(x);
      err = std::max(err, rel(star_l2_sq_fast(x), ref));
      err = std::max(err, rel(warnock_star_l2_sq_stable(x), ref));
      err = std::max(err, rel(serial::warnock_star_l2_sq(x), ref));
      ++cases;
    }
    out.push_back(check("star-l2", cases, err, 1e-10));
  }
  {
    double err = 0.0;
    const auto sets = suite(12, 20, 12, 4);
    for (const auto& x : sets) {
      const auto unit = ProductWeights::unit(x.dim());
      const double l2 = weighted_star_l2_sq(x, unit);
      err = std::max(err, rel(weighted_star_lp_pow(x, unit, 2), l2));
      err = std::max(err, rel(serial::weighted_star_lp_pow(x, unit, 2), l2));
      err = std::max(err, rel(modified_l2_sq(x), l2));
    }
    out.push_back(check("lp-vs-l2", sets.size(), err, 1e-10));
  }
  {
    // Excess of lower over exact, or of exact over upper.
    double err = 0.0;
    const auto sets = suite(13, 20, 20, 3);
    for (const auto& x : sets) {
      const double exact = star_exact(x).value;
      const BoundResult b = cover_bounds(x, 0.1);
      err = std::max({err, b.lower - exact, exact - b.upper, 0.0});
    }
    out.push_back(check("cover-sandwich", sets.size(), err, 1e-12));
  }
  {
    double err = 0.0;
    const auto sets = suite(14, 12, 20, 4);
    for (std::size_t t = 0; t < sets.size(); ++t) {
      const PointSet& x = sets[t];
      const double exact = star_exact(x).value;
      TAConfig cfg;
      cfg.iterations = 400;
      cfg.seed = t;
      GAConfig ga;
      ga.seed = t;
      ga.max_generations = 50;
      for (const BoundResult& b : {ta_basic(x, cfg), ta_improved(x, cfg), ga_lower_bound(x, ga)}) {
        err = std::max({err, b.lower - exact, 0.0});
        err = std::max(err, std::fabs(local_value(b.witness.values(), b.kind, x) - b.lower));
      }
    }
    out.push_back(check("heuristic-soundness", sets.size(), err, 1e-12));
  }
  {
    double err = 0.0;
    Rng rng(15);
    for (std::size_t t = 0; t < 6; ++t) {
      const std::size_t d = 1 + t % 3;
      const std::size_t n = 2 + uniform_index(rng, 6);
      std::vector<double> c(n * d);
      for (double& v : c) v = (1.0 + static_cast<double>(uniform_index(rng, 1000))) / 1001.0;
      // a shuffled first axis keeps the atoms distinct
      std::vector<std::size_t> first(n);
      for (std::size_t i = 0; i < n; ++i) first[i] = i + 1;
      shuffle(first, rng);
      for (std::size_t i = 0; i < n; ++i) c[i * d] = static_cast<double>(first[i]) / static_cast<double>(n + 1);
      DiscreteMeasure p = DiscreteMeasure::uniform(d, c);
      err = std::max(err, two_measure_star_disc(p, p));
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      const InnerWeights w = optimal_inner_weights(p, all);
      err = std::max({err, w.distance, std::fabs(w.lp_value)});
    }
    out.push_back(check("scenario-identity", 6, err, 1e-12));
  }
  return out;
}

}  // namespace disc::detail
