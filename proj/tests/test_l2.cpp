#include <cmath>

#include "doctest.h"
#include "discrepancy/error.hpp"
#include "discrepancy/generators.hpp"
#include "discrepancy/l2.hpp"
#include "discrepancy/lp.hpp"
#include "oracles.hpp"

using namespace disc;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

HeinrichArray random_array(Rng& rng, std::size_t n, std::size_t d, bool ties) {
  HeinrichArray a;
  a.dim = d;
  for (std::size_t i = 0; i < n * d; ++i) {
    double v = uniform01(rng);
    if (ties) v = std::floor(v * 4) / 4;
    a.coords.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) a.weights.push_back(uniform01(rng) * 2 - 1);
  return a;
}

std::vector<std::vector<double>> rows(const HeinrichArray& a) {
  std::vector<std::vector<double>> r;
  for (std::size_t i = 0; i < a.size(); ++i) r.emplace_back(a.coords.begin() + i * a.dim, a.coords.begin() + (i + 1) * a.dim);
  return r;
}

ProductWeights random_gamma(Rng& rng, std::size_t d) {
  std::vector<double> g(d);
  for (double& v : g) v = uniform01(rng);
  std::sort(g.rbegin(), g.rend());
  return ProductWeights(g);
}

}  // namespace

TEST_SUITE("l2_discrepancy") {

TEST_CASE("analytic one-point values") {
  const PointSet half(1, {0.5}), zero(1, {0.0}), origin(2, {0.0, 0.0});
  CHECK(warnock_star_l2_sq(half) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(warnock_star_l2_sq(zero) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(warnock_star_l2_sq(origin) == doctest::Approx(11.0 / 18).epsilon(1e-14));
  CHECK(warnock_star_l2_sq_stable(half) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(star_l2_sq_fast(half) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(extreme_l2_sq(half) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(extreme_l2_sq(zero) == doctest::Approx(static_cast<double>(oracle::extreme_cells(zero))).epsilon(1e-14));
  CHECK(weighted_star_l2_sq(zero, ProductWeights::unit(1)) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(weighted_star_l2_sq(half, ProductWeights::unit(1)) == doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(weighted_star_l2_sq(origin, ProductWeights({0.0, 0.0})) == 0.0);
  CHECK(l2_from_sq(-1e-18) == 0.0);
  CHECK(l2_from_sq(0.25) == 0.5);
}

TEST_CASE("product weights must be nonincreasing and nonnegative") {
  CHECK_THROWS_AS(ProductWeights({0.5, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(ProductWeights({1.0, -0.5}), InvalidArgument);
  CHECK_THROWS_AS(weighted_star_l2_sq(PointSet(1, {0.5}), ProductWeights::unit(2)), DimensionMismatch);
}

TEST_CASE("heinrich D examples and direct sums") {
  HeinrichArray a{1, {0.1, 0.2}, {2, 3}}, b{1, {0.7}, {5}};
  CHECK(heinrich_D(a, b, 0) == 25.0);
  HeinrichArray c{1, {0.5}, {1}}, e{1, {0.25, 0.75}, {1, 1}};
  CHECK(heinrich_D(c, e, 1) == 0.75);
  CHECK(heinrich_D(c, HeinrichArray{1, {}, {}}, 1) == 0.0);
  CHECK_THROWS_AS(heinrich_D(c, e, 2), InvalidArgument);
  CHECK_THROWS_AS(heinrich_D(c, e, -1), InvalidArgument);

  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 1 + t % 5;
    const auto x = random_array(rng, 1 + uniform_index(rng, 40), d, t % 3 == 0);
    const auto y = random_array(rng, 1 + uniform_index(rng, 40), d, t % 4 == 0);
    for (std::size_t k = 0; k <= d; ++k) {
      const double want = oracle::pair_min_sum(rows(x), x.weights, rows(y), y.weights, k);
      CHECK(std::fabs(heinrich_D(x, y, static_cast<long>(k)) - want) <= 1e-12);
      CHECK(std::fabs(serial::heinrich_D(x, y, static_cast<long>(k)) - want) <= 1e-12);
    }
  }
  const auto x = random_array(rng, 32, 3, false), y = random_array(rng, 32, 3, false);
  CHECK(std::fabs(heinrich_D(x, y, 3) - oracle::pair_min_sum(rows(x), x.weights, rows(y), y.weights, 3)) <= 1e-12);
}

TEST_CASE("warnock agrees with quadruple precision and exact cell integration") {
  Rng rng(32);
  for (int t = 0; t < 40; ++t) {
    const PointSet x = oracle::random_points(rng, 1 + uniform_index(rng, 10), 1 + t % 3, t % 3 ? 0 : 4);
    const double cells = static_cast<double>(oracle::lp_cells(x, 2));
    CHECK(warnock_star_l2_sq(x) == doctest::Approx(cells).epsilon(1e-12));
    CHECK(warnock_star_l2_sq(x) == doctest::Approx(oracle::warnock_f128(x)).epsilon(1e-12));
    CHECK(star_l2_sq_fast(x) == doctest::Approx(cells).epsilon(1e-12));
  }
}

TEST_CASE("fast, stable and serial forms agree") {
  Rng rng(33);
  for (int t = 0; t < 30; ++t) {
    const PointSet x = oracle::random_points(rng, 1 + uniform_index(rng, 300), 1 + t % 6, t % 5 ? 0 : 8);
    const double w = warnock_star_l2_sq(x);
    CHECK(rel(star_l2_sq_fast(x), w) <= 1e-10);
    CHECK(rel(warnock_star_l2_sq_stable(x), w) <= 1e-12);
    CHECK(rel(serial::warnock_star_l2_sq(x), w) <= 1e-12);
    CHECK(w >= -1e-12);
  }
  for (std::size_t d = 1; d <= 8; ++d) {
    const PointSet x = oracle::random_points(rng, 64, d);
    CHECK(rel(warnock_star_l2_sq_stable(x), warnock_star_l2_sq(x)) <= 1e-12);
  }
}

TEST_CASE("stable form is at least as accurate in high dimension") {
  Rng rng(34);
  const PointSet x = oracle::random_points(rng, 2000, 10);
  const double ref = oracle::warnock_f128(x);
  const double plain = std::fabs(warnock_star_l2_sq(x) - ref);
  const double stable = std::fabs(warnock_star_l2_sq_stable(x) - ref);
  CHECK(stable <= plain);
}

TEST_CASE("signed measures") {
  // weights summing to zero: checked against the direct single and pair sums
  const WeightedPointSet q(2, {0.2, 0.7, 0.8, 0.3}, {0.5, -0.5});
  const std::vector<std::vector<double>> pts{{0.2, 0.7}, {0.8, 0.3}};
  const std::vector<double> v{0.5, -0.5};
  long double single = 0;
  for (std::size_t i = 0; i < 2; ++i) single += v[i] * (1 - pts[i][0] * pts[i][0]) * (1 - pts[i][1] * pts[i][1]);
  double pair = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 2; ++k) pair += v[i] * v[k] * (1 - std::max(pts[i][0], pts[k][0])) * (1 - std::max(pts[i][1], pts[k][1]));
  }
  const double want = 1.0 / 9 - 2.0 / 4 * static_cast<double>(single) + pair;
  CHECK(star_l2_sq_fast(q) == doctest::Approx(want).epsilon(1e-13));

  Rng rng(35);
  const PointSet x = oracle::random_points(rng, 50, 3);
  CHECK(rel(star_l2_sq_fast(WeightedPointSet::uniform(x)), warnock_star_l2_sq(x)) <= 1e-12);
}

TEST_CASE("extreme L2 against exact cell integration") {
  Rng rng(36);
  for (int t = 0; t < 30; ++t) {
    const PointSet x = oracle::random_points(rng, 1 + uniform_index(rng, 8), 1 + t % 2, t % 3 ? 0 : 4);
    const double v = extreme_l2_sq(x);
    CHECK(v == doctest::Approx(static_cast<double>(oracle::extreme_cells(x))).epsilon(1e-12));
    CHECK(v >= -1e-12);
  }
}

TEST_CASE("weighted L2 against subset-wise cell integration") {
  Rng rng(37);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 1 + t % 3;
    const PointSet x = oracle::random_points(rng, 1 + uniform_index(rng, 8), d, t % 3 ? 0 : 4);
    const ProductWeights g = random_gamma(rng, d);
    const double want = static_cast<double>(oracle::weighted_lp_cells(x, g.values(), 2, 2.0));
    CHECK(weighted_star_l2_sq(x, g) == doctest::Approx(want).epsilon(1e-11));
    CHECK(modified_l2_sq(x) == doctest::Approx(weighted_star_l2_sq(x, ProductWeights::unit(d))).epsilon(1e-14));
  }
}

TEST_CASE("heinrich and warnock agree across the crossover") {
  for (std::size_t n : {4, 16, 64, 256, 1024}) {
    const PointSet x = halton(n, 2);
    CHECK(rel(star_l2_sq_fast(x), warnock_star_l2_sq(x)) <= 1e-10);
  }
}

}
