#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "discrepancy/error.hpp"
#include "discrepancy/linf_exact.hpp"
#include "discrepancy/local.hpp"
#include "oracles.hpp"

using namespace disc;

namespace {

PointSet single(std::vector<double> p) {
  const std::size_t d = p.size();
  return PointSet(d, std::move(p));
}

// Finite perturbation that stays inside the same grid cell on axis j.
double step_up(const PointSet& x, std::size_t j, double yj) {
  double next = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x(i, j) > yj) next = std::min(next, x(i, j));
  }
  return (yj + next) / 2.0;
}

double step_down(const PointSet& x, std::size_t j, double yj) {
  double prev = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x(i, j) < yj) prev = std::max(prev, x(i, j));
  }
  return (yj + prev) / 2.0;
}

// Criticality straight from the definition: every nonempty set of feasible
// coordinates moved a little must change the count.
CriticalFlags critical_by_definition(const std::vector<double>& y, const PointSet& x) {
  const std::size_t d = y.size();
  CriticalFlags f{true, true};
  const std::size_t a = oracle::count_open(x, y), abar = oracle::count_closed(x, y);
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    std::vector<double> up = y, down = y;
    bool up_ok = true, down_ok = true;
    for (std::size_t j = 0; j < d; ++j) {
      if (!(mask >> j & 1u)) continue;
      if (y[j] >= 1.0) up_ok = false;
      else up[j] = step_up(x, j, y[j]);
      if (y[j] <= 0.0) down_ok = false;
      else down[j] = step_down(x, j, y[j]);
    }
    if (up_ok && oracle::count_open(x, up) <= a) f.delta_critical = false;
    if (down_ok && oracle::count_closed(x, down) >= abar) f.delta_bar_critical = false;
  }
  return f;
}

}  // namespace

TEST_SUITE("pointset_core") {

TEST_CASE("point sets reject bad input") {
  CHECK_THROWS_AS(PointSet(2, {0.5, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(PointSet(2, {0.5, -0.1}), InvalidArgument);
  CHECK_THROWS_AS(PointSet(2, {0.5, 0.5, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(PointSet(2, {}), InvalidArgument);
  CHECK_THROWS_AS(PointSet(0, {}), InvalidArgument);
  CHECK_THROWS_AS(Corner({1.5}), InvalidArgument);
  CHECK_NOTHROW(Corner({1.0, 0.0}));
  CHECK_THROWS_AS(WeightedPointSet(1, {0.5}, {1.0, 2.0}), InvalidArgument);
  CHECK_NOTHROW(WeightedPointSet(1, {0.5, 0.25}, {1.0, -2.0}));
}

TEST_CASE("projection and prefix") {
  const PointSet x = PointSet::from_rows({{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}});
  const std::vector<std::size_t> dims{2, 0};
  const PointSet p = x.project(dims);
  CHECK(p.dim() == 2);
  CHECK(p(1, 0) == 0.6);
  CHECK(p(1, 1) == 0.4);
  CHECK(x.prefix(1).size() == 1);
}

TEST_CASE("volume") {
  CHECK(volume(Corner({1.0, 1.0, 1.0})) == 1.0);
  CHECK(volume(Corner({0.5, 0.5})) == 0.25);
  CHECK(volume(Corner({0.755, 0.776})) == doctest::Approx(0.58588).epsilon(1e-12));
}

TEST_CASE("local discrepancy examples") {
  const PointSet x = single({0.5, 0.5});
  auto l = local_discrepancy(Corner({0.5, 0.5}), x);
  CHECK(l.open_count == 0);
  CHECK(l.closed_count == 1);
  CHECK(l.delta_bar == 0.75);
  l = local_discrepancy(Corner({1.0, 1.0}), x);
  CHECK(l.open_count == 1);
  CHECK(l.delta == 0.0);

  l = local_discrepancy(Corner({0.25}), single({0.5}));
  CHECK(l.open_count == 0);
  CHECK(l.closed_count == 0);
  CHECK(l.delta == 0.25);
  CHECK(l.delta_bar == -0.25);
  CHECK(l.delta_star == 0.25);

  CHECK_THROWS_AS(local_discrepancy(Corner({0.5}), x), DimensionMismatch);
}

TEST_CASE("local discrepancy invariants on random corners") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const PointSet x = oracle::random_points(rng, 1 + t % 9, 1 + t % 4, t % 2 ? 4 : 0);
    std::vector<double> y(x.dim());
    for (double& c : y) c = uniform01(rng);
    const auto l = local_discrepancy(Corner(y), x);
    CHECK(l.delta_star == std::max(l.delta, l.delta_bar));
    CHECK(l.open_count <= l.closed_count);
    CHECK(l.closed_count <= x.size());
    CHECK(l.open_count == oracle::count_open(x, y));
    CHECK(l.closed_count == oracle::count_closed(x, y));
    CHECK(l.delta <= star_exact(x).value);
    CHECK(l.delta_bar <= star_exact(x).value);
  }
}

TEST_CASE("grid view") {
  GridView g = grid_view(PointSet::from_rows({{0.3, 0.7}, {0.3, 0.2}}));
  CHECK(g.axes[0].values == std::vector<double>{0.3});
  CHECK(g.axes[0].augmented == std::vector<double>{0.3, 1.0});
  CHECK(g.axes[1].values == std::vector<double>{0.2, 0.7});
  CHECK(g.axes[1].order == std::vector<std::size_t>{1, 0});
  CHECK(g.grid_size() == 2);
  CHECK(g.augmented_grid_size() == 6);

  g = grid_view(single({0.5}));
  CHECK(g.axes[0].augmented == std::vector<double>{0.5, 1.0});

  Rng rng(2);
  const PointSet x = oracle::random_points(rng, 7, 3);
  g = grid_view(x);
  CHECK(g.grid_size() == 343);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& a = g.axes[j];
    CHECK(std::is_sorted(a.values.begin(), a.values.end()));
    for (std::size_t r = 1; r < a.order.size(); ++r) CHECK(x(a.order[r - 1], j) <= x(a.order[r], j));
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(a.values[a.rank[i]] == x(i, j));
  }
}

TEST_CASE("classify critical examples") {
  const PointSet x = single({0.5, 0.5});
  CHECK(classify_critical(Corner({0.5, 1.0}), x).delta_critical);
  CHECK(classify_critical(Corner({0.5, 0.5}), x).delta_bar_critical);
  CHECK(classify_critical(Corner({1.0, 1.0}), x).delta_critical);
  CHECK_FALSE(classify_critical(Corner({0.5, 0.5}), x).delta_critical);
}

TEST_CASE("classify critical matches the definition on every grid corner") {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const PointSet x = oracle::random_points(rng, 1 + t % 6, 1 + t % 3, t % 2 ? 3 : 0);
    std::vector<std::vector<double>> axes;
    for (std::size_t j = 0; j < x.dim(); ++j) {
      auto v = oracle::axis_values(x, j);
      v.insert(v.begin(), 0.0);
      v.push_back(1.0);
      v.erase(std::unique(v.begin(), v.end()), v.end());
      axes.push_back(v);
    }
    oracle::for_each_corner(axes, [&](const std::vector<double>& y) {
      const auto got = classify_critical(Corner(y), x);
      const auto want = critical_by_definition(y, x);
      CHECK(got.delta_critical == want.delta_critical);
      CHECK(got.delta_bar_critical == want.delta_bar_critical);
    });
  }
}

TEST_CASE("enumerate critical examples") {
  auto all = enumerate_critical(single({0.5, 0.5}), std::nullopt, 1000);
  std::vector<std::vector<double>> open, closed;
  for (const auto& c : all) {
    auto& dst = c.kind == BoxKind::open ? open : closed;
    dst.emplace_back(c.corner.values().begin(), c.corner.values().end());
  }
  std::sort(open.begin(), open.end());
  CHECK(closed == std::vector<std::vector<double>>{{0.5, 0.5}});
  CHECK(open == std::vector<std::vector<double>>{{0.5, 1.0}, {1.0, 0.5}, {1.0, 1.0}});

  // count 1: the closed box at the point and the open box at 1
  auto k1 = enumerate_critical(single({0.5}), 1, 1000);
  REQUIRE(k1.size() == 2);
  for (const auto& c : k1) CHECK(c.corner == Corner({c.kind == BoxKind::closed ? 0.5 : 1.0}));

  const PointSet line = PointSet(1, {0.1, 0.7, 0.4, 0.9});
  auto every = enumerate_critical(line, std::nullopt, 1000);
  CHECK(every.size() == 4 + 5);

  Rng rng(10);
  CHECK_THROWS_AS(enumerate_critical(oracle::random_points(rng, 10, 3), std::nullopt, 100), BudgetExceeded);
}

TEST_CASE("enumerate critical agrees with classify on the grids") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const PointSet x = oracle::random_points(rng, 1 + t % 5, 1 + t % 3, t % 2 ? 3 : 0);
    const auto crit = enumerate_critical(x, std::nullopt, 100000);
    std::size_t open = 0, closed = 0;
    for (const auto& c : crit) {
      const auto f = classify_critical(c.corner, x);
      if (c.kind == BoxKind::open) {
        CHECK(f.delta_critical);
        CHECK(c.count == open_count(c.corner.values(), x));
        ++open;
      } else {
        CHECK(f.delta_bar_critical);
        CHECK(c.count == closed_count(c.corner.values(), x));
        ++closed;
      }
    }
    std::size_t want_open = 0, want_closed = 0;
    std::vector<std::vector<double>> closed_axes, open_axes;
    for (std::size_t j = 0; j < x.dim(); ++j) {
      closed_axes.push_back(oracle::axis_values(x, j));
      open_axes.push_back(closed_axes.back());
      if (open_axes.back().back() != 1.0) open_axes.back().push_back(1.0);
    }
    oracle::for_each_corner(open_axes, [&](const std::vector<double>& y) {
      want_open += critical_by_definition(y, x).delta_critical;
    });
    oracle::for_each_corner(closed_axes, [&](const std::vector<double>& y) {
      want_closed += critical_by_definition(y, x).delta_bar_critical;
    });
    CHECK(open == want_open);
    CHECK(closed == want_closed);
    for (std::size_t k = 0; k <= x.size(); ++k) {
      for (const auto& c : enumerate_critical(x, k, 100000)) CHECK(c.count == k);
    }
  }
}

TEST_CASE("snap down") {
  const PointSet x = single({0.5, 0.5});
  CHECK(snap_down(Corner({0.8, 0.9}), x) == Corner({0.5, 0.5}));
  // no point in [0,y]: the smallest corner with the same closed count is the origin
  CHECK(snap_down(Corner({0.3, 0.9}), x) == Corner({0.0, 0.0}));
  CHECK(snap_down(Corner({0.2, 0.2}), PointSet::from_rows({{0.5, 0.1}, {0.1, 0.5}})) == Corner({0.0, 0.0}));
}

TEST_CASE("snap up") {
  const PointSet x = single({0.5, 0.5});
  bool saw_a = false, saw_b = false;
  for (std::uint64_t s = 0; s < 64; ++s) {
    Rng rng(s);
    const Corner z = snap_up(Corner({0.3, 0.3}), x, rng);
    saw_a = saw_a || z == Corner({1.0, 0.5});
    saw_b = saw_b || z == Corner({0.5, 1.0});
    CHECK((z == Corner({1.0, 0.5}) || z == Corner({0.5, 1.0})));
  }
  CHECK(saw_a);
  CHECK(saw_b);

  Rng rng(5);
  CHECK(snap_up(Corner({0.7, 0.6}), x, rng) == Corner({1.0, 1.0}));

  Rng r1(9), r2(9);
  const PointSet y = oracle::random_points(rng, 12, 4);
  CHECK(snap_up(Corner({0.2, 0.3, 0.4, 0.5}), y, r1) == snap_up(Corner({0.2, 0.3, 0.4, 0.5}), y, r2));
}

TEST_CASE("snapping keeps counts and never loses local discrepancy") {
  Rng rng(6);
  for (int t = 0; t < 300; ++t) {
    const PointSet x = oracle::random_points(rng, 1 + t % 12, 1 + t % 4, t % 3 ? 0 : 5);
    std::vector<double> y(x.dim());
    for (double& c : y) c = uniform01(rng);
    const Corner c(y);
    const Corner down = snap_down(c, x);
    CHECK(closed_count(down.values(), x) == closed_count(y, x));
    CHECK(local_value(down.values(), BoxKind::closed, x) >= local_value(y, BoxKind::closed, x));
    for (std::size_t j = 0; j < x.dim(); ++j) CHECK(down[j] <= y[j]);
    const Corner up = snap_up(c, x, rng);
    CHECK(open_count(up.values(), x) == open_count(y, x));
    CHECK(local_value(up.values(), BoxKind::open, x) >= local_value(y, BoxKind::open, x));
    for (std::size_t j = 0; j < x.dim(); ++j) {
      CHECK(up[j] >= y[j]);
      // maximal: nudging any coordinate that is below 1 admits a point
      if (up[j] < 1.0) {
        std::vector<double> more(up.values().begin(), up.values().end());
        more[j] = step_up(x, j, up[j]);
        CHECK(open_count(more, x) > open_count(up.values(), x));
      }
    }
  }
}

TEST_CASE("grid maximum equals the supremum over a fine mesh") {
  Rng rng(7);
  const std::size_t m = 20;
  for (int t = 0; t < 30; ++t) {
    // coordinates on a multiple of the mesh so the grid is part of it
    const PointSet coarse = oracle::random_points(rng, 1 + t % 8, 1 + t % 3, m);
    const double grid = oracle::star_brute(coarse);
    CHECK(star_exact(coarse).value == doctest::Approx(grid).epsilon(1e-12));
    CHECK(oracle::star_mesh(coarse, m) == doctest::Approx(grid).epsilon(1e-12));

    const PointSet x = oracle::random_points(rng, 1 + t % 8, 1 + t % 3);
    const double exact = star_exact(x).value;
    const double mesh = oracle::star_mesh(x, m);
    CHECK(mesh <= exact + 1e-12);
    CHECK(exact <= mesh + static_cast<double>(x.dim()) / m + 1e-12);
  }
}

TEST_CASE("projection never increases the star discrepancy") {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const PointSet x = oracle::random_points(rng, 2 + t % 10, 3, t % 2 ? 4 : 0);
    const double full = star_exact(x).value;
    for (std::uint32_t mask = 1; mask < 7; ++mask) {
      std::vector<std::size_t> dims;
      for (std::size_t j = 0; j < 3; ++j) {
        if (mask >> j & 1u) dims.push_back(j);
      }
      CHECK(star_exact(x.project(dims)).value <= full + 1e-12);
    }
  }
}

}
