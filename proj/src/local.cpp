#include "discrepancy/local.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "discrepancy/error.hpp"

namespace disc {

namespace {

void check_dim(std::size_t expected, std::size_t got) {
  if (expected != got) throw DimensionMismatch(expected, got);
}

bool in_open(std::span<const double> x, std::span<const double> y) {
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (!(x[j] < y[j])) return false;
  }
  return true;
}

bool in_closed(std::span<const double> x, std::span<const double> y) {
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (!(x[j] <= y[j])) return false;
  }
  return true;
}

std::size_t saturating_product(const GridView& g, bool augmented) {
  std::size_t total = 1;
  for (const auto& axis : g.axes) {
    const std::size_t m = augmented ? axis.augmented.size() : axis.values.size();
    if (total > std::numeric_limits<std::size_t>::max() / m) return std::numeric_limits<std::size_t>::max();
    total *= m;
  }
  return total;
}

}  // namespace

double volume(std::span<const double> y) {
  double v = 1.0;
  for (double c : y) v *= c;
  return v;
}

std::size_t open_count(std::span<const double> y, const PointSet& points) {
  check_dim(points.dim(), y.size());
  std::size_t count = 0;
  for (std::size_t i = 0; i < points.size(); ++i) count += in_open(points.point(i), y) ? 1 : 0;
  return count;
}

std::size_t closed_count(std::span<const double> y, const PointSet& points) {
  check_dim(points.dim(), y.size());
  std::size_t count = 0;
  for (std::size_t i = 0; i < points.size(); ++i) count += in_closed(points.point(i), y) ? 1 : 0;
  return count;
}

double open_mass(std::span<const double> y, const WeightedPointSet& points) {
  check_dim(points.dim(), y.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (in_open(points.point(i), y)) mass += points.weight(i);
  }
  return mass;
}

double closed_mass(std::span<const double> y, const WeightedPointSet& points) {
  check_dim(points.dim(), y.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (in_closed(points.point(i), y)) mass += points.weight(i);
  }
  return mass;
}

LocalDiscrepancy local_discrepancy(const Corner& y, const PointSet& points) {
  check_dim(points.dim(), y.dim());
  const double n = static_cast<double>(points.size());
  LocalDiscrepancy out{};
  out.volume = volume(y);
  out.open_count = open_count(y.values(), points);
  out.closed_count = closed_count(y.values(), points);
  out.delta = out.volume - static_cast<double>(out.open_count) / n;
  out.delta_bar = static_cast<double>(out.closed_count) / n - out.volume;
  out.delta_star = std::max(out.delta, out.delta_bar);
  return out;
}

double local_value(std::span<const double> y, BoxKind kind, const PointSet& points) {
  const double n = static_cast<double>(points.size());
  if (kind == BoxKind::open) return volume(y) - static_cast<double>(open_count(y, points)) / n;
  return static_cast<double>(closed_count(y, points)) / n - volume(y);
}

std::size_t GridView::grid_size() const { return saturating_product(*this, false); }
std::size_t GridView::augmented_grid_size() const { return saturating_product(*this, true); }

GridView grid_view(const PointSet& points) {
  const std::size_t n = points.size();
  GridView g;
  g.axes.resize(points.dim());
  for (std::size_t j = 0; j < points.dim(); ++j) {
    GridAxis& axis = g.axes[j];
    axis.order.resize(n);
    std::iota(axis.order.begin(), axis.order.end(), std::size_t{0});
    std::stable_sort(axis.order.begin(), axis.order.end(),
                     [&](std::size_t a, std::size_t b) { return points(a, j) < points(b, j); });
    axis.rank.resize(n);
    for (std::size_t idx : axis.order) {
      const double c = points(idx, j);
      if (axis.values.empty() || axis.values.back() < c) axis.values.push_back(c);
      axis.rank[idx] = axis.values.size() - 1;
    }
    axis.augmented = axis.values;
    axis.augmented.push_back(1.0);
  }
  return g;
}

CriticalFlags classify_critical(const Corner& y, const PointSet& points) {
  check_dim(points.dim(), y.dim());
  const std::size_t d = y.dim();
  const std::span<const double> yv = y.values();
  CriticalFlags flags{true, true};
  for (std::size_t j = 0; j < d && flags.delta_critical; ++j) {
    if (yv[j] >= 1.0) continue;
    bool blocked = false;
    for (std::size_t i = 0; i < points.size() && !blocked; ++i) {
      if (points(i, j) != yv[j]) continue;
      bool others_inside = true;
      for (std::size_t k = 0; k < d; ++k) {
        if (k != j && !(points(i, k) < yv[k])) {
          others_inside = false;
          break;
        }
      }
      blocked = others_inside;
    }
    flags.delta_critical = blocked;
  }
  for (std::size_t j = 0; j < d && flags.delta_bar_critical; ++j) {
    if (yv[j] <= 0.0) continue;
    bool touching = false;
    for (std::size_t i = 0; i < points.size() && !touching; ++i) {
      touching = points(i, j) == yv[j] && in_closed(points.point(i), yv);
    }
    flags.delta_bar_critical = touching;
  }
  return flags;
}

std::vector<CriticalCorner> enumerate_critical(const PointSet& points, std::optional<std::size_t> k,
                                               std::size_t budget) {
  const GridView g = grid_view(points);
  const std::size_t total = g.augmented_grid_size();
  if (total > budget) {
    throw BudgetExceeded("induced grid has " + std::to_string(total) + " corners, budget is " +
                         std::to_string(budget));
  }
  const std::size_t d = points.dim();
  std::vector<CriticalCorner> out;
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> y(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    bool in_gamma = true;
    for (std::size_t j = 0; j < d; ++j) {
      y[j] = g.axes[j].augmented[idx[j]];
      in_gamma = in_gamma && idx[j] < g.axes[j].values.size();
    }
    const Corner corner(y);
    const CriticalFlags flags = classify_critical(corner, points);
    if (flags.delta_critical) {
      const std::size_t c = open_count(y, points);
      if (!k || *k == c) out.push_back({corner, BoxKind::open, c});
    }
    if (in_gamma && flags.delta_bar_critical) {
      const std::size_t c = closed_count(y, points);
      if (!k || *k == c) out.push_back({corner, BoxKind::closed, c});
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (++idx[j] < g.axes[j].augmented.size()) break;
      idx[j] = 0;
    }
  }
  return out;
}

Corner snap_down(const Corner& y, const PointSet& points) {
  check_dim(points.dim(), y.dim());
  const std::size_t d = y.dim();
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto x = points.point(i);
    if (!in_closed(x, y.values())) continue;
    for (std::size_t j = 0; j < d; ++j) out[j] = std::max(out[j], x[j]);
  }
  return Corner(std::move(out));
}

Corner snap_up(const Corner& y, const PointSet& points, Rng& rng) {
  check_dim(points.dim(), y.dim());
  const std::size_t d = y.dim();
  std::vector<double> z(y.values().begin(), y.values().end());
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  shuffle(order, rng);
  for (std::size_t j : order) {
    // Raise z_j up to the nearest coordinate of a point that is kept out of
    // [0,z) by coordinate j alone.
    double limit = 1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto x = points.point(i);
      if (x[j] < z[j]) continue;
      bool others_inside = true;
      for (std::size_t k = 0; k < d; ++k) {
        if (k != j && !(x[k] < z[k])) {
          others_inside = false;
          break;
        }
      }
      if (others_inside) limit = std::min(limit, x[j]);
    }
    z[j] = limit;
  }
  return Corner(std::move(z));
}

}  // namespace disc
