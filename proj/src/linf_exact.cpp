#include "discrepancy/linf_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "discrepancy/error.hpp"
#include "discrepancy/kernels.hpp"
#include "discrepancy/local.hpp"

namespace disc {

MarginalCDF::MarginalCDF(std::vector<Table> tables) : tables_(std::move(tables)) {
  if (tables_.empty()) throw InvalidArgument("distribution needs at least one coordinate");
  for (const Table& t : tables_) {
    if (t.size() < 2) throw InvalidArgument("distribution table needs at least two knots");
    if (t.front() != std::pair<double, double>{0.0, 0.0} || t.back() != std::pair<double, double>{1.0, 1.0}) {
      throw InvalidArgument("distribution table must run from (0,0) to (1,1)");
    }
    for (std::size_t k = 1; k < t.size(); ++k) {
      if (!(t[k].first > t[k - 1].first)) {
        throw InvalidArgument("distribution knots must be strictly increasing (jumps are not supported)");
      }
      if (!(t[k].second >= t[k - 1].second)) throw InvalidArgument("distribution values must be nondecreasing");
    }
  }
}

MarginalCDF MarginalCDF::identity(std::size_t d) {
  return MarginalCDF(std::vector<Table>(d, Table{{0.0, 0.0}, {1.0, 1.0}}));
}

double MarginalCDF::marginal(std::size_t j, double y) const {
  const Table& t = tables_.at(j);
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const auto it = std::upper_bound(t.begin(), t.end(), y, [](double v, const auto& knot) { return v < knot.first; });
  const auto& [x1, f1] = *it;
  const auto& [x0, f0] = *(it - 1);
  return f0 + (y - x0) * (f1 - f0) / (x1 - x0);
}

double MarginalCDF::operator()(std::span<const double> y) const {
  if (y.size() != dim()) throw DimensionMismatch(dim(), y.size());
  double v = 1.0;
  for (std::size_t j = 0; j < y.size(); ++j) v *= marginal(j, y[j]);
  return v;
}

double g_local_value(std::span<const double> y, BoxKind kind, const WeightedPointSet& x, const MarginalCDF* g) {
  const double vol = g ? (*g)(y) : volume(y);
  return kind == BoxKind::open ? vol - open_mass(y, x) : closed_mass(y, x) - vol;
}

namespace {

double count_value(std::span<const double> y, BoxKind kind, const PointSet& x, const MarginalCDF* g) {
  if (!g) return local_value(y, kind, x);
  const double n = static_cast<double>(x.size());
  const double vol = (*g)(y);
  return kind == BoxKind::open ? vol - static_cast<double>(open_count(y, x)) / n
                               : static_cast<double>(closed_count(y, x)) / n - vol;
}

void require_dim(const PointSet& x, std::size_t d) {
  if (x.dim() != d) throw DimensionMismatch(d, x.dim());
}

StarResult finish(const PointSet& x, std::vector<double> y, BoxKind kind, std::string method,
                  const MarginalCDF* g = nullptr) {
  Corner c(std::move(y));
  const double v = count_value(c.values(), kind, x, g);
  return {v, std::move(c), kind, std::move(method)};
}

// Lays out the grid problem for the slab kernel: axis j has corner indices
// s = 0..n_j; the open corner is augmented[s] and the closed corner is
// values[s-1] (s = 0 has no closed corner). A point of rank r is counted from
// s = r + 1 on for both kinds.
kernels::SlabProblem grid_problem(std::size_t d, std::size_t n, const std::vector<double>& coords,
                                  const MarginalCDF* g, std::vector<std::vector<double>>& axis_values) {
  if (g && g->dim() != d) throw DimensionMismatch(d, g->dim());
  kernels::SlabProblem p;
  p.sizes.resize(d);
  p.vol_open.resize(d);
  p.vol_closed.resize(d);
  p.open_act.resize(n * d);
  axis_values.assign(d, {});
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double>& vals = axis_values[j];
    for (std::size_t i = 0; i < n; ++i) vals.push_back(coords[i * d + j]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    const std::size_t m = vals.size();
    p.sizes[j] = m + 1;
    auto f = [&](double v) { return g ? g->marginal(j, v) : v; };
    p.vol_open[j].resize(m + 1);
    p.vol_closed[j].resize(m + 1);
    for (std::size_t s = 0; s <= m; ++s) {
      p.vol_open[j][s] = s < m ? f(vals[s]) : f(1.0);
      p.vol_closed[j][s] = s == 0 ? std::numeric_limits<double>::infinity() : f(vals[s - 1]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), coords[i * d + j]) - vals.begin());
      p.open_act[i * d + j] = r + 1;
    }
  }
  return p;
}

std::vector<double> grid_corner(const kernels::SlabResult& r, const std::vector<std::vector<double>>& axis_values) {
  std::vector<double> y(r.index.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    const std::size_t s = r.index[j];
    const auto& vals = axis_values[j];
    if (r.kind == BoxKind::open) {
      y[j] = s < vals.size() ? vals[s] : 1.0;
    } else {
      y[j] = vals[s - 1];
    }
  }
  return y;
}

void check_grid_budget(const kernels::SlabProblem& p, std::size_t budget) {
  const std::size_t corners = p.corner_count();
  if (corners > budget) {
    throw BudgetExceeded("grid enumeration needs " + std::to_string(corners) + " corners, budget is " +
                         std::to_string(budget) + "; use a cover or threshold-accepting bound instead");
  }
}

template <class Kernel>
StarResult grid_enum_points(const PointSet& x, const MarginalCDF* g, std::size_t budget, Kernel&& kernel) {
  std::vector<std::vector<double>> axis_values;
  kernels::SlabProblem p = grid_problem(x.dim(), x.size(), {x.coords().begin(), x.coords().end()}, g, axis_values);
  check_grid_budget(p, budget);
  p.weights.assign(x.size(), 1.0);
  p.normalizer = static_cast<double>(x.size());
  const kernels::SlabResult r = kernel(p);
  return finish(x, grid_corner(r, axis_values), r.kind, "grid", g);
}

}  // namespace

StarResult star_grid_enum(const PointSet& x, const MarginalCDF* g, std::size_t budget) {
  return grid_enum_points(x, g, budget, [](const kernels::SlabProblem& p) { return kernels::slab_maximum(p); });
}

StarResult serial::star_grid_enum(const PointSet& x, const MarginalCDF* g, std::size_t budget) {
  return grid_enum_points(x, g, budget,
                          [](const kernels::SlabProblem& p) { return kernels::serial::slab_maximum(p); });
}

StarResult star_grid_enum(const WeightedPointSet& x, const MarginalCDF* g, std::size_t budget) {
  std::vector<std::vector<double>> axis_values;
  kernels::SlabProblem p = grid_problem(x.dim(), x.size(), {x.coords().begin(), x.coords().end()}, g, axis_values);
  check_grid_budget(p, budget);
  p.weights.assign(x.weights().begin(), x.weights().end());
  p.normalizer = 1.0;
  const kernels::SlabResult r = kernels::slab_maximum(p);
  Corner c(grid_corner(r, axis_values));
  const double v = g_local_value(c.values(), r.kind, x, g);
  return {v, std::move(c), r.kind, "grid"};
}

StarResult star_1d(const PointSet& x) {
  require_dim(x, 1);
  std::vector<double> s(x.coords().begin(), x.coords().end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double best = -1.0;
  double best_y = 1.0;
  BoxKind kind = BoxKind::open;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    const double above = static_cast<double>(i) / n - s[i - 1];
    const double below = s[i - 1] - static_cast<double>(i - 1) / n;
    if (below > best) {
      best = below;
      best_y = s[i - 1];
      kind = BoxKind::open;
    }
    if (above > best) {
      best = above;
      best_y = s[i - 1];
      kind = BoxKind::closed;
    }
  }
  // The corner y = 1 is never better than the last point's terms but keeps
  // the sweep honest for the open box.
  const double full = 1.0 - static_cast<double>(s.size()) / n;
  if (full > best) {
    best = full;
    best_y = 1.0;
    kind = BoxKind::open;
  }
  return finish(x, {best_y}, kind, "1d");
}

namespace {

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> y;
  BoxKind kind = BoxKind::open;

  void offer(double v, std::vector<double> corner, BoxKind k) {
    if (v > value) {
      value = v;
      y = std::move(corner);
      kind = k;
    }
  }
};

std::vector<std::size_t> order_by_first(const PointSet& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x(a, 0) < x(b, 0); });
  return order;
}

void sorted_insert(std::vector<double>& v, double value) { v.insert(std::upper_bound(v.begin(), v.end(), value), value); }

}  // namespace

StarResult star_2d(const PointSet& x) {
  require_dim(x, 2);
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  const auto order = order_by_first(x);
  auto first = [&](std::size_t i) { return i == 0 ? 0.0 : (i > n ? 1.0 : x(order[i - 1], 0)); };

  Best best;
  std::vector<double> xi;  // second coordinates of the first i points, sorted
  for (std::size_t i = 0; i <= n; ++i) {
    if (i > 0) sorted_insert(xi, x(order[i - 1], 1));
    auto xi_at = [&](std::size_t k) { return k == 0 ? 0.0 : (k > i ? 1.0 : xi[k - 1]); };
    const double a = first(i);
    const double b = first(i + 1);
    for (std::size_t k = 0; k <= i; ++k) {
      const double kn = static_cast<double>(k) / nd;
      if (i > 0 && k > 0) best.offer(kn - a * xi_at(k), {a, xi_at(k)}, BoxKind::closed);
      best.offer(b * xi_at(k + 1) - kn, {b, xi_at(k + 1)}, BoxKind::open);
    }
  }
  return finish(x, std::move(best.y), best.kind, "2d");
}

StarResult star_3d(const PointSet& x) {
  require_dim(x, 3);
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  const auto order = order_by_first(x);
  auto first = [&](std::size_t i) { return i == 0 ? 0.0 : (i > n ? 1.0 : x(order[i - 1], 0)); };

  Best best;
  std::vector<std::size_t> by_second;  // first i points ordered by second coordinate
  std::vector<double> eta;
  for (std::size_t i = 0; i <= n; ++i) {
    if (i > 0) {
      const std::size_t p = order[i - 1];
      const auto pos = std::upper_bound(by_second.begin(), by_second.end(), x(p, 1),
                                        [&](double v, std::size_t q) { return v < x(q, 1); });
      by_second.insert(pos, p);
    }
    auto xi_at = [&](std::size_t k) { return k == 0 ? 0.0 : (k > i ? 1.0 : x(by_second[k - 1], 1)); };
    const double a = first(i);
    const double b = first(i + 1);
    eta.clear();
    for (std::size_t k = 0; k <= i; ++k) {
      // eta: third coordinates of the first k points in second-coordinate order.
      if (k > 0) sorted_insert(eta, x(by_second[k - 1], 2));
      auto eta_at = [&](std::size_t l) { return l == 0 ? 0.0 : (l > k ? 1.0 : eta[l - 1]); };
      const double xk = xi_at(k);
      const double xk1 = xi_at(k + 1);
      for (std::size_t l = 0; l <= k; ++l) {
        const double ln = static_cast<double>(l) / nd;
        if (i > 0 && k > 0 && l > 0) best.offer(ln - a * xk * eta_at(l), {a, xk, eta_at(l)}, BoxKind::closed);
        best.offer(b * xk1 * eta_at(l + 1) - ln, {b, xk1, eta_at(l + 1)}, BoxKind::open);
      }
    }
  }
  return finish(x, std::move(best.y), best.kind, "3d");
}

double star_exact_cost(std::size_t n, std::size_t d) {
  const double nd = static_cast<double>(n);
  switch (d) {
    case 1:
      return nd * std::max(1.0, std::log2(nd));
    case 2:
      return nd * nd;
    case 3:
      return nd * nd * nd;
    default:
      return static_cast<double>(d) * std::pow(nd, static_cast<double>(d) / 2.0 + 1.0);
  }
}

StarResult star_exact(const PointSet& x, double budget) {
  const std::size_t d = x.dim();
  const double cost = star_exact_cost(x.size(), d);
  if (cost > budget) {
    std::ostringstream msg;
    msg << "exact star discrepancy for n=" << x.size() << ", d=" << d << " needs about " << cost
        << " operations, budget is " << budget << "; use cover-upper or ta-lower for bounds";
    throw BudgetExceeded(msg.str());
  }
  switch (d) {
    case 1:
      return star_1d(x);
    case 2:
      return star_2d(x);
    case 3:
      return star_3d(x);
    default:
      return star_dem(x);
  }
}

}  // namespace disc
