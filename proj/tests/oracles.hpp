#pragma once

// Slow, direct reference computations used as test oracles. None of these
// share code with the library beyond the PointSet container.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "discrepancy/point_set.hpp"
#include "discrepancy/random.hpp"
#include "discrepancy/scenario.hpp"

namespace oracle {

using disc::PointSet;
using disc::Rng;

inline std::vector<double> axis_values(const PointSet& x, std::size_t j) {
  std::vector<double> v;
  for (std::size_t i = 0; i < x.size(); ++i) v.push_back(x(i, j));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::size_t count_open(const PointSet& x, const std::vector<double>& y) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool in = true;
    for (std::size_t j = 0; j < x.dim(); ++j) in = in && x(i, j) < y[j];
    c += in;
  }
  return c;
}

inline std::size_t count_closed(const PointSet& x, const std::vector<double>& y) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool in = true;
    for (std::size_t j = 0; j < x.dim(); ++j) in = in && x(i, j) <= y[j];
    c += in;
  }
  return c;
}

inline double vol(const std::vector<double>& y) {
  double v = 1.0;
  for (double c : y) v *= c;
  return v;
}

/// Calls f(y) for every y in the product of the given axes.
inline void for_each_corner(const std::vector<std::vector<double>>& axes,
                            const std::function<void(const std::vector<double>&)>& f) {
  const std::size_t d = axes.size();
  std::vector<std::size_t> k(d, 0);
  std::vector<double> y(d);
  for (;;) {
    for (std::size_t j = 0; j < d; ++j) y[j] = axes[j][k[j]];
    f(y);
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (++k[j] < axes[j].size()) break;
      k[j] = 0;
      if (j == 0) return;
    }
  }
}

/// Star discrepancy by scanning every corner of the induced grids.
inline double star_brute(const PointSet& x) {
  const double n = static_cast<double>(x.size());
  std::vector<std::vector<double>> closed_axes, open_axes;
  for (std::size_t j = 0; j < x.dim(); ++j) {
    closed_axes.push_back(axis_values(x, j));
    open_axes.push_back(closed_axes.back());
    if (open_axes.back().back() != 1.0) open_axes.back().push_back(1.0);
  }
  double best = 0.0;
  for_each_corner(open_axes, [&](const std::vector<double>& y) {
    best = std::max(best, vol(y) - static_cast<double>(count_open(x, y)) / n);
  });
  for_each_corner(closed_axes, [&](const std::vector<double>& y) {
    best = std::max(best, static_cast<double>(count_closed(x, y)) / n - vol(y));
  });
  return best;
}

/// Both local discrepancies over the mesh {0, 1/m, ..., 1}^d.
inline double star_mesh(const PointSet& x, std::size_t m) {
  std::vector<double> axis;
  for (std::size_t k = 0; k <= m; ++k) axis.push_back(static_cast<double>(k) / static_cast<double>(m));
  const double n = static_cast<double>(x.size());
  double best = 0.0;
  for_each_corner(std::vector<std::vector<double>>(x.dim(), axis), [&](const std::vector<double>& y) {
    best = std::max(best, vol(y) - static_cast<double>(count_open(x, y)) / n);
    best = std::max(best, static_cast<double>(count_closed(x, y)) / n - vol(y));
  });
  return best;
}

/// Squared Warnock formula evaluated in quadruple precision.
inline double warnock_f128(const PointSet& x) {
  using Q = __float128;
  const std::size_t n = x.size(), d = x.dim();
  Q single = 0, pair = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Q prod = 1;
    for (std::size_t j = 0; j < d; ++j) prod *= (1 - static_cast<Q>(x(i, j)) * static_cast<Q>(x(i, j)));
    single += prod;
    for (std::size_t k = 0; k < n; ++k) {
      Q p2 = 1;
      for (std::size_t j = 0; j < d; ++j) p2 *= 1 - static_cast<Q>(std::max(x(i, j), x(k, j)));
      pair += p2;
    }
  }
  Q third = 1, half = 1;
  for (std::size_t j = 0; j < d; ++j) {
    third /= 3;
    half /= 2;
  }
  const Q nn = static_cast<Q>(n);
  return static_cast<double>(third - 2 * half / nn * single + pair / (nn * nn));
}

/// Cells of the grid {0, coordinates, 1} per axis; on the interior of a cell
/// the open count is constant, so integrals of powers of the local
/// discrepancy are polynomial integrals.
inline long double lp_cells(const PointSet& x, int p) {
  const std::size_t d = x.dim();
  const long double n = static_cast<long double>(x.size());
  std::vector<std::vector<double>> cuts;
  for (std::size_t j = 0; j < d; ++j) {
    auto v = axis_values(x, j);
    if (v.front() != 0.0) v.insert(v.begin(), 0.0);
    v.push_back(1.0);
    cuts.push_back(v);
  }
  std::vector<std::vector<double>> starts;
  for (const auto& c : cuts) starts.emplace_back(c.begin(), c.end() - 1);
  long double total = 0;
  std::vector<long double> moment(p + 1);
  for_each_corner(starts, [&](const std::vector<double>& a) {
    // cell [a_j, b_j]; count points with x_j <= a_j on every axis
    std::size_t c = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      bool in = true;
      for (std::size_t j = 0; j < d; ++j) in = in && x(i, j) <= a[j];
      c += in;
    }
    for (int k = 0; k <= p; ++k) {
      long double m = 1;
      for (std::size_t j = 0; j < d; ++j) {
        const auto& cj = cuts[j];
        const long double lo = a[j];
        const long double hi = *std::upper_bound(cj.begin(), cj.end(), a[j]);
        m *= (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / (k + 1);
      }
      moment[k] = m;
    }
    const long double frac = static_cast<long double>(c) / n;
    long double binom = 1, sum = 0;
    for (int k = p; k >= 0; --k) {
      sum += binom * std::pow(-frac, p - k) * moment[k];
      binom = binom * k / (p - k + 1);
    }
    total += sum;
  });
  return total;
}

/// sum over nonempty u of w(u) * (integral of |local discrepancy of X_u|^p),
/// w(u) = prod_{j in u} gamma_j^e.
inline long double weighted_lp_cells(const PointSet& x, const std::vector<double>& gamma, int p, double e) {
  const std::size_t d = x.dim();
  long double total = 0;
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    std::vector<std::size_t> dims;
    long double w = 1;
    for (std::size_t j = 0; j < d; ++j) {
      if (mask >> j & 1u) {
        dims.push_back(j);
        w *= std::pow(static_cast<long double>(gamma[j]), e);
      }
    }
    total += w * lp_cells(x.project(dims), p);
  }
  return total;
}

/// Squared extreme L2 discrepancy by exact cell integration over pairs
/// y <= z. Per axis the pair region is a rectangle (different cells) or a
/// triangle (same cell).
inline long double extreme_cells(const PointSet& x) {
  const std::size_t d = x.dim();
  const long double n = static_cast<long double>(x.size());
  std::vector<std::vector<double>> cuts;
  for (std::size_t j = 0; j < d; ++j) {
    auto v = axis_values(x, j);
    if (v.front() != 0.0) v.insert(v.begin(), 0.0);
    v.push_back(1.0);
    cuts.push_back(v);
  }
  auto G = [](long double t, int k) { return std::pow(t, k + 2) / ((k + 1) * (k + 2)); };
  // moments of (z - y)^k over y in cell a, z in cell b, a <= b
  auto moment = [&](const std::vector<double>& c, std::size_t a, std::size_t b, int k) -> long double {
    const long double y0 = c[a], y1 = c[a + 1], z0 = c[b], z1 = c[b + 1];
    if (a == b) return G(y1 - y0, k);
    return G(z1 - y0, k) + G(z0 - y1, k) - G(z1 - y1, k) - G(z0 - y0, k);
  };
  std::vector<std::vector<double>> pairs;  // encoded a * 1000 + b
  for (const auto& c : cuts) {
    std::vector<double> codes;
    for (std::size_t a = 0; a + 1 < c.size(); ++a) {
      for (std::size_t b = a; b + 1 < c.size(); ++b) codes.push_back(static_cast<double>(a * 1000 + b));
    }
    pairs.push_back(codes);
  }
  long double total = 0;
  for_each_corner(pairs, [&](const std::vector<double>& code) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      bool in = true;
      for (std::size_t j = 0; j < d && in; ++j) {
        const auto a = static_cast<std::size_t>(code[j]) / 1000, b = static_cast<std::size_t>(code[j]) % 1000;
        in = a != b && x(i, j) >= cuts[j][a + 1] && x(i, j) <= cuts[j][b];
      }
      count += in;
    }
    long double m0 = 1, m1 = 1, m2 = 1;
    for (std::size_t j = 0; j < d; ++j) {
      const auto a = static_cast<std::size_t>(code[j]) / 1000, b = static_cast<std::size_t>(code[j]) % 1000;
      m0 *= moment(cuts[j], a, b, 0);
      m1 *= moment(cuts[j], a, b, 1);
      m2 *= moment(cuts[j], a, b, 2);
    }
    const long double c = static_cast<long double>(count) / n;
    total += m2 - 2 * c * m1 + c * c * m0;
  });
  return total;
}

/// sum_i sum_j v_i w_j prod_k min(y_k, z_k) over the first d coordinates.
inline double pair_min_sum(const std::vector<std::vector<double>>& a, const std::vector<double>& v,
                           const std::vector<std::vector<double>>& b, const std::vector<double>& w, std::size_t d) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      long double prod = static_cast<long double>(v[i]) * w[j];
      for (std::size_t k = 0; k < d; ++k) prod *= std::min(a[i][k], b[j][k]);
      s += prod;
    }
  }
  return static_cast<double>(s);
}

/// Largest volume of an open anchored box with corner in the augmented grid
/// that contains no point.
inline double largest_empty_box(const PointSet& x) {
  std::vector<std::vector<double>> axes;
  for (std::size_t j = 0; j < x.dim(); ++j) {
    axes.push_back(axis_values(x, j));
    if (axes.back().back() != 1.0) axes.back().push_back(1.0);
  }
  double best = 0.0;
  for_each_corner(axes, [&](const std::vector<double>& y) {
    if (count_open(x, y) == 0) best = std::max(best, vol(y));
  });
  return best;
}

/// Smallest dominating set size by subset enumeration.
inline std::size_t domination_number(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::uint32_t> closed(n);
  for (std::size_t i = 0; i < n; ++i) closed[i] = 1u << i;
  for (auto [a, b] : edges) {
    closed[a] |= 1u << b;
    closed[b] |= 1u << a;
  }
  std::size_t best = n;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::uint32_t covered = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (s >> i & 1u) covered |= closed[i];
    }
    if (covered == (1u << n) - 1) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(s)));
  }
  return best;
}

/// sup over open and closed anchored boxes of |P(B) - Q(B)| by direct
/// enumeration of the union grid.
inline double two_measure_brute(const disc::DiscreteMeasure& p, const disc::DiscreteMeasure& q) {
  const std::size_t d = p.dim();
  std::vector<std::vector<double>> closed_axes(d), open_axes(d);
  for (std::size_t j = 0; j < d; ++j) {
    auto& v = closed_axes[j];
    for (std::size_t i = 0; i < p.size(); ++i) v.push_back(p.atom(i)[j]);
    for (std::size_t i = 0; i < q.size(); ++i) v.push_back(q.atom(i)[j]);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    open_axes[j] = v;
    open_axes[j].push_back(1.0);
  }
  auto mass = [&](const disc::DiscreteMeasure& m, const std::vector<double>& y, bool closed) {
    long double s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      bool in = true;
      for (std::size_t j = 0; j < d; ++j) in = in && (closed ? m.atom(i)[j] <= y[j] : m.atom(i)[j] < y[j]);
      if (in) s += m.probability(i);
    }
    return s;
  };
  long double best = 0;
  for_each_corner(open_axes, [&](const std::vector<double>& y) {
    best = std::max(best, std::fabs(mass(p, y, false) - mass(q, y, false)));
  });
  for_each_corner(closed_axes, [&](const std::vector<double>& y) {
    best = std::max(best, std::fabs(mass(p, y, true) - mass(q, y, true)));
  });
  return static_cast<double>(best);
}

// ---- instance generators ---------------------------------------------------

/// n random points; with `levels` > 0 coordinates are drawn from
/// {0, 1/levels, ...} so ties are common.
inline PointSet random_points(Rng& rng, std::size_t n, std::size_t d, std::size_t levels = 0) {
  std::vector<double> c(n * d);
  for (double& v : c) {
    v = disc::uniform01(rng);
    if (levels) v = static_cast<double>(disc::uniform_index(rng, levels)) / static_cast<double>(levels);
  }
  return PointSet(d, std::move(c));
}

/// Mixed suite: about a third of the instances have coarse ties.
inline std::vector<PointSet> random_suite(std::uint64_t seed, std::size_t count, std::size_t max_n,
                                          std::size_t min_d, std::size_t max_d) {
  Rng rng(seed);
  std::vector<PointSet> out;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t d = min_d + t % (max_d - min_d + 1);
    const std::size_t n = 1 + disc::uniform_index(rng, max_n);
    const std::size_t levels = t % 3 == 0 ? 2 + disc::uniform_index(rng, 5) : 0;
    out.push_back(random_points(rng, n, d, levels));
  }
  return out;
}

}  // namespace oracle
