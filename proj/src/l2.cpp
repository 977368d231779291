#include "discrepancy/l2.hpp"

#include <algorithm>
#include <cmath>

#include "discrepancy/compensated_sum.hpp"
#include "discrepancy/error.hpp"
#include "discrepancy/kernels.hpp"

namespace disc {

ProductWeights::ProductWeights(std::vector<double> gamma) : gamma_(std::move(gamma)) {
  for (std::size_t j = 0; j < gamma_.size(); ++j) {
    if (!(gamma_[j] >= 0.0) || !std::isfinite(gamma_[j])) throw InvalidArgument("weights must be finite and >= 0");
    if (j > 0 && gamma_[j] > gamma_[j - 1]) throw InvalidArgument("weights must be nonincreasing");
  }
}

namespace {

// Shared term sum_i prod_k (1 - x_k^2), compensated.
double sum_one_minus_square(const PointSet& x) {
  const std::size_t d = x.dim();
  CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < d; ++k) p *= 1.0 - x(i, k) * x(i, k);
    s.add(p);
  }
  return s.value();
}

double min_product(const PointSet& x, std::size_t i, std::size_t j) {
  double p = 1.0;
  for (std::size_t k = 0; k < x.dim(); ++k) p *= 1.0 - std::max(x(i, k), x(j, k));
  return p;
}

template <class PairSum>
double warnock_with(const PointSet& x, PairSum&& pair_sum) {
  const std::size_t d = x.dim();
  const double n = static_cast<double>(x.size());
  const double pairs = pair_sum(x.size(), [&](std::size_t i, std::size_t j) { return min_product(x, i, j); });
  CompensatedSum total;
  total.add(std::pow(3.0, -static_cast<double>(d)));
  total.add(-std::pow(2.0, 1.0 - static_cast<double>(d)) / n * sum_one_minus_square(x));
  total.add(pairs / (n * n));
  return total.value();
}

}  // namespace

double warnock_star_l2_sq(const PointSet& x) {
  return warnock_with(x, [](std::size_t n, auto&& f) { return kernels::symmetric_pair_sum(n, f); });
}

double serial::warnock_star_l2_sq(const PointSet& x) {
  return warnock_with(x, [](std::size_t n, auto&& f) { return kernels::serial::symmetric_pair_sum(n, f); });
}

double warnock_star_l2_sq_stable(const PointSet& x) {
  const std::size_t d = x.dim();
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  // All centring constants derive from one rounded 3^-d (the others are
  // power-of-two multiples of it), so the reconstruction below is exact
  // apart from the residual of that one rounding.
  double p3 = 1.0;
  for (std::size_t k = 0; k < d; ++k) p3 *= 3.0;
  const double third = 1.0 / p3;
  const double residual = std::fma(-p3, third, 1.0) / p3;
  const double half = std::ldexp(1.0, -static_cast<int>(d));
  const double two_thirds = std::ldexp(third, static_cast<int>(d));

  CompensatedSum single;
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < d; ++k) p *= 1.0 - x(i, k) * x(i, k);
    single.add(p - two_thirds);
  }

  const double pairs = kernels::row_sum(n, [&](std::size_t i) {
    CompensatedSum off;
    for (std::size_t j = i + 1; j < n; ++j) off.add(min_product(x, i, j) - third);
    double diag = 1.0;
    for (std::size_t k = 0; k < d; ++k) diag *= 1.0 - x(i, k);
    CompensatedSum row;
    row.add(2.0 * off.value());
    row.add(diag - half);
    return row;
  });

  CompensatedSum total;
  total.add(residual);
  total.add((half - third) / nd);
  total.add(-2.0 * half / nd * single.value());
  total.add(pairs / (nd * nd));
  return total.value();
}

double extreme_l2_sq(const PointSet& x) {
  const std::size_t d = x.dim();
  const double n = static_cast<double>(x.size());
  CompensatedSum single;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double c = x(i, k);
      const double r = 1.0 - c;
      p *= 1.0 - c * c * c - r * r * r;
    }
    single.add(p);
  }
  const double pairs = kernels::symmetric_pair_sum(x.size(), [&](std::size_t i, std::size_t j) {
    double p = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double lo = std::min(x(i, k), x(j, k));
      const double hi = std::max(x(i, k), x(j, k));
      p *= lo * (1.0 - hi);
    }
    return p;
  });
  CompensatedSum total;
  total.add(std::pow(12.0, -static_cast<double>(d)));
  total.add(-2.0 / (std::pow(6.0, static_cast<double>(d)) * n) * single.value());
  total.add(pairs / (n * n));
  return total.value();
}

double weighted_star_l2_sq(const PointSet& x, const ProductWeights& gamma) {
  const std::size_t d = x.dim();
  if (gamma.dim() != d) throw DimensionMismatch(d, gamma.dim());
  const double n = static_cast<double>(x.size());
  std::vector<double> g2(d);
  double constant = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    g2[k] = gamma[k] * gamma[k];
    constant *= 1.0 + g2[k] / 3.0;
  }
  CompensatedSum single;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < d; ++k) p *= 1.0 + g2[k] * (1.0 - x(i, k) * x(i, k)) / 2.0;
    single.add(p);
  }
  const double pairs = kernels::symmetric_pair_sum(x.size(), [&](std::size_t i, std::size_t j) {
    double p = 1.0;
    for (std::size_t k = 0; k < d; ++k) p *= 1.0 + g2[k] * (1.0 - std::max(x(i, k), x(j, k)));
    return p;
  });
  CompensatedSum total;
  total.add(constant);
  total.add(-2.0 / n * single.value());
  total.add(pairs / (n * n));
  return total.value();
}

double modified_l2_sq(const PointSet& x) { return weighted_star_l2_sq(x, ProductWeights::unit(x.dim())); }

double l2_from_sq(double sq) { return std::sqrt(std::max(0.0, sq)); }

double star_l2_sq_fast(const WeightedPointSet& q) {
  const std::size_t d = q.dim();
  HeinrichArray a;
  a.dim = d;
  a.coords.resize(q.coords().size());
  for (std::size_t k = 0; k < a.coords.size(); ++k) a.coords[k] = 1.0 - q.coords()[k];
  a.weights.assign(q.weights().begin(), q.weights().end());

  CompensatedSum single;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < d; ++k) p *= 1.0 - q(i, k) * q(i, k);
    single.add(q.weight(i) * p);
  }
  CompensatedSum total;
  total.add(std::pow(3.0, -static_cast<double>(d)));
  total.add(-std::pow(2.0, 1.0 - static_cast<double>(d)) * single.value());
  total.add(heinrich_D(a, a, static_cast<long>(d)));
  return total.value();
}

double star_l2_sq_fast(const PointSet& x) { return star_l2_sq_fast(WeightedPointSet::uniform(x)); }

}  // namespace disc
