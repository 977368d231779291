#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "discrepancy/error.hpp"
#include "discrepancy/kernels.hpp"
#include "discrepancy/linf_approx.hpp"
#include "discrepancy/local.hpp"

namespace disc {

DeltaCover::DeltaCover(std::size_t dim, double delta, std::size_t resolution)
    : dim_(dim), delta_(delta), resolution_(resolution) {}

std::size_t DeltaCover::size() const {
  std::size_t total = 1;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (total > std::numeric_limits<std::size_t>::max() / resolution_) return std::numeric_limits<std::size_t>::max();
    total *= resolution_;
  }
  return total;
}

double DeltaCover::grid_size() const {
  return std::pow(static_cast<double>(resolution_ + 1), static_cast<double>(dim_));
}

double DeltaCover::coordinate(std::size_t k) const {
  return static_cast<double>(k) / static_cast<double>(resolution_);
}

Corner DeltaCover::corner(std::size_t flat) const {
  std::vector<double> y(dim_);
  for (std::size_t j = dim_; j-- > 0;) {
    y[j] = coordinate(flat % resolution_ + 1);
    flat /= resolution_;
  }
  return Corner(std::move(y));
}

std::pair<Corner, Corner> DeltaCover::bracket(std::span<const double> y) const {
  if (y.size() != dim_) throw DimensionMismatch(dim_, y.size());
  std::vector<double> lo(dim_), hi(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (!(y[j] >= 0.0 && y[j] <= 1.0)) throw InvalidArgument("bracket query outside [0,1]");
    // Smallest k >= 1 with k/G >= y_j, corrected against rounding.
    auto k = static_cast<std::size_t>(std::ceil(y[j] * static_cast<double>(resolution_)));
    while (k > 0 && coordinate(k - 1) >= y[j]) --k;
    while (coordinate(k) < y[j]) ++k;
    k = std::max<std::size_t>(k, 1);
    hi[j] = coordinate(k);
    lo[j] = coordinate(k - 1);
  }
  return {Corner(std::move(lo)), Corner(std::move(hi))};
}

double DeltaCover::reference_size_bound() const {
  const double d = static_cast<double>(dim_);
  return std::pow(2.0, d) / std::sqrt(2.0 * std::numbers::pi * d) * std::exp(d) * std::pow(1.0 / delta_ + 1.0, d);
}

std::string DeltaCover::describe() const {
  std::ostringstream out;
  out << "uniform grid d=" << dim_ << " delta=" << delta_ << " step=1/" << resolution_ << " corners=" << size()
      << " reference_bound=" << reference_size_bound();
  return out.str();
}

DeltaCover build_delta_cover(std::size_t d, double delta, std::size_t cap) {
  if (d == 0) throw InvalidArgument("cover dimension must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in (0, 1]");
  const auto resolution = static_cast<std::size_t>(std::ceil(static_cast<double>(d) / delta));
  DeltaCover cover(d, delta, resolution);
  if (cover.size() > cap) {
    throw BudgetExceeded("delta-cover has " + std::to_string(cover.grid_size()) + " grid corners, cap is " +
                         std::to_string(cap) + "; increase delta");
  }
  return cover;
}

namespace {

// Smallest k in [0, G] with x < k/G (open) or x <= k/G (closed).
std::size_t activation(const DeltaCover& cover, double x, bool closed) {
  const std::size_t g = cover.resolution();
  auto inside = [&](std::size_t k) { return closed ? x <= cover.coordinate(k) : x < cover.coordinate(k); };
  auto k = static_cast<std::size_t>(std::floor(x * static_cast<double>(g)));
  k = std::min(k, g);
  while (k > 0 && inside(k - 1)) --k;
  while (k <= g && !inside(k)) ++k;
  return k;
}

}  // namespace

BoundResult cover_bounds(const PointSet& x, double delta, std::size_t cap) {
  const DeltaCover cover = build_delta_cover(x.dim(), delta, cap);
  const std::size_t d = x.dim();
  const std::size_t n = x.size();
  const std::size_t g = cover.resolution();

  kernels::SlabProblem p;
  p.sizes.assign(d, g + 1);
  std::vector<double> vol(g + 1);
  vol[0] = std::numeric_limits<double>::infinity();  // zero coordinates are not cover corners
  for (std::size_t k = 1; k <= g; ++k) vol[k] = cover.coordinate(k);
  p.vol_open.assign(d, vol);
  p.vol_closed.assign(d, vol);
  p.open_act.resize(n * d);
  p.closed_act.resize(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      p.open_act[i * d + j] = activation(cover, x(i, j), false);
      p.closed_act[i * d + j] = activation(cover, x(i, j), true);
    }
  }
  p.weights.assign(n, 1.0);
  p.normalizer = static_cast<double>(n);

  const kernels::SlabResult best = kernels::slab_maximum(p);
  std::vector<double> y(d);
  for (std::size_t j = 0; j < d; ++j) y[j] = cover.coordinate(best.index[j]);
  Corner witness(std::move(y));
  const double lower = local_value(witness.values(), best.kind, x);
  BoundResult out{lower, lower + delta, std::move(witness), best.kind, "cover"};
  out.delta = delta;
  return out;
}

}  // namespace disc
