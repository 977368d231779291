#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "discrepancy/point_set.hpp"

namespace disc {

/// Per-coordinate piecewise-linear distribution functions F_j on [0,1] with
/// F_j(0) = 0 and F_j(1) = 1; G(y) = prod_j F_j(y_j).
class MarginalCDF {
 public:
  using Table = std::vector<std::pair<double, double>>;  ///< knots (x, F(x))

  explicit MarginalCDF(std::vector<Table> tables);
  static MarginalCDF identity(std::size_t d);

  std::size_t dim() const noexcept { return tables_.size(); }
  const std::vector<Table>& tables() const noexcept { return tables_; }
  double marginal(std::size_t j, double y) const;
  /// G(y), multiplied left to right.
  double operator()(std::span<const double> y) const;

 private:
  std::vector<Table> tables_;
};

struct StarResult {
  double value;
  Corner witness;
  BoxKind kind;
  std::string method;
};

inline constexpr std::size_t kDefaultGridBudget = 100'000'000;
inline constexpr double kDefaultExactBudget = 1e10;

/// Niederreiter's formula after sorting. Requires d == 1.
StarResult star_1d(const PointSet& x);

/// Maximum over the augmented induced grid of the open-box value and over the
/// induced grid of the closed-box value. With a MarginalCDF the Lebesgue
/// volume is replaced by G. Throws BudgetExceeded when the augmented grid has
/// more than `budget` corners.
StarResult star_grid_enum(const PointSet& x, const MarginalCDF* g = nullptr,
                          std::size_t budget = kDefaultGridBudget);
/// Signed-measure version: counts become weight sums.
StarResult star_grid_enum(const WeightedPointSet& x, const MarginalCDF* g = nullptr,
                          std::size_t budget = kDefaultGridBudget);

/// O(n^2) sweep over the points sorted by the first coordinate. Requires d == 2.
StarResult star_2d(const PointSet& x);
/// O(n^3) nested sweep. Requires d == 3.
StarResult star_3d(const PointSet& x);

/// Divide-and-conquer over rank thresholds with a per-cell dynamic program;
/// O(n^{d/2+1}) for fixed d. Any d >= 1.
StarResult star_dem(const PointSet& x);

/// Work estimate used by star_exact: n log n, n^2, n^3 for d = 1, 2, 3 and
/// d * n^{d/2+1} otherwise.
double star_exact_cost(std::size_t n, std::size_t d);

/// Dispatches by dimension; throws BudgetExceeded if the estimate exceeds
/// `budget`.
StarResult star_exact(const PointSet& x, double budget = kDefaultExactBudget);

/// Local value of the given kind with G in place of the Lebesgue volume.
double g_local_value(std::span<const double> y, BoxKind kind, const WeightedPointSet& x, const MarginalCDF* g);

namespace serial {
StarResult star_grid_enum(const PointSet& x, const MarginalCDF* g = nullptr,
                          std::size_t budget = kDefaultGridBudget);
StarResult star_dem(const PointSet& x);
}  // namespace serial

}  // namespace disc
