#pragma once

// L2-type discrepancies. Every function here returns the SQUARED
// discrepancy, i.e. the integral of the squared local discrepancy.

#include <cstddef>
#include <vector>

#include "discrepancy/point_set.hpp"

namespace disc {

/// Product weights gamma_1 >= ... >= gamma_d >= 0.
class ProductWeights {
 public:
  explicit ProductWeights(std::vector<double> gamma);
  static ProductWeights unit(std::size_t d) { return ProductWeights(std::vector<double>(d, 1.0)); }

  std::size_t dim() const noexcept { return gamma_.size(); }
  double operator[](std::size_t j) const { return gamma_[j]; }
  const std::vector<double>& values() const noexcept { return gamma_; }

 private:
  std::vector<double> gamma_;
};

/// Weighted points in [0,1]^d (closed cube) used by the divide-and-conquer
/// pair sum. Coordinates row-major.
struct HeinrichArray {
  std::size_t dim = 0;
  std::vector<double> coords;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  void validate() const;
};

/// D(A,B,d) = sum_i sum_j v_i w_j prod_{k<d} min(y_k^(i), z_k^(j)), using
/// only the first d coordinates. Throws InvalidArgument for negative d or
/// when d exceeds either array's dimension.
double heinrich_D(const HeinrichArray& a, const HeinrichArray& b, long d);

/// Squared L2 star discrepancy of the signed measure sum_i v_i delta(x_i).
/// O(n log^{d-1} n).
double star_l2_sq_fast(const WeightedPointSet& q);
/// Equal weights 1/n.
double star_l2_sq_fast(const PointSet& x);

/// Direct O(d n^2) formula.
double warnock_star_l2_sq(const PointSet& x);
/// Same quantity with each summand centred on its expectation under uniform
/// random points, summed with compensation.
double warnock_star_l2_sq_stable(const PointSet& x);

/// Squared extreme L2 discrepancy (boxes [y,z) with y <= z).
double extreme_l2_sq(const PointSet& x);

/// Squared weighted L2 star discrepancy for product weights.
double weighted_star_l2_sq(const PointSet& x, const ProductWeights& gamma);
/// The unit-weight case: squared modified L2 discrepancy.
double modified_l2_sq(const PointSet& x);

/// sqrt(max(0, sq)).
double l2_from_sq(double sq);

namespace serial {
double heinrich_D(const HeinrichArray& a, const HeinrichArray& b, long d);
double warnock_star_l2_sq(const PointSet& x);
}  // namespace serial

}  // namespace disc
