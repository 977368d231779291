#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace disc {

/// A finite sequence of n >= 1 points in the half-open cube [0,1)^d.
/// Coordinates are stored row-major; duplicates are allowed.
class PointSet {
 public:
  PointSet(std::size_t dim, std::vector<double> coords);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }

  double operator()(std::size_t i, std::size_t j) const { return coords_[i * dim_ + j]; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  /// Orthogonal projection onto the listed coordinates, in the given order.
  PointSet project(std::span<const std::size_t> dims) const;

  /// The first `count` points.
  PointSet prefix(std::size_t count) const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/// Points with real (possibly negative) weights; represents a signed
/// measure sum_i v_i * delta(x_i), e.g. a quadrature rule.
class WeightedPointSet {
 public:
  WeightedPointSet(std::size_t dim, std::vector<double> coords, std::vector<double> weights);

  /// Equal weights 1/n.
  static WeightedPointSet uniform(const PointSet& points);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return coords_[i * dim_ + j]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

/// Upper corner y of the anchored test boxes [0,y) and [0,y]; y in [0,1]^d.
class Corner {
 public:
  explicit Corner(std::vector<double> values);

  std::size_t dim() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;

 private:
  std::vector<double> values_;
};

enum class BoxKind {
  open,    ///< [0,y): local discrepancy delta = V_y - A/n
  closed,  ///< [0,y]: local discrepancy delta_bar = Abar/n - V_y
};

const char* to_string(BoxKind kind);

}  // namespace disc
