#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "discrepancy/point_set.hpp"
#include "discrepancy/random.hpp"

namespace disc {

/// Uniform-grid delta-cover: the corners {1/G, 2/G, ..., 1}^d with
/// G = ceil(d / delta). Any y in [0,1]^d lies in a cell bracket [x, z] with x
/// on the grid {0, 1/G, ..., 1}^d and V_z - V_x <= d/G <= delta.
/// The corners are represented implicitly.
class DeltaCover {
 public:
  DeltaCover(std::size_t dim, double delta, std::size_t resolution);

  std::size_t dim() const noexcept { return dim_; }
  double delta() const noexcept { return delta_; }
  std::size_t resolution() const noexcept { return resolution_; }
  /// Number of corners, G^d.
  std::size_t size() const;
  /// (G+1)^d, the grid including the zero coordinate.
  double grid_size() const;
  /// Corner number `flat` (axis 0 most significant).
  Corner corner(std::size_t flat) const;
  double coordinate(std::size_t k) const;
  /// Lower and upper ends of a bracket containing y; the upper end is a cover
  /// corner, the lower end may have zero coordinates.
  std::pair<Corner, Corner> bracket(std::span<const double> y) const;
  /// The known upper bound 2^d (2 pi d)^{-1/2} e^d (1/delta + 1)^d on the
  /// size of an optimal cover, for comparison.
  double reference_size_bound() const;
  std::string describe() const;

 private:
  std::size_t dim_;
  double delta_;
  std::size_t resolution_;
};

inline constexpr std::size_t kDefaultCoverCap = 50'000'000;

/// Throws InvalidArgument unless 0 < delta <= 1, BudgetExceeded if the cover
/// has more than `cap` corners.
DeltaCover build_delta_cover(std::size_t d, double delta, std::size_t cap = kDefaultCoverCap);

struct BoundResult {
  double lower;
  double upper;
  Corner witness;  ///< local value of `kind` at witness equals `lower`
  BoxKind kind;
  std::string method;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double delta = 0.0;
};

/// lower = best local value over the cover corners (open and closed boxes),
/// upper = lower + delta.
BoundResult cover_bounds(const PointSet& x, double delta, std::size_t cap = kDefaultCoverCap);

struct TAConfig {
  std::size_t iterations = 10000;
  std::size_t mc = 2;  ///< coordinates changed per move, clamped to d
  std::size_t k = 0;   ///< grid radius for the basic variant; 0 picks max(1, n/8)
  std::uint64_t seed = 0;
};

enum class TAVariant { basic, improved };

/// Threshold accepting on the augmented induced grid with random integer
/// offsets and an empirical-quantile threshold schedule. upper is 1.
BoundResult ta_basic(const PointSet& x, const TAConfig& cfg);

/// Continuous neighbourhoods sampled with density proportional to r^{d-1},
/// rounded down and up to critical boxes; one phase for each box kind.
BoundResult ta_improved(const PointSet& x, const TAConfig& cfg);

/// Best of `restarts` runs with seeds seed, seed+1, ...; ties go to the
/// lowest seed. Restarts run concurrently.
BoundResult ta_restarts(const PointSet& x, const TAConfig& cfg, std::size_t restarts, TAVariant variant);

struct GAConfig {
  std::size_t mu = 20;         ///< population size
  std::size_t crossovers = 20; ///< C
  std::size_t mutations = 20;  ///< M
  std::size_t stagnation = 50; ///< stop after this many generations without improvement
  std::size_t max_generations = 5000;
  std::uint64_t seed = 0;
};

/// (mu + lambda) evolutionary search over the augmented grid with uniform
/// crossover, single-step grid mutations and elitist selection. upper is 1.
BoundResult ga_lower_bound(const PointSet& x, const GAConfig& cfg);

/// Inverse of r -> (r^d - lo^d) / (hi^d - lo^d) on [lo, hi], clamped.
double polynomial_sample(double lo, double hi, std::size_t d, double s);

}  // namespace disc
