#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "discrepancy/point_set.hpp"
#include "discrepancy/random.hpp"

namespace disc {

/// V_y, the volume of [0,y). Multiplies left to right.
double volume(std::span<const double> y);
inline double volume(const Corner& y) { return volume(y.values()); }

/// Number of points in the open box [0,y).
std::size_t open_count(std::span<const double> y, const PointSet& points);
/// Number of points in the closed box [0,y].
std::size_t closed_count(std::span<const double> y, const PointSet& points);

/// Signed mass of the open / closed box for a weighted set.
double open_mass(std::span<const double> y, const WeightedPointSet& points);
double closed_mass(std::span<const double> y, const WeightedPointSet& points);

struct LocalDiscrepancy {
  double delta;       ///< V_y - A/n
  double delta_bar;   ///< Abar/n - V_y
  double delta_star;  ///< max(delta, delta_bar)
  std::size_t open_count;
  std::size_t closed_count;
  double volume;
};

LocalDiscrepancy local_discrepancy(const Corner& y, const PointSet& points);

/// The single-kind local discrepancy at y; this is the value every exact and
/// heuristic routine reports for its witness.
double local_value(std::span<const double> y, BoxKind kind, const PointSet& points);

/// Induced grids Gamma_j(X) and Gamma_bar_j(X) = Gamma_j(X) u {1}.
struct GridAxis {
  std::vector<double> values;     ///< strictly increasing distinct coordinates
  std::vector<double> augmented;  ///< values followed by 1
  std::vector<std::size_t> order; ///< point indices sorted by this coordinate (stable)
  std::vector<std::size_t> rank;  ///< rank[i]: index of point i's coordinate in `values`
};

struct GridView {
  std::vector<GridAxis> axes;

  std::size_t dim() const noexcept { return axes.size(); }
  /// |Gamma(X)| and |Gamma_bar(X)|, saturating at SIZE_MAX.
  std::size_t grid_size() const;
  std::size_t augmented_grid_size() const;
};

GridView grid_view(const PointSet& points);

struct CriticalFlags {
  bool delta_critical;
  bool delta_bar_critical;
};

/// Exact test of the two criticality conditions. For each coordinate with a
/// feasible move, an infinitesimal increase raises A(y) iff some point has
/// x_j == y_j and x_k < y_k elsewhere; an infinitesimal decrease lowers
/// Abar(y) iff some point of [0,y] has x_j == y_j.
CriticalFlags classify_critical(const Corner& y, const PointSet& points);

struct CriticalCorner {
  Corner corner;
  BoxKind kind;       ///< open: delta-critical in Gamma_bar; closed: delta_bar-critical in Gamma
  std::size_t count;  ///< A(y) for open, Abar(y) for closed
};

/// All delta-critical corners of Gamma_bar(X) and delta_bar-critical corners
/// of Gamma(X), optionally filtered to count == k. Throws BudgetExceeded when
/// |Gamma_bar(X)| > budget.
std::vector<CriticalCorner> enumerate_critical(const PointSet& points, std::optional<std::size_t> k,
                                               std::size_t budget);

/// Smallest corner below y with the same closed count; coordinates from Gamma_j u {0}.
Corner snap_down(const Corner& y, const PointSet& points);

/// A maximal corner above y with the same open count, raising coordinates in
/// an order drawn from `rng`; coordinates end up in Gamma_bar_j.
Corner snap_up(const Corner& y, const PointSet& points, Rng& rng);

}  // namespace disc
