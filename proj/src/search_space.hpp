#pragma once

// Shared pieces of the randomized lower-bound searches.

#include <algorithm>
#include <numeric>
#include <vector>

#include "discrepancy/linf_approx.hpp"
#include "discrepancy/local.hpp"

namespace disc::detail {

struct Scored {
  double value;
  BoxKind kind;
};

/// max(delta, delta_bar) at y with the kind that attains it (open on ties).
inline Scored star_score(const PointSet& x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double v = volume(y);
  const double open = v - static_cast<double>(open_count(y, x)) / n;
  const double closed = static_cast<double>(closed_count(y, x)) / n - v;
  return open >= closed ? Scored{open, BoxKind::open} : Scored{closed, BoxKind::closed};
}

/// Index vectors into the augmented induced grid.
class GridSpace {
 public:
  explicit GridSpace(const PointSet& x) : view_(grid_view(x)) {}

  std::size_t dim() const { return view_.dim(); }
  std::size_t axis_size(std::size_t j) const { return view_.axes[j].augmented.size(); }
  const GridView& view() const { return view_; }

  std::vector<double> corner(const std::vector<std::size_t>& idx) const {
    std::vector<double> y(idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) y[j] = view_.axes[j].augmented[idx[j]];
    return y;
  }

  std::vector<std::size_t> random_point(Rng& rng) const {
    std::vector<std::size_t> idx(dim());
    for (std::size_t j = 0; j < dim(); ++j) idx[j] = uniform_index(rng, axis_size(j));
    return idx;
  }

  /// Moves mc distinct random coordinates by independent offsets in
  /// {-k..k}, clamped to the axis.
  void neighbor(std::vector<std::size_t>& idx, std::size_t mc, std::size_t k, Rng& rng) const {
    for (std::size_t j : pick_coordinates(dim(), mc, rng)) {
      const auto offset = static_cast<long long>(uniform_index(rng, 2 * k + 1)) - static_cast<long long>(k);
      const long long moved = static_cast<long long>(idx[j]) + offset;
      idx[j] = static_cast<std::size_t>(std::clamp<long long>(moved, 0, static_cast<long long>(axis_size(j)) - 1));
    }
  }

  /// mc distinct coordinates by a partial Fisher-Yates pass.
  static std::vector<std::size_t> pick_coordinates(std::size_t d, std::size_t mc, Rng& rng) {
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < mc; ++i) std::swap(all[i], all[i + uniform_index(rng, d - i)]);
    all.resize(mc);
    return all;
  }

 private:
  GridView view_;
};

/// Thresholds for segments 0..segments-1 from sampled absolute changes: the
/// negated quantiles of |change| at levels 1/2 falling to 0, the last one 0.
inline std::vector<double> threshold_schedule(std::vector<double> changes, std::size_t segments) {
  std::vector<double> t(segments, 0.0);
  if (changes.empty() || segments <= 1) return t;
  std::sort(changes.begin(), changes.end());
  for (std::size_t s = 0; s + 1 < segments; ++s) {
    const double q = 0.5 * (1.0 - static_cast<double>(s) / static_cast<double>(segments - 1));
    const auto pos = static_cast<std::size_t>(q * static_cast<double>(changes.size() - 1));
    t[s] = -changes[pos];
  }
  return t;
}

inline std::size_t isqrt_ceil(std::size_t v) {
  std::size_t r = 0;
  while (r * r < v) ++r;
  return std::max<std::size_t>(r, 1);
}

}  // namespace disc::detail
