#pragma once

// Data-parallel building blocks shared by the discrepancy routines. Every
// kernel has a plain serial counterpart in kernels::serial; tests compare the
// two and bench/ times them.
//
// Reductions are deterministic regardless of thread count: work is split into
// chunks whose boundaries depend only on the problem size, each chunk is
// summed with compensation, and chunk results are merged in index order.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "discrepancy/compensated_sum.hpp"
#include "discrepancy/point_set.hpp"

namespace disc::kernels {

inline constexpr std::size_t kRowChunk = 32;

/// Sum over i in [0,n) of row(i), where row(i) returns a CompensatedSum.
template <class Row>
double row_sum(std::size_t n, Row&& row) {
  const std::size_t chunks = (n + kRowChunk - 1) / kRowChunk;
  std::vector<CompensatedSum> partial(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t hi = std::min(n, (c + 1) * kRowChunk);
    for (std::size_t i = c * kRowChunk; i < hi; ++i) partial[c].merge(row(i));
  }
  CompensatedSum total;
  for (const auto& p : partial) total.merge(p);
  return total.value();
}

/// Sum over all ordered pairs (i,j) of a symmetric kernel f(i,j).
/// Evaluates only i <= j.
template <class F>
double symmetric_pair_sum(std::size_t n, F&& f) {
  return row_sum(n, [&](std::size_t i) {
    CompensatedSum s;
    for (std::size_t j = i + 1; j < n; ++j) s.add(f(i, j));
    CompensatedSum row;
    row.add(f(i, i));
    row.add(2.0 * s.value());
    return row;
  });
}

/// Maximization over a product grid of corners, one slab of the first axis at
/// a time. A corner is an index vector k with 0 <= k_j < sizes[j].
///
/// Point i counts toward the open measure at k iff open_act[i*d+j] <= k_j for
/// every j, likewise for the closed measure; an activation index >= sizes[j]
/// means never. With M_open(k), M_closed(k) the weight sums of counted points,
///   open value   = prod_j vol_open[j][k_j]   - M_open(k) / normalizer
///   closed value = M_closed(k) / normalizer - prod_j vol_closed[j][k_j]
/// A non-finite volume factor excludes the corner for that kind. With
/// `absolute` set both values are replaced by their absolute values.
struct SlabProblem {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<double>> vol_open;
  std::vector<std::vector<double>> vol_closed;
  std::vector<std::size_t> open_act;
  std::vector<std::size_t> closed_act;  ///< empty: same as open_act
  std::vector<double> weights;
  double normalizer = 1.0;
  bool absolute = false;

  std::size_t dim() const { return sizes.size(); }
  std::size_t points() const { return weights.size(); }
  /// Total number of corners, saturating at SIZE_MAX.
  std::size_t corner_count() const;
};

struct SlabResult {
  double value;
  std::vector<std::size_t> index;
  BoxKind kind;
};

/// Best corner; ties go to the open kind, then to the lexicographically
/// smallest index vector. Throws InvalidArgument on malformed input.
SlabResult slab_maximum(const SlabProblem& problem);

namespace serial {

template <class Row>
double row_sum(std::size_t n, Row&& row) {
  CompensatedSum total;
  for (std::size_t i = 0; i < n; ++i) total.merge(row(i));
  return total.value();
}

/// Plain double loop over all ordered pairs.
template <class F>
double symmetric_pair_sum(std::size_t n, F&& f) {
  CompensatedSum total;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) total.add(f(i, j));
  }
  return total.value();
}

/// Scans every corner and every point.
SlabResult slab_maximum(const SlabProblem& problem);

}  // namespace serial

}  // namespace disc::kernels
