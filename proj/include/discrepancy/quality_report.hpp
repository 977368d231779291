#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "discrepancy/linf_approx.hpp"
#include "discrepancy/linf_exact.hpp"
#include "discrepancy/lp.hpp"
#include "discrepancy/point_set.hpp"

namespace disc {

struct QualityOptions {
  double exact_budget = kDefaultExactBudget;
  double delta = 0.05;  ///< cover width when the exact star discrepancy is out of budget
  std::size_t cover_cap = kDefaultCoverCap;
  std::size_t iterations = 10000;
  std::size_t restarts = 10;
  std::uint64_t seed = 0;
  int lp_p = 4;  ///< exponent used by the "lp-even" measure
  double lp_budget = kDefaultLpBudget;
};

struct QualityCell {
  std::string set;
  std::string measure;
  std::optional<double> value;
  std::optional<double> lower;  ///< set together with upper when only bounds are known
  std::optional<double> upper;
  bool squared = false;  ///< value is the squared (or p-th power) discrepancy
  std::string method;
  std::optional<std::uint64_t> seed;
  double seconds = 0.0;
  std::string error;  ///< nonempty if the cell failed
};

/// Measures: star-linf, star-l2, extreme-l2, modified-l2, lp-even.
std::vector<std::string> quality_measures();

/// Evaluates every measure on every set. star-linf falls back to an interval
/// [improved TA lower bound, cover upper bound] when the exact cost is over
/// budget. Failures are recorded per cell. Cells are sorted by (set, measure).
std::vector<QualityCell> quality_report(const std::vector<std::pair<std::string, PointSet>>& sets,
                                        const std::vector<std::string>& measures, const QualityOptions& opts);

}  // namespace disc
