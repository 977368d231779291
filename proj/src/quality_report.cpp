#include "discrepancy/quality_report.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

#include "discrepancy/error.hpp"
#include "discrepancy/l2.hpp"

namespace disc {

std::vector<std::string> quality_measures() {
  return {"star-linf", "star-l2", "extreme-l2", "modified-l2", "lp-even"};
}

namespace {

void star_linf(const PointSet& x, const QualityOptions& opts, QualityCell& cell) {
  try {
    const StarResult r = star_exact(x, opts.exact_budget);
    cell.value = r.value;
    cell.method = r.method;
    return;
  } catch (const BudgetExceeded&) {
  }
  TAConfig cfg;
  cfg.iterations = opts.iterations;
  cfg.seed = opts.seed;
  const BoundResult lower = ta_restarts(x, cfg, opts.restarts, TAVariant::improved);
  cell.seed = opts.seed;
  cell.lower = lower.lower;
  try {
    const BoundResult cover = cover_bounds(x, opts.delta, opts.cover_cap);
    cell.upper = cover.upper;
    cell.lower = std::max(lower.lower, cover.lower);
    cell.method = "ta-improved+cover";
  } catch (const BudgetExceeded&) {
    cell.upper = 1.0;
    cell.method = "ta-improved";
  }
}

void evaluate(const PointSet& x, const QualityOptions& opts, QualityCell& cell) {
  const std::string& m = cell.measure;
  if (m == "star-linf") {
    star_linf(x, opts, cell);
  } else if (m == "star-l2") {
    cell.value = star_l2_sq_fast(x);
    cell.squared = true;
    cell.method = "heinrich";
  } else if (m == "extreme-l2") {
    cell.value = extreme_l2_sq(x);
    cell.squared = true;
    cell.method = "closed-form";
  } else if (m == "modified-l2") {
    cell.value = modified_l2_sq(x);
    cell.squared = true;
    cell.method = "closed-form";
  } else if (m == "lp-even") {
    cell.value = weighted_star_lp_pow(x, ProductWeights::unit(x.dim()), opts.lp_p, opts.lp_budget);
    cell.squared = true;
    cell.method = "tuple-sum p=" + std::to_string(opts.lp_p);
  } else {
    throw InvalidArgument("unknown measure '" + m + "'");
  }
}

}  // namespace

std::vector<QualityCell> quality_report(const std::vector<std::pair<std::string, PointSet>>& sets,
                                        const std::vector<std::string>& measures, const QualityOptions& opts) {
  std::vector<QualityCell> cells;
  for (const auto& [name, x] : sets) {
    for (const auto& m : measures) {
      QualityCell cell;
      cell.set = name;
      cell.measure = m;
      const auto start = std::chrono::steady_clock::now();
      try {
        evaluate(x, opts, cell);
      } catch (const std::exception& e) {
        cell.value.reset();
        cell.lower.reset();
        cell.upper.reset();
        cell.error = e.what();
      }
      cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      cells.push_back(std::move(cell));
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const QualityCell& a, const QualityCell& b) {
    return std::tie(a.set, a.measure) < std::tie(b.set, b.measure);
  });
  return cells;
}

}  // namespace disc
