#pragma once

#include <cstddef>
#include <vector>

namespace disc {

enum class Relation { less_equal, equal, greater_equal };

struct LinearConstraint {
  std::vector<double> coeffs;
  Relation relation;
  double rhs;
};

/// minimize c.x subject to the constraints and x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t pivots = 0;
};

/// Dense two-phase tableau simplex with Bland's rule. Meant for a few hundred
/// rows. Throws NumericFailure if the pivot limit is hit.
LpSolution solve_lp(const LinearProgram& lp, double tolerance = 1e-11);

}  // namespace disc
