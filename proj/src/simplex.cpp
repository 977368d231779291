#include "discrepancy/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "discrepancy/error.hpp"

namespace disc {

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, double tol) : tol_(tol), vars_(lp.objective.size()) {
    const std::size_t m = lp.constraints.size();
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (const auto& c : lp.constraints) {
      if (c.coeffs.size() != vars_) throw InvalidArgument("constraint length differs from objective length");
      const bool flip = c.rhs < 0.0;
      const Relation r = flip ? mirror(c.relation) : c.relation;
      if (r != Relation::equal) ++slacks;
      if (r != Relation::less_equal) ++artificials;
    }
    first_artificial_ = vars_ + slacks;
    cols_ = first_artificial_ + artificials;
    rows_.assign(m, std::vector<double>(cols_ + 1, 0.0));
    basis_.resize(m);

    std::size_t next_slack = vars_;
    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = lp.constraints[i];
      const double sign = c.rhs < 0.0 ? -1.0 : 1.0;
      const Relation r = c.rhs < 0.0 ? mirror(c.relation) : c.relation;
      for (std::size_t j = 0; j < vars_; ++j) rows_[i][j] = sign * c.coeffs[j];
      rows_[i][cols_] = sign * c.rhs;
      if (r == Relation::less_equal) {
        rows_[i][next_slack] = 1.0;
        basis_[i] = next_slack++;
      } else {
        if (r == Relation::greater_equal) rows_[i][next_slack++] = -1.0;
        rows_[i][next_art] = 1.0;
        basis_[i] = next_art++;
      }
    }
    limit_ = 50 * (m + cols_) + 1000;
  }

  // Minimizes cost.x over columns below `usable`; false if unbounded.
  bool optimize(const std::vector<double>& cost, std::size_t usable) {
    for (;;) {
      std::size_t enter = usable;
      for (std::size_t j = 0; j < usable; ++j) {
        if (reduced_cost(cost, j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter == usable) return true;
      std::size_t leave = rows_.size();
      double best = 0.0;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double a = rows_[i][enter];
        if (a <= tol_) continue;
        const double ratio = rows_[i][cols_] / a;
        if (leave == rows_.size() || ratio < best - tol_ ||
            (ratio <= best + tol_ && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
  }

  double value(const std::vector<double>& cost) const {
    double z = 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) z += cost[basis_[i]] * rows_[i][cols_];
    return z;
  }

  // Pivots basic artificials out after phase one; rows with no usable pivot
  // are redundant and dropped.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (std::fabs(rows_[i][j]) > tol_) {
          col = j;
          break;
        }
      }
      if (col == first_artificial_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        pivot(i, col);
        ++i;
      }
    }
  }

  std::vector<double> solution() const {
    std::vector<double> x(vars_, 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < vars_) x[basis_[i]] = std::max(0.0, rows_[i][cols_]);
    }
    return x;
  }

  std::size_t columns() const { return cols_; }
  std::size_t first_artificial() const { return first_artificial_; }
  std::size_t pivots() const { return pivots_; }

 private:
  static Relation mirror(Relation r) {
    if (r == Relation::less_equal) return Relation::greater_equal;
    if (r == Relation::greater_equal) return Relation::less_equal;
    return r;
  }

  double reduced_cost(const std::vector<double>& cost, std::size_t j) const {
    double r = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) r -= cost[basis_[i]] * rows_[i][j];
    return r;
  }

  void pivot(std::size_t row, std::size_t col) {
    if (++pivots_ > limit_) throw NumericFailure("simplex pivot limit reached");
    auto& p = rows_[row];
    const double a = p[col];
    for (double& v : p) v /= a;
    p[col] = 1.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row) continue;
      const double f = rows_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) rows_[i][j] -= f * p[j];
      rows_[i][col] = 0.0;
    }
    basis_[row] = col;
  }

  double tol_;
  std::size_t vars_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t limit_ = 0;
  std::size_t pivots_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tolerance) {
  Tableau t(lp, tolerance);
  const std::size_t cols = t.columns();

  std::vector<double> phase1(cols, 0.0);
  for (std::size_t j = t.first_artificial(); j < cols; ++j) phase1[j] = 1.0;
  t.optimize(phase1, cols);
  if (t.value(phase1) > tolerance * static_cast<double>(lp.constraints.size() + 1)) {
    return {LpStatus::infeasible, {}, 0.0, t.pivots()};
  }
  t.expel_artificials();

  std::vector<double> cost(cols, 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), cost.begin());
  if (!t.optimize(cost, t.first_artificial())) return {LpStatus::unbounded, {}, 0.0, t.pivots()};
  std::vector<double> x = t.solution();
  double z = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) z += lp.objective[j] * x[j];
  return {LpStatus::optimal, std::move(x), z, t.pivots()};
}

}  // namespace disc
