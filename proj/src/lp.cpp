#include "discrepancy/lp.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "discrepancy/compensated_sum.hpp"
#include "discrepancy/error.hpp"
#include "discrepancy/kernels.hpp"

namespace disc {

double lp_cost(std::size_t n, std::size_t d, int p) {
  double total = 0.0;
  double power = 1.0;
  for (int l = 1; l <= p; ++l) {
    power *= static_cast<double>(n);
    total += power;
  }
  return total * static_cast<double>(d);
}

namespace {

// Sum over all l-tuples (i_1, ..., i_l) of prod_j factor[argmax_k x_j^(i_k)][j].
// The running argmax per level is updated only for the level that moved.
class TupleSum {
 public:
  TupleSum(const PointSet& x, std::vector<double> factor) : x_(x), factor_(std::move(factor)) {}

  // All tuples with first index i.
  CompensatedSum row(std::size_t i, int l) const {
    const std::size_t d = x_.dim();
    std::vector<std::size_t> arg(static_cast<std::size_t>(l) * d);
    for (std::size_t j = 0; j < d; ++j) arg[j] = i;
    CompensatedSum sum;
    descend(1, l, arg, sum);
    return sum;
  }

 private:
  void descend(int level, int l, std::vector<std::size_t>& arg, CompensatedSum& sum) const {
    const std::size_t d = x_.dim();
    const std::size_t* prev = arg.data() + static_cast<std::size_t>(level - 1) * d;
    if (level == l) {
      double p = 1.0;
      for (std::size_t j = 0; j < d; ++j) p *= factor_[prev[j] * d + j];
      sum.add(p);
      return;
    }
    std::size_t* cur = arg.data() + static_cast<std::size_t>(level) * d;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      for (std::size_t j = 0; j < d; ++j) cur[j] = x_(i, j) > x_(prev[j], j) ? i : prev[j];
      descend(level + 1, l, arg, sum);
    }
  }

  const PointSet& x_;
  std::vector<double> factor_;
};

template <class RowSum>
double lp_with(const PointSet& x, const ProductWeights& gamma, int p, double budget, RowSum&& row_sum) {
  const std::size_t d = x.dim();
  const std::size_t n = x.size();
  if (gamma.dim() != d) throw DimensionMismatch(d, gamma.dim());
  if (p <= 0 || p % 2 != 0) throw InvalidArgument("p must be a positive even integer");
  if (p > 6) throw InvalidArgument("p above 6 is not supported");
  const double cost = lp_cost(n, d, p);
  if (cost > budget) {
    throw BudgetExceeded("L_p evaluation needs about " + std::to_string(cost) + " operations, budget is " +
                         std::to_string(budget));
  }

  CompensatedSum total;
  // l = 0: the max over an empty tuple is 0.
  double empty = 1.0;
  for (std::size_t j = 0; j < d; ++j) empty *= 1.0 + gamma[j] / static_cast<double>(p + 1);
  total.add(empty);

  double binom = 1.0;
  double scale = 1.0;
  for (int l = 1; l <= p; ++l) {
    binom = binom * static_cast<double>(p - l + 1) / static_cast<double>(l);
    scale *= -1.0 / static_cast<double>(n);
    const int e = p - l + 1;
    std::vector<double> factor(n * d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        double pw = 1.0;
        for (int r = 0; r < e; ++r) pw *= x(i, j);
        factor[i * d + j] = 1.0 + gamma[j] * (1.0 - pw) / static_cast<double>(e);
      }
    }
    const TupleSum tuples(x, std::move(factor));
    const double s = row_sum(n, [&](std::size_t i) { return tuples.row(i, l); });
    total.add(binom * scale * s);
  }
  return total.value();
}

}  // namespace

double weighted_star_lp_pow(const PointSet& x, const ProductWeights& gamma, int p, double budget) {
  return lp_with(x, gamma, p, budget, [](std::size_t n, auto&& row) { return kernels::row_sum(n, row); });
}

double serial::weighted_star_lp_pow(const PointSet& x, const ProductWeights& gamma, int p, double budget) {
  return lp_with(x, gamma, p, budget, [](std::size_t n, auto&& row) { return kernels::serial::row_sum(n, row); });
}

}  // namespace disc
