#pragma once

#include "discrepancy/l2.hpp"
#include "discrepancy/point_set.hpp"

namespace disc {

inline constexpr double kDefaultLpBudget = 1e8;

/// (d*_{p,gamma}(X))^p for even p in {2,4,6}, summing over all l-tuples of
/// point indices for l = 0..p. Note gamma_j enters each factor linearly, so
/// p = 2 matches weighted_star_l2_sq with weights sqrt(gamma_j).
///
/// Throws InvalidArgument for unsupported p and BudgetExceeded when
/// d * sum_l n^l exceeds `budget`.
double weighted_star_lp_pow(const PointSet& x, const ProductWeights& gamma, int p,
                            double budget = kDefaultLpBudget);

/// Estimated work d * sum_{l=1..p} n^l.
double lp_cost(std::size_t n, std::size_t d, int p);

namespace serial {
double weighted_star_lp_pow(const PointSet& x, const ProductWeights& gamma, int p,
                            double budget = kDefaultLpBudget);
}

}  // namespace disc
