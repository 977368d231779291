#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace disc {

/// Finitely supported probability measure on [0,1]^d with distinct atoms.
class DiscreteMeasure {
 public:
  /// Probabilities must be >= 0 and sum to 1 within 1e-12.
  DiscreteMeasure(std::size_t dim, std::vector<double> coords, std::vector<double> probs);

  /// Rescales nonnegative masses to sum 1 before validating.
  static DiscreteMeasure normalized(std::size_t dim, std::vector<double> coords, std::vector<double> masses);
  static DiscreteMeasure uniform(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> atom(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  double probability(std::size_t i) const { return probs_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const double> probabilities() const noexcept { return probs_; }

  /// The atoms at `indices` with the given probabilities.
  DiscreteMeasure restrict(std::span<const std::size_t> indices, std::vector<double> probs) const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> probs_;
};

inline constexpr std::size_t kDefaultScenarioBudget = 10'000'000;

/// sup over anchored boxes (open and closed) of |P(B) - Q(B)|. Throws
/// BudgetExceeded if the grid of the union of supports has more than
/// `budget` corners.
double two_measure_star_disc(const DiscreteMeasure& p, const DiscreteMeasure& q,
                             std::size_t budget = kDefaultScenarioBudget);

struct InnerWeights {
  std::vector<double> q;  ///< one probability per support index
  double distance;        ///< two_measure_star_disc(P, Q(q))
  double lp_value;        ///< optimal objective of the linear program
};

/// Best probabilities on the atoms `support` of P, by linear programming over
/// the critical boxes of P's support. Throws NumericFailure if the program
/// cannot be solved.
InnerWeights optimal_inner_weights(const DiscreteMeasure& p, std::span<const std::size_t> support,
                                   std::size_t budget = kDefaultScenarioBudget);

/// Mass of every atom of P moved to its nearest support atom (Euclidean,
/// ties to the earlier support entry). A heuristic.
std::vector<double> nearest_atom_weights(const DiscreteMeasure& p, std::span<const std::size_t> support);

struct SelectionStep {
  std::size_t support_size;
  double distance;
};

struct ReductionResult {
  DiscreteMeasure reduced;
  std::vector<std::size_t> support;  ///< indices into P, in selection order
  double distance;
  std::vector<SelectionStep> trace;
};

/// Greedy growth from the empty support, one atom per step, each step
/// minimizing the distance after inner weighting (exact LP or nearest-atom).
ReductionResult forward_selection(const DiscreteMeasure& p, std::size_t n, bool exact_inner,
                                  std::size_t budget = kDefaultScenarioBudget);

/// Greedy removal from the full support down to n atoms.
ReductionResult backward_selection(const DiscreteMeasure& p, std::size_t n, bool exact_inner,
                                   std::size_t budget = kDefaultScenarioBudget);

}  // namespace disc
