#include "discrepancy/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "discrepancy/compensated_sum.hpp"
#include "discrepancy/error.hpp"
#include "discrepancy/kernels.hpp"
#include "discrepancy/simplex.hpp"

namespace disc {

DiscreteMeasure::DiscreteMeasure(std::size_t dim, std::vector<double> coords, std::vector<double> probs)
    : dim_(dim), coords_(std::move(coords)), probs_(std::move(probs)) {
  if (dim_ == 0) throw InvalidArgument("measure dimension must be positive");
  if (probs_.empty()) throw InvalidArgument("measure needs at least one atom");
  if (coords_.size() != probs_.size() * dim_) throw InvalidArgument("atom coordinates and probabilities disagree");
  for (double c : coords_) {
    if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("atom coordinate outside [0,1]");
  }
  CompensatedSum total;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("probabilities must be finite and nonnegative");
    total.add(p);
  }
  if (std::fabs(total.value() - 1.0) > 1e-12) throw InvalidArgument("probabilities do not sum to 1");
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(atom(a).begin(), atom(a).end(), atom(b).begin(), atom(b).end());
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!less(order[i - 1], order[i])) throw InvalidArgument("atoms must be pairwise distinct");
  }
}

DiscreteMeasure DiscreteMeasure::normalized(std::size_t dim, std::vector<double> coords, std::vector<double> masses) {
  CompensatedSum total;
  for (double m : masses) total.add(m);
  if (!(total.value() > 0.0)) throw InvalidArgument("total mass must be positive");
  for (double& m : masses) m /= total.value();
  return DiscreteMeasure(dim, std::move(coords), std::move(masses));
}

DiscreteMeasure DiscreteMeasure::uniform(std::size_t dim, std::vector<double> coords) {
  if (dim == 0 || coords.size() % dim != 0 || coords.empty()) throw InvalidArgument("bad atom layout");
  const std::size_t n = coords.size() / dim;
  return DiscreteMeasure(dim, std::move(coords), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::restrict(std::span<const std::size_t> indices, std::vector<double> probs) const {
  if (indices.size() != probs.size()) throw InvalidArgument("one probability per selected atom");
  std::vector<double> coords;
  for (std::size_t i : indices) {
    if (i >= size()) throw InvalidArgument("atom index out of range");
    coords.insert(coords.end(), atom(i).begin(), atom(i).end());
  }
  return normalized(dim_, std::move(coords), std::move(probs));
}

namespace {

// Distinct coordinate values per axis of a set of atoms, and each atom's rank.
struct AtomGrid {
  std::vector<std::vector<double>> values;
  std::vector<std::size_t> rank;  // rank[i * d + j]

  AtomGrid(std::size_t d, std::span<const double> coords) : values(d) {
    const std::size_t n = coords.size() / d;
    for (std::size_t j = 0; j < d; ++j) {
      auto& v = values[j];
      for (std::size_t i = 0; i < n; ++i) v.push_back(coords[i * d + j]);
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    rank.resize(coords.size());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const auto& v = values[j];
        rank[i * d + j] = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), coords[i * d + j]) - v.begin());
      }
    }
  }

  std::size_t corners() const {
    std::size_t total = 1;
    for (const auto& v : values) {
      const std::size_t s = v.size() + 1;
      if (total > std::numeric_limits<std::size_t>::max() / s) return std::numeric_limits<std::size_t>::max();
      total *= s;
    }
    return total;
  }
};

void check_budget(std::size_t corners, std::size_t budget) {
  if (corners > budget) {
    throw BudgetExceeded("union grid has " + std::to_string(corners) + " corners, budget is " + std::to_string(budget) +
                         "; use d <= 3 or smaller supports");
  }
}

}  // namespace

// Both measures are constant between grid values, so the box contents that
// matter are the sets {rank_j < s_j for all j}; an open box realizes a set
// unless it needs an atom at coordinate 1, and then the closed box does.
double two_measure_star_disc(const DiscreteMeasure& p, const DiscreteMeasure& q, std::size_t budget) {
  if (p.dim() != q.dim()) throw DimensionMismatch(p.dim(), q.dim());
  const std::size_t d = p.dim();
  std::vector<double> coords(p.coords().begin(), p.coords().end());
  coords.insert(coords.end(), q.coords().begin(), q.coords().end());
  const AtomGrid grid(d, coords);
  check_budget(grid.corners(), budget);

  kernels::SlabProblem prob;
  prob.sizes.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t m = grid.values[j].size();
    prob.sizes[j] = m + 1;
    prob.vol_open.emplace_back(m + 1, 0.0);
    prob.vol_closed.emplace_back(m + 1, std::numeric_limits<double>::infinity());
  }
  prob.open_act.resize(grid.rank.size());
  for (std::size_t k = 0; k < grid.rank.size(); ++k) prob.open_act[k] = grid.rank[k] + 1;
  prob.weights.assign(p.probabilities().begin(), p.probabilities().end());
  for (double w : q.probabilities()) prob.weights.push_back(-w);
  prob.normalizer = 1.0;
  prob.absolute = true;
  return kernels::slab_maximum(prob).value;
}

namespace {

// Membership rows of the boxes {rank_j < s_j} whose every side is pinned by a
// member atom at rank s_j - 1; every nonempty box content occurs exactly once.
std::vector<std::vector<std::size_t>> critical_boxes(const DiscreteMeasure& p, std::size_t budget) {
  const std::size_t d = p.dim();
  const std::size_t n = p.size();
  const AtomGrid grid(d, p.coords());
  check_budget(grid.corners(), budget);

  std::vector<std::vector<std::size_t>> boxes;
  std::vector<std::size_t> s(d, 1);
  std::vector<std::size_t> members;
  std::vector<bool> pinned(d);
  for (;;) {
    members.clear();
    std::fill(pinned.begin(), pinned.end(), false);
    for (std::size_t i = 0; i < n; ++i) {
      bool inside = true;
      for (std::size_t j = 0; j < d && inside; ++j) inside = grid.rank[i * d + j] < s[j];
      if (!inside) continue;
      members.push_back(i);
      for (std::size_t j = 0; j < d; ++j) {
        if (grid.rank[i * d + j] + 1 == s[j]) pinned[j] = true;
      }
    }
    if (std::all_of(pinned.begin(), pinned.end(), [](bool b) { return b; })) boxes.push_back(members);
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (++s[j] <= grid.values[j].size()) break;
      s[j] = 1;
      if (j == 0) return boxes;
    }
  }
}

double mass(const DiscreteMeasure& p, const std::vector<std::size_t>& members) {
  CompensatedSum total;
  for (std::size_t i : members) total.add(p.probability(i));
  return total.value();
}

void check_support(const DiscreteMeasure& p, std::span<const std::size_t> support) {
  if (support.empty()) throw InvalidArgument("support must be nonempty");
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i : support) {
    if (i >= p.size()) throw InvalidArgument("support index out of range");
    if (seen[i]) throw InvalidArgument("support indices must be distinct");
    seen[i] = true;
  }
}

double distance_with(const DiscreteMeasure& p, std::span<const std::size_t> support, std::vector<double> q,
                     std::size_t budget) {
  return two_measure_star_disc(p, p.restrict(support, std::move(q)), budget);
}

}  // namespace

InnerWeights optimal_inner_weights(const DiscreteMeasure& p, std::span<const std::size_t> support,
                                   std::size_t budget) {
  check_support(p, support);
  const std::size_t m = support.size();
  std::vector<std::size_t> column(p.size(), m);
  for (std::size_t c = 0; c < m; ++c) column[support[c]] = c;

  // Variables q_0..q_{m-1}, t. For every box: Q(B) - t <= P(B), Q(B) + t >= P(B).
  LinearProgram lp;
  lp.objective.assign(m + 1, 0.0);
  lp.objective[m] = 1.0;
  for (const auto& members : critical_boxes(p, budget)) {
    std::vector<double> row(m + 1, 0.0);
    for (std::size_t i : members) {
      if (column[i] < m) row[column[i]] = 1.0;
    }
    const double pb = mass(p, members);
    row[m] = -1.0;
    lp.constraints.push_back({row, Relation::less_equal, pb});
    row[m] = 1.0;
    lp.constraints.push_back({std::move(row), Relation::greater_equal, pb});
  }
  std::vector<double> ones(m + 1, 1.0);
  ones[m] = 0.0;
  lp.constraints.push_back({std::move(ones), Relation::equal, 1.0});

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) throw NumericFailure("inner weight program has no optimal solution");
  std::vector<double> q(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m));
  const double total = std::accumulate(q.begin(), q.end(), 0.0);
  if (!(total > 0.0)) throw NumericFailure("inner weight program returned zero mass");
  for (double& v : q) v /= total;
  const double dist = distance_with(p, support, q, budget);
  return {std::move(q), dist, sol.objective};
}

std::vector<double> nearest_atom_weights(const DiscreteMeasure& p, std::span<const std::size_t> support) {
  check_support(p, support);
  std::vector<double> q(support.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < support.size(); ++c) {
      double dist = 0.0;
      for (std::size_t j = 0; j < p.dim(); ++j) {
        const double diff = p.atom(i)[j] - p.atom(support[c])[j];
        dist += diff * diff;
      }
      if (dist < best_d) {
        best_d = dist;
        best = c;
      }
    }
    q[best] += p.probability(i);
  }
  return q;
}

namespace {

struct Evaluated {
  std::vector<double> q;
  double distance;
};

Evaluated evaluate(const DiscreteMeasure& p, const std::vector<std::size_t>& support, bool exact, std::size_t budget) {
  if (exact) {
    auto w = optimal_inner_weights(p, support, budget);
    return {std::move(w.q), w.distance};
  }
  auto q = nearest_atom_weights(p, support);
  const double dist = distance_with(p, support, q, budget);
  return {std::move(q), dist};
}

// Candidate distances within this relative gap count as ties, which go to the
// lowest candidate index.
constexpr double kTieGap = 1e-12;

// Evaluates every candidate support and returns the position of the best.
std::size_t best_candidate(const DiscreteMeasure& p, const std::vector<std::vector<std::size_t>>& candidates,
                           bool exact, std::size_t budget, std::vector<std::optional<Evaluated>>& results) {
  results.assign(candidates.size(), std::nullopt);
  std::vector<std::string> failures(candidates.size());
  std::vector<char> budget_hit(candidates.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    try {
      results[c] = evaluate(p, candidates[c], exact, budget);
    } catch (const BudgetExceeded& e) {
      failures[c] = e.what();
      budget_hit[c] = 1;
    } catch (const std::exception& e) {
      failures[c] = e.what();
    }
  }
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (!results[c]) {
      if (budget_hit[c]) throw BudgetExceeded(failures[c]);
      throw NumericFailure(failures[c]);
    }
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    const double a = results[c]->distance;
    const double b = results[best]->distance;
    if (a < b - kTieGap * std::max(1.0, b)) best = c;
  }
  return best;
}

ReductionResult finish(const DiscreteMeasure& p, std::vector<std::size_t> support, Evaluated eval,
                       std::vector<SelectionStep> trace) {
  DiscreteMeasure reduced = p.restrict(support, eval.q);
  return {std::move(reduced), std::move(support), eval.distance, std::move(trace)};
}

}  // namespace

ReductionResult forward_selection(const DiscreteMeasure& p, std::size_t n, bool exact_inner, std::size_t budget) {
  if (n < 1 || n > p.size()) throw InvalidArgument("target support size must lie in [1, N]");
  std::vector<std::size_t> chosen;
  std::vector<bool> used(p.size(), false);
  std::vector<SelectionStep> trace;
  Evaluated current{{}, 0.0};
  while (chosen.size() < n) {
    std::vector<std::size_t> atoms;
    std::vector<std::vector<std::size_t>> candidates;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (used[i]) continue;
      atoms.push_back(i);
      candidates.push_back(chosen);
      candidates.back().push_back(i);
    }
    std::vector<std::optional<Evaluated>> results;
    const std::size_t pick = best_candidate(p, candidates, exact_inner, budget, results);
    chosen.push_back(atoms[pick]);
    used[atoms[pick]] = true;
    current = std::move(*results[pick]);
    trace.push_back({chosen.size(), current.distance});
  }
  return finish(p, std::move(chosen), std::move(current), std::move(trace));
}

ReductionResult backward_selection(const DiscreteMeasure& p, std::size_t n, bool exact_inner, std::size_t budget) {
  if (n < 1 || n > p.size()) throw InvalidArgument("target support size must lie in [1, N]");
  std::vector<std::size_t> kept(p.size());
  std::iota(kept.begin(), kept.end(), std::size_t{0});
  Evaluated current{std::vector<double>(p.probabilities().begin(), p.probabilities().end()), 0.0};
  std::vector<SelectionStep> trace{{kept.size(), 0.0}};
  while (kept.size() > n) {
    std::vector<std::vector<std::size_t>> candidates;
    for (std::size_t r = 0; r < kept.size(); ++r) {
      candidates.push_back(kept);
      candidates.back().erase(candidates.back().begin() + static_cast<std::ptrdiff_t>(r));
    }
    std::vector<std::optional<Evaluated>> results;
    const std::size_t pick = best_candidate(p, candidates, exact_inner, budget, results);
    kept = std::move(candidates[pick]);
    current = std::move(*results[pick]);
    trace.push_back({kept.size(), current.distance});
  }
  return finish(p, std::move(kept), std::move(current), std::move(trace));
}

}  // namespace disc
