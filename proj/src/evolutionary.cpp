#include <algorithm>
#include <limits>

#include "discrepancy/error.hpp"
#include "discrepancy/linf_approx.hpp"
#include "discrepancy/local.hpp"
#include "search_space.hpp"

namespace disc {

namespace {

struct Individual {
  std::vector<std::size_t> idx;
  detail::Scored score;
};

}  // namespace

BoundResult ga_lower_bound(const PointSet& x, const GAConfig& cfg) {
  if (cfg.mu == 0 || cfg.crossovers == 0 || cfg.mutations == 0) {
    throw InvalidArgument("mu, crossovers and mutations must be positive");
  }
  if (cfg.stagnation == 0) throw InvalidArgument("stagnation window must be positive");
  Rng rng(cfg.seed);
  const detail::GridSpace space(x);
  auto make = [&](std::vector<std::size_t> idx) {
    const auto s = detail::star_score(x, space.corner(idx));
    return Individual{std::move(idx), s};
  };

  std::vector<Individual> pop;
  for (std::size_t i = 0; i < cfg.mu; ++i) pop.push_back(make(space.random_point(rng)));
  auto by_value = [](const Individual& a, const Individual& b) { return a.score.value > b.score.value; };
  std::stable_sort(pop.begin(), pop.end(), by_value);

  double best = pop.front().score.value;
  std::size_t quiet = 0;
  std::size_t generation = 0;
  while (generation < cfg.max_generations && quiet < cfg.stagnation) {
    ++generation;
    std::vector<Individual> next = pop;
    for (std::size_t c = 0; c < cfg.crossovers; ++c) {
      const auto& a = pop[uniform_index(rng, pop.size())].idx;
      const auto& b = pop[uniform_index(rng, pop.size())].idx;
      std::vector<std::size_t> child(a.size());
      for (std::size_t j = 0; j < a.size(); ++j) child[j] = coin(rng) ? a[j] : b[j];
      next.push_back(make(std::move(child)));
    }
    const std::size_t pool = next.size();
    for (std::size_t m = 0; m < cfg.mutations; ++m) {
      auto idx = next[uniform_index(rng, pool)].idx;
      space.neighbor(idx, 1, 1, rng);
      next.push_back(make(std::move(idx)));
    }
    std::stable_sort(next.begin(), next.end(), by_value);
    next.resize(cfg.mu);
    pop = std::move(next);
    if (pop.front().score.value > best) {
      best = pop.front().score.value;
      quiet = 0;
    } else {
      ++quiet;
    }
  }

  Corner witness(space.corner(pop.front().idx));
  const BoxKind kind = pop.front().score.kind;
  const double lower = local_value(witness.values(), kind, x);
  BoundResult out{lower, 1.0, std::move(witness), kind, "ga"};
  out.seed = cfg.seed;
  out.iterations = generation;
  return out;
}

}  // namespace disc
