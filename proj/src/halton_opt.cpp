#include "discrepancy/halton_opt.hpp"

#include <algorithm>
#include <numeric>

#include "discrepancy/error.hpp"
#include "discrepancy/l2.hpp"
#include "discrepancy/random.hpp"

namespace disc {

double halton_fitness(const PermutationConfig& perms, std::size_t n) {
  return modified_l2_sq(halton(n, perms.dim(), &perms));
}

namespace {

struct Candidate {
  Permutation perm;
  double fitness = 0.0;
};

// Swaps each nonzero digit with a random nonzero partner with probability 2/p.
void mutate(Permutation& perm, Rng& rng) {
  const auto p = static_cast<std::uint32_t>(perm.size());
  for (std::uint32_t v = 1; v < p; ++v) {
    if (uniform_index(rng, p) < 2) std::swap(perm[v], perm[1 + uniform_index(rng, p - 1)]);
  }
}

// Walks the digits of b; for each chosen digit the child swaps two entries so
// that it agrees with b there. Every step keeps a bijection fixing 0.
Permutation crossover(const Permutation& a, const Permutation& b, Rng& rng) {
  Permutation child = a;
  std::vector<std::uint32_t> where(a.size());
  for (std::uint32_t v = 0; v < child.size(); ++v) where[child[v]] = v;
  for (std::uint32_t v = 1; v < b.size(); ++v) {
    if (!coin(rng) || child[v] == b[v]) continue;
    const std::uint32_t other = where[b[v]];
    std::swap(child[v], child[other]);
    where[child[v]] = v;
    where[child[other]] = other;
  }
  return child;
}

}  // namespace

PermutationConfig optimize_halton_permutations(std::size_t d, std::size_t n_points, const HaltonSearchConfig& cfg) {
  if (d == 0 || n_points == 0 || cfg.mu == 0 || cfg.lambda == 0 || cfg.generations == 0) {
    throw InvalidArgument("dimension, point count and search sizes must be positive");
  }
  Rng rng(cfg.seed);
  const auto primes = first_primes(d);
  std::vector<Permutation> fixed;

  for (std::size_t j = 0; j < d; ++j) {
    const std::uint32_t p = primes[j];
    auto fitness_of = [&](const Permutation& perm) {
      std::vector<Permutation> perms = fixed;
      perms.push_back(perm);
      return halton_fitness(PermutationConfig(std::move(perms)), n_points);
    };
    auto evaluate = [&](std::vector<Candidate>& group) {
#pragma omp parallel for schedule(dynamic)
      for (std::size_t i = 0; i < group.size(); ++i) group[i].fitness = fitness_of(group[i].perm);
    };
    // Base 2 admits only the identity.
    if (p == 2) {
      fixed.push_back(identity_permutation(p));
      continue;
    }

    std::vector<Candidate> pop{{identity_permutation(p)}};
    for (std::size_t i = 1; i < cfg.mu; ++i) pop.push_back({random_permutation(p, rng)});
    evaluate(pop);
    auto better = [](const Candidate& a, const Candidate& b) { return a.fitness < b.fitness; };
    std::stable_sort(pop.begin(), pop.end(), better);

    for (std::size_t g = 0; g < cfg.generations; ++g) {
      std::vector<Candidate> children;
      for (std::size_t c = 0; c < cfg.lambda; ++c) {
        const auto& a = pop[uniform_index(rng, pop.size())].perm;
        const auto& b = pop[uniform_index(rng, pop.size())].perm;
        Permutation child = crossover(a, b, rng);
        mutate(child, rng);
        children.push_back({std::move(child)});
      }
      evaluate(children);
      pop.insert(pop.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
      std::stable_sort(pop.begin(), pop.end(), better);
      pop.resize(cfg.mu);
    }
    fixed.push_back(std::move(pop.front().perm));
  }

  PermutationConfig result(std::move(fixed));
  PermutationConfig identity = PermutationConfig::identity(d);
  if (halton_fitness(result, n_points) > halton_fitness(identity, n_points)) return identity;
  return result;
}

}  // namespace disc
