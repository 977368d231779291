#pragma once

#include <cstddef>
#include <cstdint>

#include "discrepancy/generators.hpp"

namespace disc {

struct HaltonSearchConfig {
  std::size_t mu = 20;
  std::size_t lambda = 40;
  std::size_t generations = 60;
  std::uint64_t seed = 0;
};

/// Squared modified L2 discrepancy of the first n points of the generalized
/// Halton sequence defined by `perms` (dimension perms.dim()).
double halton_fitness(const PermutationConfig& perms, std::size_t n);

/// Digit permutations for the first d primes, fixed one base at a time by a
/// (mu + lambda) evolutionary search on the fitness of the first j
/// coordinates. Never returns a configuration worse than the identity.
PermutationConfig optimize_halton_permutations(std::size_t d, std::size_t n_points, const HaltonSearchConfig& cfg);

}  // namespace disc
