#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "discrepancy/local.hpp"
#include "discrepancy/point_set.hpp"

namespace disc {

/// The first `count` primes, by sieve.
std::vector<std::uint32_t> first_primes(std::size_t count);
bool is_prime(std::uint64_t p);

/// A digit permutation of {0,...,p-1} with perm[0] == 0.
using Permutation = std::vector<std::uint32_t>;

/// One digit permutation per base, for the first d primes in order.
class PermutationConfig {
 public:
  PermutationConfig() = default;
  explicit PermutationConfig(std::vector<Permutation> perms);

  static PermutationConfig identity(std::size_t d);
  static PermutationConfig reverse(std::size_t d);

  std::size_t dim() const noexcept { return perms_.size(); }
  const Permutation& operator[](std::size_t j) const { return perms_[j]; }
  const std::vector<Permutation>& perms() const noexcept { return perms_; }

  friend bool operator==(const PermutationConfig&, const PermutationConfig&) = default;

 private:
  std::vector<Permutation> perms_;
};

/// Throws InvalidArgument unless perm is a bijection on {0..p-1} fixing 0.
void validate_permutation(const Permutation& perm, std::uint32_t p);

double radical_inverse(std::uint64_t i, std::uint32_t p);
double scrambled_radical_inverse(std::uint64_t i, std::uint32_t p, const Permutation& perm);

Permutation identity_permutation(std::uint32_t p);
/// pi(0) = 0, pi(j) = p - j.
Permutation reverse_permutation(std::uint32_t p);
/// Uniform among permutations fixing 0.
Permutation random_permutation(std::uint32_t p, Rng& rng);

/// Points i = 1..n; coordinate j is the (scrambled) radical inverse of i in
/// the j-th prime base.
PointSet halton(std::size_t n, std::size_t d, const PermutationConfig* perms = nullptr);

/// Points ((i * z) mod n) / n for i = 0..n-1.
PointSet rank1_lattice(std::size_t n, const std::vector<std::int64_t>& z);

/// {(2i-1)/(2n) : i = 1..n} in one dimension.
PointSet midpoint_set(std::size_t n);

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Throws InvalidArgument on self-loops or out-of-range endpoints.
  void validate() const;
  std::vector<std::vector<bool>> adjacency() const;
};

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t n);
Graph complete_graph(std::size_t n);

/// Point i has coordinate alpha in dimension j if i == j or {i,j} is an edge,
/// beta otherwise. Requires 0 <= beta < alpha^n < 1. G has a dominating set
/// of size <= m iff some empty box [0,y) with y in the augmented grid has
/// volume >= alpha^m.
PointSet dominating_set_instance(const Graph& g, double alpha = 0.5, double beta = 0.0);

}  // namespace disc
