#include "discrepancy/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "discrepancy/error.hpp"

namespace disc {

std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> primes;
  if (count == 0) return primes;
  // Sieve bound from p_k < k (ln k + ln ln k) for k >= 6.
  std::size_t limit = 15;
  if (count >= 6) {
    const double k = static_cast<double>(count);
    limit = static_cast<std::size_t>(k * (std::log(k) + std::log(std::log(k)))) + 1;
  }
  std::vector<bool> composite(limit + 1, false);
  for (std::size_t i = 2; i <= limit && primes.size() < count; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t m = i * i; m <= limit; m += i) composite[m] = true;
  }
  return primes;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

void validate_permutation(const Permutation& perm, std::uint32_t p) {
  if (perm.size() != p) throw InvalidArgument("permutation for base " + std::to_string(p) + " has wrong length");
  if (perm[0] != 0) throw InvalidArgument("digit permutation must fix 0");
  std::vector<bool> seen(p, false);
  for (std::uint32_t v : perm) {
    if (v >= p || seen[v]) throw InvalidArgument("digit permutation is not a bijection");
    seen[v] = true;
  }
}

PermutationConfig::PermutationConfig(std::vector<Permutation> perms) : perms_(std::move(perms)) {
  const auto primes = first_primes(perms_.size());
  for (std::size_t j = 0; j < perms_.size(); ++j) validate_permutation(perms_[j], primes[j]);
}

PermutationConfig PermutationConfig::identity(std::size_t d) {
  std::vector<Permutation> perms;
  for (std::uint32_t p : first_primes(d)) perms.push_back(identity_permutation(p));
  return PermutationConfig(std::move(perms));
}

PermutationConfig PermutationConfig::reverse(std::size_t d) {
  std::vector<Permutation> perms;
  for (std::uint32_t p : first_primes(d)) perms.push_back(reverse_permutation(p));
  return PermutationConfig(std::move(perms));
}

namespace {

void check_base(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

// Digits of i are reversed into an integer numerator over p^L, so the result
// is a single division of two integers.
double scrambled_unchecked(std::uint64_t i, std::uint32_t p, const Permutation* perm) {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  while (i > 0) {
    const std::uint64_t digit = i % p;
    numerator = numerator * p + (perm ? (*perm)[digit] : digit);
    denominator *= p;
    i /= p;
  }
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

}  // namespace

double radical_inverse(std::uint64_t i, std::uint32_t p) {
  check_base(p);
  if (i == 0) throw InvalidArgument("radical inverse index must be positive");
  return scrambled_unchecked(i, p, nullptr);
}

double scrambled_radical_inverse(std::uint64_t i, std::uint32_t p, const Permutation& perm) {
  check_base(p);
  validate_permutation(perm, p);
  if (i == 0) throw InvalidArgument("radical inverse index must be positive");
  return scrambled_unchecked(i, p, &perm);
}

Permutation identity_permutation(std::uint32_t p) {
  Permutation perm(p);
  std::iota(perm.begin(), perm.end(), 0u);
  return perm;
}

Permutation reverse_permutation(std::uint32_t p) {
  Permutation perm(p, 0);
  for (std::uint32_t j = 1; j < p; ++j) perm[j] = p - j;
  return perm;
}

Permutation random_permutation(std::uint32_t p, Rng& rng) {
  Permutation perm = identity_permutation(p);
  for (std::uint32_t j = p - 1; j >= 2; --j) {
    const auto r = 1 + static_cast<std::uint32_t>(uniform_index(rng, j));
    std::swap(perm[j], perm[r]);
  }
  return perm;
}

PointSet halton(std::size_t n, std::size_t d, const PermutationConfig* perms) {
  if (n == 0 || d == 0) throw InvalidArgument("halton needs n >= 1 and d >= 1");
  if (perms && perms->dim() < d) throw InvalidArgument("permutation config covers fewer than d bases");
  const auto primes = first_primes(d);
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      coords[i * d + j] = scrambled_unchecked(i + 1, primes[j], perms ? &(*perms)[j] : nullptr);
    }
  }
  return PointSet(d, std::move(coords));
}

PointSet rank1_lattice(std::size_t n, const std::vector<std::int64_t>& z) {
  if (n == 0 || z.empty()) throw InvalidArgument("lattice needs n >= 1 and a nonempty generating vector");
  const std::size_t d = z.size();
  const auto m = static_cast<std::int64_t>(n);
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::int64_t zj = ((z[j] % m) + m) % m;
      const auto r = static_cast<std::int64_t>((static_cast<__int128>(i) * zj) % m);
      coords[i * d + j] = static_cast<double>(r) / static_cast<double>(n);
    }
  }
  return PointSet(d, std::move(coords));
}

PointSet midpoint_set(std::size_t n) {
  if (n == 0) throw InvalidArgument("midpoint set needs n >= 1");
  std::vector<double> coords(n);
  for (std::size_t i = 1; i <= n; ++i) {
    coords[i - 1] = static_cast<double>(2 * i - 1) / static_cast<double>(2 * n);
  }
  return PointSet(1, std::move(coords));
}

void Graph::validate() const {
  for (const auto& [a, b] : edges) {
    if (a >= vertices || b >= vertices) throw InvalidArgument("edge endpoint out of range");
    if (a == b) throw InvalidArgument("self-loops are not allowed");
  }
}

std::vector<std::vector<bool>> Graph::adjacency() const {
  validate();
  std::vector<std::vector<bool>> adj(vertices, std::vector<bool>(vertices, false));
  for (const auto& [a, b] : edges) adj[a][b] = adj[b][a] = true;
  return adj;
}

Graph path_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.edges.emplace_back(n - 1, 0);
  return g;
}

Graph star_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t i = 1; i < n; ++i) g.edges.emplace_back(0, i);
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
  }
  return g;
}

PointSet dominating_set_instance(const Graph& g, double alpha, double beta) {
  const std::size_t n = g.vertices;
  if (n == 0) throw InvalidArgument("graph has no vertices");
  const double alpha_n = std::pow(alpha, static_cast<double>(n));
  if (!(beta >= 0.0 && beta < alpha_n && alpha_n < 1.0 && alpha < 1.0)) {
    throw InvalidArgument("need 0 <= beta < alpha^n < 1");
  }
  const auto adj = g.adjacency();
  std::vector<double> coords(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) coords[i * n + j] = (i == j || adj[i][j]) ? alpha : beta;
  }
  return PointSet(n, std::move(coords));
}

}  // namespace disc
