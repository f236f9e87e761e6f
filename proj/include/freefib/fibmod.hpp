#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "freefib/term.hpp"

namespace freefib::fibmod {

/// Orbit enumeration touches all n^2 residue pairs; callers can widen the
/// cap, memory permitting.
inline constexpr std::int64_t kDefaultOrbitCap = 10000;

/// Entry point Z(m): smallest k >= 1 with m | F_k.
std::int64_t entry_point(std::int64_t m);

/// Pisano period pi(n): period of the Fibonacci residues mod n.
std::int64_t pisano_period(std::int64_t n);

/// One cell of the pair census of the map (a, b) -> (b, a+b) mod n: a whole
/// orbit when it avoids zero residues, otherwise one zero-to-zero stretch of
/// a zero-containing orbit (started at a pair (0, x)).
struct OrbitCycle {
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  bool contains_zero = false;

  std::size_t length() const { return pairs.size(); }
};

/// Partition of all n^2 residue pairs into those cells.
struct OrbitDecomposition {
  std::int64_t modulus = 0;
  std::vector<OrbitCycle> cycles;

  std::size_t cycle_count() const { return cycles.size(); }
  std::size_t distinct_length_count() const;
  std::vector<std::size_t> length_multiset() const;  // sorted ascending
};

OrbitDecomposition orbit_decomposition(std::int64_t n,
                                       std::int64_t cap = kDefaultOrbitCap);

struct ZeroPairCensus {
  std::int64_t with_zero = 0;
  std::int64_t zero_free = 0;
};

/// How many of the n^2 pairs generate a sequence mod n that contains a zero
/// residue. The (0,0) pair counts on the zero side.
ZeroPairCensus count_zero_pairs(std::int64_t n,
                                std::int64_t cap = kDefaultOrbitCap);

struct ClassificationRecord {
  std::int64_t n = 0;
  bool omni_factor = false;
  /// True when no Lucas number is a multiple of n, i.e. the Lucas sequence
  /// itself witnesses that n is not an omni-factor.
  bool lucas_witness = false;
  /// Lexicographically smallest pair lying in a zero-free orbit; absent for
  /// omni-factors.
  std::optional<std::pair<std::int64_t, std::int64_t>> witness_start;
};

ClassificationRecord is_omni_factor(std::int64_t n,
                                    std::int64_t cap = kDefaultOrbitCap);

bool is_prime(std::int64_t p);

/// For prime p: p is an omni-factor iff Z(p) = p + 1.
bool prime_omni_test(std::int64_t p);

/// True iff some Lucas number is divisible by n (decided over one Pisano
/// period).
bool lucas_divides(std::int64_t n);

/// For each residue r, the residues that can follow it inside a zero-free
/// orbit. Empty for omni-factors (no zero-free orbit exists).
std::map<std::int64_t, std::set<std::int64_t>> division_free_successors(
    std::int64_t n, std::int64_t cap = kDefaultOrbitCap);

/// Average, over states (u, r) with gcd(u, n) = 1 and 1 <= r < n, of the
/// number of terms emitted from r until (and excluding) the first term
/// divisible by n in the Fibonacci-like continuation of (u, r). Requires n
/// to be an omni-factor; equals (Z(n)-1)/2 for prime n.
Rational avg_steps_between_divisions(std::int64_t n,
                                     std::int64_t cap = kDefaultOrbitCap);

struct CycleLengthMoments {
  Term sum_squares;        // over all cycles, trivial (0,0) included
  Term rounded_half_mean;  // round(sum_squares / (2 n^2)), half away from zero
};

CycleLengthMoments cycle_length_moments(std::int64_t n,
                                        std::int64_t cap = kDefaultOrbitCap);

/// lcm of pi(p) over the prime factors p of n-1; every n-free cycle length
/// must be divisible by it.
std::int64_t cycle_length_divisor(std::int64_t n);

}  // namespace freefib::fibmod
