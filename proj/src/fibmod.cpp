#include "freefib/fibmod.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "freefib/error.hpp"

namespace freefib::fibmod {

namespace {

void check_cap(std::int64_t n, std::int64_t cap) {
  if (n > cap)
    raise(ErrorKind::ResourceBound,
          "n = " + std::to_string(n) + " exceeds the orbit cap " +
              std::to_string(cap) + " (memory grows with n^2)");
}

// Visit the cycle census of the pair map (a, b) -> (b, a+b) mod n. Orbits
// without a zero residue are reported whole; orbits through zero are split
// into their zero-to-zero stretches (each starting at a pair (0, x)), which
// is the census the pair-counting sequences are built on. Pairs are encoded
// as a*n + b, so code order is lexicographic order. The callback receives
// each stretch as a span of codes plus the zero flag.
template <typename PerCycle>
void walk_orbit_segments(std::int64_t n, PerCycle&& per_cycle) {
  const std::size_t total = static_cast<std::size_t>(n) * n;
  std::vector<bool> visited(total, false);
  std::vector<std::size_t> orbit;
  for (std::size_t start = 0; start < total; ++start) {
    if (visited[start]) continue;
    orbit.clear();
    std::vector<std::size_t> zero_positions;
    std::size_t code = start;
    do {
      visited[code] = true;
      const std::int64_t a = static_cast<std::int64_t>(code) / n;
      const std::int64_t b = static_cast<std::int64_t>(code) % n;
      if (a == 0) zero_positions.push_back(orbit.size());
      orbit.push_back(code);
      code = static_cast<std::size_t>(b) * n + (a + b) % n;
    } while (code != start);
    if (zero_positions.empty()) {
      per_cycle(std::vector<std::size_t>(orbit), false);
      continue;
    }
    const std::size_t segments = zero_positions.size();
    for (std::size_t s = 0; s < segments; ++s) {
      const std::size_t from = zero_positions[s];
      const std::size_t to =
          s + 1 < segments ? zero_positions[s + 1] : orbit.size() + zero_positions[0];
      std::vector<std::size_t> segment;
      segment.reserve(to - from);
      for (std::size_t i = from; i < to; ++i)
        segment.push_back(orbit[i % orbit.size()]);
      per_cycle(std::move(segment), true);
    }
  }
}

// Length/zero/min-code view of the census for callers that do not need the
// pair lists.
template <typename PerCycle>
void walk_orbit_lengths(std::int64_t n, PerCycle&& per_cycle) {
  walk_orbit_segments(n, [&](std::vector<std::size_t> codes, bool zero) {
    std::size_t min_code = codes.front();
    for (const std::size_t code : codes) min_code = std::min(min_code, code);
    per_cycle(codes.size(), zero, min_code);
  });
}

std::vector<std::int64_t> prime_factors(std::int64_t value) {
  std::vector<std::int64_t> factors;
  for (std::int64_t p = 2; p * p <= value; ++p) {
    if (value % p) continue;
    factors.push_back(p);
    while (value % p == 0) value /= p;
  }
  if (value > 1) factors.push_back(value);
  return factors;
}

}  // namespace

std::int64_t entry_point(std::int64_t m) {
  if (m < 2)
    raise(ErrorKind::WrongDomain, "entry point needs m >= 2");
  std::int64_t prev = 0, cur = 1;  // F_0, F_1
  for (std::int64_t k = 1; k <= 6 * m + 3; ++k) {
    if (cur == 0) return k;
    const std::int64_t next = (prev + cur) % m;
    prev = cur;
    cur = next;
  }
  raise(ErrorKind::WrongDomain,
        "no Fibonacci multiple of " + std::to_string(m) +
            " within the Pisano bound");
}

std::int64_t pisano_period(std::int64_t n) {
  if (n < 2)
    raise(ErrorKind::WrongDomain, "Pisano period needs n >= 2");
  std::int64_t a = 0, b = 1;
  std::int64_t k = 0;
  do {
    const std::int64_t next = (a + b) % n;
    a = b;
    b = next;
    ++k;
  } while (!(a == 0 && b == 1));
  return k;
}

std::size_t OrbitDecomposition::distinct_length_count() const {
  std::set<std::size_t> lengths;
  for (const auto& cycle : cycles) lengths.insert(cycle.length());
  return lengths.size();
}

std::vector<std::size_t> OrbitDecomposition::length_multiset() const {
  std::vector<std::size_t> lengths;
  lengths.reserve(cycles.size());
  for (const auto& cycle : cycles) lengths.push_back(cycle.length());
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

OrbitDecomposition orbit_decomposition(std::int64_t n, std::int64_t cap) {
  if (n < 2)
    raise(ErrorKind::WrongDomain, "orbit decomposition needs n >= 2");
  check_cap(n, cap);
  OrbitDecomposition result{n, {}};
  walk_orbit_segments(n, [&](std::vector<std::size_t> codes, bool zero) {
    OrbitCycle cycle;
    cycle.contains_zero = zero;
    cycle.pairs.reserve(codes.size());
    for (const std::size_t code : codes)
      cycle.pairs.emplace_back(static_cast<std::int32_t>(code / n),
                               static_cast<std::int32_t>(code % n));
    result.cycles.push_back(std::move(cycle));
  });
  return result;
}

ZeroPairCensus count_zero_pairs(std::int64_t n, std::int64_t cap) {
  if (n < 1)
    raise(ErrorKind::WrongDomain, "pair census needs n >= 1");
  check_cap(n, cap);
  ZeroPairCensus census;
  walk_orbit_lengths(n, [&](std::size_t length, bool zero, std::size_t) {
    (zero ? census.with_zero : census.zero_free) +=
        static_cast<std::int64_t>(length);
  });
  return census;
}

ClassificationRecord is_omni_factor(std::int64_t n, std::int64_t cap) {
  if (n < 2)
    raise(ErrorKind::WrongDomain, "classification needs n >= 2");
  check_cap(n, cap);
  ClassificationRecord record;
  record.n = n;
  std::size_t best_code = 0;
  bool found = false;
  walk_orbit_lengths(n, [&](std::size_t, bool zero, std::size_t min_code) {
    if (zero) return;
    if (!found || min_code < best_code) best_code = min_code;
    found = true;
  });
  record.omni_factor = !found;
  record.lucas_witness = !lucas_divides(n);
  if (found)
    record.witness_start = std::pair<std::int64_t, std::int64_t>(
        static_cast<std::int64_t>(best_code) / n,
        static_cast<std::int64_t>(best_code) % n);
  return record;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

bool prime_omni_test(std::int64_t p) {
  if (!is_prime(p))
    raise(ErrorKind::WrongDomain,
          std::to_string(p) + " is not prime");
  return entry_point(p) == p + 1;
}

bool lucas_divides(std::int64_t n) {
  if (n < 2)
    raise(ErrorKind::WrongDomain, "Lucas divisibility needs n >= 2");
  const std::int64_t period = pisano_period(n);
  std::int64_t a = 2 % n, b = 1;  // L_0, L_1
  for (std::int64_t k = 0; k < period; ++k) {
    if (a == 0) return true;
    const std::int64_t next = (a + b) % n;
    a = b;
    b = next;
  }
  return false;
}

std::map<std::int64_t, std::set<std::int64_t>> division_free_successors(
    std::int64_t n, std::int64_t cap) {
  const OrbitDecomposition orbits = orbit_decomposition(n, cap);
  std::map<std::int64_t, std::set<std::int64_t>> successors;
  for (const auto& cycle : orbits.cycles) {
    if (cycle.contains_zero) continue;
    for (const auto& [a, b] : cycle.pairs) successors[a].insert(b);
  }
  return successors;
}

Rational avg_steps_between_divisions(std::int64_t n, std::int64_t cap) {
  if (n < 2)
    raise(ErrorKind::WrongDomain, "average steps needs n >= 2");
  check_cap(n, cap);
  if (count_zero_pairs(n, cap).zero_free != 0)
    raise(ErrorKind::Divergence,
          std::to_string(n) +
              " is not an omni-factor; some states never reach a division");

  Term total = 0;
  std::int64_t states = 0;
  for (std::int64_t u = 1; u < n; ++u) {
    if (std::gcd(u, n) != 1) continue;
    for (std::int64_t r = 1; r < n; ++r) {
      // Count terms from r (inclusive) until the continuation of (u, r)
      // first hits a multiple of n (exclusive).
      std::int64_t prev = u, cur = r;
      std::int64_t count = 1;
      while (true) {
        const std::int64_t next = (prev + cur) % n;
        if (next == 0) break;
        prev = cur;
        cur = next;
        ++count;
        if (count > n * n + 2)
          raise(ErrorKind::Divergence,
                "state did not reach a division (internal inconsistency)");
      }
      total += count;
      ++states;
    }
  }
  return Rational(total, Term(states));
}

CycleLengthMoments cycle_length_moments(std::int64_t n, std::int64_t cap) {
  if (n < 1)
    raise(ErrorKind::WrongDomain, "cycle moments need n >= 1");
  check_cap(n, cap);
  Term sum_squares = 0;
  walk_orbit_lengths(n, [&](std::size_t length, bool, std::size_t) {
    sum_squares += Term(length) * Term(length);
  });
  const Term pairs2 = 2 * Term(n) * Term(n);
  // Round half away from zero; all quantities are positive here.
  Term rounded = (sum_squares + pairs2 / 2) / pairs2;
  return {std::move(sum_squares), std::move(rounded)};
}

std::int64_t cycle_length_divisor(std::int64_t n) {
  if (n < 3)
    raise(ErrorKind::WrongDomain, "cycle length divisor needs n >= 3");
  std::int64_t divisor = 1;
  for (const std::int64_t p : prime_factors(n - 1))
    divisor = std::lcm(divisor, pisano_period(p));
  return divisor;
}

}  // namespace freefib::fibmod
