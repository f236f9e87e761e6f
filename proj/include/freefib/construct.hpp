#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freefib/core.hpp"
#include "freefib/term.hpp"

namespace freefib::construct {

/// Per-step divisors of a run, stored as exponents of the modulus. The first
/// two positions are unknown (no preceding pair) and render as '*'.
struct Signature {
  std::int64_t modulus = 0;
  std::vector<std::optional<unsigned>> powers;

  std::size_t size() const { return powers.size(); }
  /// Divisor n^i at 1-based position k; requires a known entry.
  Term divisor(std::size_t position) const;
  /// e.g. "*,*,9,1,3,1,9"
  std::string to_string() const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature_of(const core::SequenceRun& run);

/// A remainder sequence with its matching signature. Legal when the sum rule
/// holds at divisor-1 steps, the sum vanishes mod n exactly at division
/// steps, and no remainder past position 2 is zero.
struct RemainderPrescription {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> remainders;
  std::vector<std::optional<unsigned>> powers;  // same length, first two unknown
};

/// 1-based index of the first violation, or 0 when the prescription is legal.
std::size_t first_illegal_index(const RemainderPrescription& prescription);
void require_legal(const RemainderPrescription& prescription);

/// Build a run of `length` terms whose every step from position 3 divides,
/// ending in `terminal`. Built backwards with the smallest power that keeps
/// each new term positive; returned as an ordinary forward run.
core::SequenceRun build_division_rich(std::int64_t n, std::size_t length,
                                      const core::TermPair& terminal);

/// Odd predecessor a0 = 2^k*a2 - a1 for the smallest k >= 1 keeping it
/// positive, so that a0, a1, a2 replays as a 2-free run.
Term build_2free_predecessor(const Term& a1, const Term& a2);

/// Realize a legal prescription by backward recursion from a terminal pair
/// congruent to the last two remainders. The result may contain negative
/// values; adjust_positive turns it into an all-positive run.
std::vector<Term> build_from_prescription(
    const RemainderPrescription& prescription, const core::TermPair& terminal);

/// Add d1*n^m, d2*n^m (lexicographically minimal non-negative d's) to the
/// first two raw values so every forward term becomes positive. Requires the
/// product of divisors used by the raw list to be strictly below n^m; the
/// adjusted run then has the same signature and remainder trace.
core::SequenceRun adjust_positive(const std::vector<Term>& raw, std::int64_t n,
                                  unsigned m);

}  // namespace freefib::construct
