#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "freefib/term.hpp"

namespace freefib::core {

/// Result of removing every factor of n from a positive value:
/// x == reduced * n^power with n not dividing reduced.
struct StripResult {
  Term reduced;
  unsigned power = 0;
};

StripResult strip_powers(const Term& x, std::int64_t n);

/// One generation step: the term that was appended, the exponent divided out
/// of the defining sum, and the term's residue mod n. From position 3 on the
/// term is never divisible by n, so the residue is nonzero there.
struct StepRecord {
  Term term;
  unsigned power = 0;
  std::int64_t residue = 0;
};

using TermPair = std::pair<Term, Term>;

/// A generated sequence. Positions are 1-based to match the usual a_1, a_2
/// convention; steps[k-1] holds position k. The first two records carry the
/// starting pair with power 0.
struct SequenceRun {
  std::int64_t modulus = 0;
  TermPair start;
  std::vector<StepRecord> steps;

  std::size_t size() const { return steps.size(); }
  std::vector<Term> terms() const;
  std::vector<std::int64_t> remainder_trace() const;
};

/// Advance the consecutive-term pair (a, b) -> (b, (a+b)/n^i).
std::pair<TermPair, StepRecord> next_state(const TermPair& pair, std::int64_t n);

/// Generate `count` terms (count >= 2, starts included).
SequenceRun generate(const Term& a1, const Term& a2, std::int64_t n,
                     std::size_t count);

/// An exact-value cycle: replaying from the pair at 0-based pair index
/// `preperiod` returns to that pair after `period` steps. Both are minimal.
struct CycleReport {
  std::size_t preperiod = 0;
  std::size_t period = 0;
  std::vector<Term> cycle_terms;
  Term content_gcd;
};

/// Budget ran out before any consecutive-term pair recurred. Says nothing
/// about whether the sequence eventually cycles.
struct Exhausted {
  std::size_t budget = 0;
  TermPair last_pair;
};

using CycleOutcome = std::variant<CycleReport, Exhausted>;

CycleOutcome detect_cycle(const Term& a1, const Term& a2, std::int64_t n,
                          std::size_t budget);

struct PrimitiveCycle {
  std::vector<Term> primitive;
  Term content_gcd;
};

/// Divide a cycle by the gcd of its terms.
PrimitiveCycle primitive_cycle(const std::vector<Term>& cycle_terms);

/// True iff a period-3 cycle is a rotation of (k, k, 2k) with 3 not dividing
/// k and the cycle gcd equal to k. Rejects other period lengths outright.
bool verify_three_cycle_form(const std::vector<Term>& cycle_terms);

}  // namespace freefib::core
