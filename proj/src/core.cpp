#include "freefib/core.hpp"

#include <boost/container_hash/hash.hpp>

#include <cstddef>
#include <limits>
#include <unordered_map>

#include "freefib/error.hpp"

namespace freefib::core {

namespace {

void check_modulus(std::int64_t n) {
  if (n < 2)
    raise(ErrorKind::WrongDomain,
          "modulus must be at least 2, got " + std::to_string(n));
}

void check_start(const Term& a1, const Term& a2, std::int64_t n) {
  check_modulus(n);
  if (a1 < 0 || a2 < 0)
    raise(ErrorKind::DegenerateInput, "starting terms must be non-negative");
  if (a1 == 0 && a2 == 0)
    raise(ErrorKind::DegenerateInput,
          "start (0, 0) generates the all-zero sequence");
}

std::uint64_t pair_digest(const TermPair& pair) {
  std::size_t seed = boost::hash<Term>{}(pair.first);
  boost::hash_combine(seed, pair.second);
  return seed;
}

TermPair pair_after(const Term& a1, const Term& a2, std::int64_t n,
                    std::size_t steps) {
  TermPair pair{a1, a2};
  for (std::size_t i = 0; i < steps; ++i) pair = next_state(pair, n).first;
  return pair;
}

}  // namespace

StripResult strip_powers(const Term& x, std::int64_t n) {
  check_modulus(n);
  if (x <= 0)
    raise(ErrorKind::DegenerateInput,
          "strip_powers expects a positive value, got " + x.str());
  StripResult result{x, 0};
  Term quotient, remainder;
  const Term divisor(n);
  for (;;) {
    divide_qr(result.reduced, divisor, quotient, remainder);
    if (remainder != 0) break;
    result.reduced = quotient;
    ++result.power;
  }
  return result;
}

std::vector<Term> SequenceRun::terms() const {
  std::vector<Term> out;
  out.reserve(steps.size());
  for (const auto& step : steps) out.push_back(step.term);
  return out;
}

std::vector<std::int64_t> SequenceRun::remainder_trace() const {
  std::vector<std::int64_t> out;
  out.reserve(steps.size());
  for (const auto& step : steps) out.push_back(step.residue);
  return out;
}

std::pair<TermPair, StepRecord> next_state(const TermPair& pair,
                                           std::int64_t n) {
  check_start(pair.first, pair.second, n);
  auto [reduced, power] = strip_powers(pair.first + pair.second, n);
  StepRecord record{reduced, power, residue_mod(reduced, n)};
  return {TermPair{pair.second, std::move(reduced)}, std::move(record)};
}

SequenceRun generate(const Term& a1, const Term& a2, std::int64_t n,
                     std::size_t count) {
  check_start(a1, a2, n);
  if (count < 2)
    raise(ErrorKind::WrongDomain, "count must be at least 2");
  SequenceRun run{n, {a1, a2}, {}};
  run.steps.reserve(count);
  run.steps.push_back({a1, 0, residue_mod(a1, n)});
  run.steps.push_back({a2, 0, residue_mod(a2, n)});
  TermPair pair{a1, a2};
  for (std::size_t k = 2; k < count; ++k) {
    auto [next, record] = next_state(pair, n);
    run.steps.push_back(std::move(record));
    pair = std::move(next);
  }
  return run;
}

// States are keyed by a 64-bit digest of the pair; candidate repeats are
// confirmed exactly by replaying from the start, so a digest collision can
// never produce a wrong report. This keeps memory at a few bytes per step
// even when terms reach thousands of digits.
CycleOutcome detect_cycle(const Term& a1, const Term& a2, std::int64_t n,
                          std::size_t budget) {
  check_start(a1, a2, n);
  if (budget < 1) raise(ErrorKind::WrongDomain, "budget must be at least 1");
  if (budget >= std::numeric_limits<std::uint32_t>::max())
    raise(ErrorKind::ResourceBound,
          "budget " + std::to_string(budget) + " exceeds the supported range");

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen;
  seen.reserve(1024);
  TermPair current{a1, a2};
  seen[pair_digest(current)].push_back(0);

  for (std::uint32_t step = 1; step <= budget; ++step) {
    current = next_state(current, n).first;
    const std::uint64_t digest = pair_digest(current);
    auto it = seen.find(digest);
    if (it != seen.end()) {
      for (std::uint32_t prior : it->second) {
        if (pair_after(a1, a2, n, prior) != current) continue;
        const std::size_t preperiod = prior;
        const std::size_t period = step - prior;
        std::vector<Term> cycle;
        cycle.reserve(period);
        TermPair pair = pair_after(a1, a2, n, preperiod);
        for (std::size_t i = 0; i < period; ++i) {
          cycle.push_back(pair.first);
          pair = next_state(pair, n).first;
        }
        Term gcd_all = 0;
        for (const auto& term : cycle) gcd_all = gcd(gcd_all, term);
        return CycleReport{preperiod, period, std::move(cycle),
                           std::move(gcd_all)};
      }
      it->second.push_back(step);
    } else {
      seen.emplace(digest, std::vector<std::uint32_t>{step});
    }
  }
  return Exhausted{budget, std::move(current)};
}

PrimitiveCycle primitive_cycle(const std::vector<Term>& cycle_terms) {
  if (cycle_terms.empty())
    raise(ErrorKind::DegenerateInput, "empty cycle has no primitive form");
  Term gcd_all = 0;
  for (const auto& term : cycle_terms) {
    if (term <= 0)
      raise(ErrorKind::DegenerateInput, "cycle terms must be positive");
    gcd_all = gcd(gcd_all, term);
  }
  PrimitiveCycle result;
  result.primitive.reserve(cycle_terms.size());
  for (const auto& term : cycle_terms) result.primitive.push_back(term / gcd_all);
  result.content_gcd = std::move(gcd_all);
  return result;
}

bool verify_three_cycle_form(const std::vector<Term>& cycle_terms) {
  if (cycle_terms.size() != 3)
    raise(ErrorKind::WrongShape,
          "expected a period-3 cycle, got period " +
              std::to_string(cycle_terms.size()));
  for (std::size_t i = 0; i < 3; ++i) {
    const Term& k = cycle_terms[i];
    if (k <= 0 || k % 3 == 0) continue;
    if (cycle_terms[(i + 1) % 3] != k) continue;
    if (cycle_terms[(i + 2) % 3] != 2 * k) continue;
    Term gcd_all = gcd(gcd(cycle_terms[0], cycle_terms[1]), cycle_terms[2]);
    return gcd_all == k;
  }
  return false;
}

}  // namespace freefib::core
