#include "freefib/construct.hpp"

#include <deque>

#include "freefib/error.hpp"

namespace freefib::construct {

namespace {

void check_modulus(std::int64_t n) {
  if (n < 2)
    raise(ErrorKind::WrongDomain,
          "modulus must be at least 2, got " + std::to_string(n));
}

// Largest power of n in |value|; keeps the sign on the reduced part.
std::pair<Term, unsigned> strip_signed(const Term& value, std::int64_t n) {
  if (value == 0)
    raise(ErrorKind::DegenerateInput, "zero sum cannot be reduced");
  auto stripped = core::strip_powers(abs(value), n);
  if (value < 0) stripped.reduced = -stripped.reduced;
  return {std::move(stripped.reduced), stripped.power};
}

Term rational_ceil(const Rational& q) {
  if (q <= 0) return 0;
  const Term num = numerator(q);
  const Term den = denominator(q);
  return (num + den - 1) / den;
}

}  // namespace

Term Signature::divisor(std::size_t position) const {
  const auto& entry = powers.at(position - 1);
  if (!entry)
    raise(ErrorKind::WrongDomain,
          "signature entry " + std::to_string(position) + " is unknown");
  return pow(Term(modulus), *entry);
}

std::string Signature::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (i) out += ',';
    out += powers[i] ? Term(pow(Term(modulus), *powers[i])).str() : "*";
  }
  return out;
}

Signature signature_of(const core::SequenceRun& run) {
  Signature sig{run.modulus, {}};
  sig.powers.reserve(run.size());
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (i < 2)
      sig.powers.push_back(std::nullopt);
    else
      sig.powers.push_back(run.steps[i].power);
  }
  return sig;
}

std::size_t first_illegal_index(const RemainderPrescription& prescription) {
  const std::int64_t n = prescription.modulus;
  check_modulus(n);
  const auto& r = prescription.remainders;
  const auto& p = prescription.powers;
  if (r.size() != p.size())
    raise(ErrorKind::WrongShape,
          "remainder and power lists must have equal length");
  if (r.size() < 3)
    raise(ErrorKind::WrongShape, "prescription needs at least 3 positions");
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] < 0 || r[k] >= n) return k + 1;
    if (k < 2) {
      if (p[k]) return k + 1;  // leading entries must be unknown
      continue;
    }
    if (!p[k]) return k + 1;
    const std::int64_t sum = (r[k - 2] + r[k - 1]) % n;
    if (sum == 0) {
      if (*p[k] == 0) return k + 1;
      if (r[k] == 0) return k + 1;  // terms past position 2 are never 0 mod n
    } else {
      if (*p[k] != 0) return k + 1;
      if (r[k] != sum) return k + 1;
    }
  }
  return 0;
}

void require_legal(const RemainderPrescription& prescription) {
  if (const std::size_t bad = first_illegal_index(prescription); bad != 0)
    raise(ErrorKind::Legality,
          "prescription violates legality at position " + std::to_string(bad));
}

core::SequenceRun build_division_rich(std::int64_t n, std::size_t length,
                                      const core::TermPair& terminal) {
  check_modulus(n);
  if (length < 2)
    raise(ErrorKind::WrongDomain, "length must be at least 2");
  if (terminal.first <= 0 || terminal.second <= 0)
    raise(ErrorKind::DegenerateInput, "terminal pair must be positive");
  if (terminal.first % n == 0 || terminal.second % n == 0)
    raise(ErrorKind::DegenerateInput,
          "terminal pair must not be divisible by the modulus");

  std::deque<Term> seq{terminal.first, terminal.second};
  while (seq.size() < length) {
    // Predecessor of the current front pair (s1, s2): n^i * s2 - s1 for the
    // smallest i >= 1 that keeps it positive.
    const Term& s1 = seq[0];
    const Term& s2 = seq[1];
    Term scaled = n * s2;
    while (scaled <= s1) scaled *= n;
    seq.push_front(scaled - s1);
  }
  return core::generate(seq[0], seq[1], n, length);
}

Term build_2free_predecessor(const Term& a1, const Term& a2) {
  if (a1 <= 0 || a2 <= 0)
    raise(ErrorKind::DegenerateInput, "terms must be positive");
  if (a1 % 2 == 0 || a2 % 2 == 0)
    raise(ErrorKind::DegenerateInput, "terms must be odd");
  Term scaled = 2 * a2;
  while (scaled <= a1) scaled *= 2;
  return scaled - a1;
}

std::vector<Term> build_from_prescription(
    const RemainderPrescription& prescription, const core::TermPair& terminal) {
  require_legal(prescription);
  const std::int64_t n = prescription.modulus;
  const std::size_t len = prescription.remainders.size();
  if (residue_mod(terminal.first, n) != prescription.remainders[len - 2] ||
      residue_mod(terminal.second, n) != prescription.remainders[len - 1])
    raise(ErrorKind::Legality,
          "terminal pair does not match the last two prescribed remainders");

  std::vector<Term> seq(len);
  seq[len - 2] = terminal.first;
  seq[len - 1] = terminal.second;
  for (std::size_t k = len; k >= 3; --k) {
    const Term divisor = pow(Term(n), *prescription.powers[k - 1]);
    seq[k - 3] = divisor * seq[k - 1] - seq[k - 2];
  }
  return seq;
}

core::SequenceRun adjust_positive(const std::vector<Term>& raw, std::int64_t n,
                                  unsigned m) {
  check_modulus(n);
  if (raw.size() < 2)
    raise(ErrorKind::DegenerateInput, "need at least two raw terms");
  if (raw[0] % n == 0 || raw[1] % n == 0)
    raise(ErrorKind::DegenerateInput,
          "leading terms must not be divisible by the modulus");

  // Recover per-step powers by replaying the raw list.
  std::vector<unsigned> powers(raw.size(), 0);
  unsigned long total_power = 0;
  for (std::size_t k = 2; k < raw.size(); ++k) {
    auto [reduced, power] = strip_signed(raw[k - 2] + raw[k - 1], n);
    if (reduced != raw[k])
      raise(ErrorKind::DegenerateInput,
            "raw list does not replay as an n-free trace at position " +
                std::to_string(k + 1));
    powers[k] = power;
    total_power += power;
  }
  if (total_power >= m)
    raise(ErrorKind::AdjustmentExponent,
          "divisor product n^" + std::to_string(total_power) +
              " is not below n^" + std::to_string(m));

  // Shifting the start by (d1, d2) * n^m shifts term k by
  // (u_k*d1 + v_k*d2) * n^m, where u, v follow the same damped recurrence.
  // Positivity of term 1 pins the minimal d1; all later terms then give
  // lower bounds on d2, so (d1, d2) below is lexicographically minimal.
  const Term n_to_m = pow(Term(n), m);
  Term d1 = 0;
  if (raw[0] < 1) d1 = (1 - raw[0] + n_to_m - 1) / n_to_m;

  Rational u_prev = 1, v_prev = 0;  // position 1
  Rational u_cur = 0, v_cur = 1;    // position 2
  Term d2 = rational_ceil(Rational(1 - raw[1], n_to_m));
  for (std::size_t k = 2; k < raw.size(); ++k) {
    const Term divisor = pow(Term(n), powers[k]);
    Rational u_next = (u_cur + u_prev) / Rational(divisor);
    Rational v_next = (v_cur + v_prev) / Rational(divisor);
    u_prev = std::move(u_cur);
    v_prev = std::move(v_cur);
    u_cur = std::move(u_next);
    v_cur = std::move(v_next);
    // Need raw[k] + (u*d1 + v*d2) * n^m >= 1; v is positive here.
    const Rational needed =
        (Rational(1 - raw[k], n_to_m) - u_cur * d1) / v_cur;
    const Term bound = rational_ceil(needed);
    if (bound > d2) d2 = bound;
  }

  const Term b1 = raw[0] + d1 * n_to_m;
  const Term b2 = raw[1] + d2 * n_to_m;
  core::SequenceRun run = core::generate(b1, b2, n, raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (k >= 2 && run.steps[k].power != powers[k])
      raise(ErrorKind::AdjustmentExponent,
            "adjusted run changed the signature at position " +
                std::to_string(k + 1));
    if (run.steps[k].residue != residue_mod(raw[k], n))
      raise(ErrorKind::AdjustmentExponent,
            "adjusted run changed the remainders at position " +
                std::to_string(k + 1));
  }
  return run;
}

}  // namespace freefib::construct
