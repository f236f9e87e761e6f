#include "freefib/construct.hpp"

#include <doctest.h>

#include "freefib/core.hpp"
#include "freefib/error.hpp"
#include "test_util.hpp"

using freefib::Error;
using freefib::Term;
using namespace freefib::construct;
namespace core = freefib::core;
using testutil::terms;

namespace {

// Random legal prescription: remainders drive which steps must divide.
RemainderPrescription random_prescription(std::mt19937_64& gen, std::int64_t n,
                                          std::size_t length) {
  RemainderPrescription p;
  p.modulus = n;
  p.remainders.resize(length);
  p.powers.assign(length, std::nullopt);
  p.remainders[0] = testutil::draw(gen, 0, n - 1);
  p.remainders[1] = testutil::draw(gen, 0, n - 1);
  for (std::size_t k = 2; k < length; ++k) {
    const std::int64_t sum = (p.remainders[k - 2] + p.remainders[k - 1]) % n;
    if (sum == 0) {
      p.powers[k] = static_cast<unsigned>(testutil::draw(gen, 1, 2));
      p.remainders[k] = testutil::draw(gen, 1, n - 1);
    } else {
      p.powers[k] = 0;
      p.remainders[k] = sum;
    }
  }
  return p;
}

core::TermPair matching_terminal(std::mt19937_64& gen,
                                 const RemainderPrescription& p) {
  const std::int64_t n = p.modulus;
  const std::size_t len = p.remainders.size();
  return {Term(p.remainders[len - 2] + n * testutil::draw(gen, 0, 4)),
          Term(p.remainders[len - 1] + n * testutil::draw(gen, 0, 4))};
}

unsigned total_power(const RemainderPrescription& p) {
  unsigned total = 0;
  for (const auto& power : p.powers)
    if (power) total += *power;
  return total;
}

}  // namespace

TEST_CASE("signature_of renders the divisor list") {
  const auto run = core::generate(5, 4, 3, 7);
  CHECK(run.terms() == terms({5, 4, 1, 5, 2, 7, 1}));
  const auto sig = signature_of(run);
  CHECK(sig.to_string() == "*,*,9,1,3,1,9");
  CHECK(sig.divisor(3) == 9);
  CHECK(sig.divisor(5) == 3);
  CHECK_THROWS_AS(sig.divisor(1), Error);

  const auto lucas = signature_of(core::generate(2, 1, 5, 8));
  CHECK(lucas.to_string() == "*,*,1,1,1,1,1,1");

  // 4-free numbers: divisors recomputed from the listed terms.
  const auto four = signature_of(core::generate(0, 1, 4, 10));
  CHECK(four.to_string() == "*,*,1,1,1,1,4,1,1,16");
}

TEST_CASE("build_division_rich reproduces the backward construction") {
  const auto run = build_division_rich(3, 10, {1, 1});
  CHECK(run.terms() == terms({49, 32, 1, 11, 4, 5, 1, 2, 1, 1}));
  for (std::size_t k = 2; k < run.size(); ++k) CHECK(run.steps[k].power >= 1);

  const auto short_run = build_division_rich(3, 4, {1, 1});
  CHECK(short_run.terms() == terms({1, 2, 1, 1}));
  for (std::size_t k = 2; k < short_run.size(); ++k)
    CHECK(short_run.steps[k].power >= 1);

  CHECK_THROWS_AS(build_division_rich(3, 10, {3, 1}), Error);
  CHECK_THROWS_AS(build_division_rich(3, 1, {1, 1}), Error);
}

TEST_CASE("division-rich runs replay through generate") {
  auto gen = testutil::rng(555);
  for (int trial = 0; trial < 25; ++trial) {
    const std::int64_t n = testutil::draw(gen, 2, 7);
    Term t1 = testutil::draw(gen, 1, 40);
    Term t2 = testutil::draw(gen, 1, 40);
    while (t1 % n == 0) ++t1;
    while (t2 % n == 0) ++t2;
    const std::size_t length = testutil::draw(gen, 2, 30);
    const auto run = build_division_rich(n, length, {t1, t2});
    REQUIRE(run.size() == length);
    CHECK(run.steps[length - 2].term == t1);
    CHECK(run.steps[length - 1].term == t2);
    for (std::size_t k = 2; k < run.size(); ++k) {
      CHECK(run.steps[k].power >= 1);
      CHECK(run.steps[k].term > 0);
    }
    // Replaying the stored start reproduces the run exactly.
    const auto replay =
        core::generate(run.steps[0].term, run.steps[1].term, n, length);
    CHECK(replay.terms() == run.terms());
  }
}

TEST_CASE("build_2free_predecessor picks the smallest power of 2") {
  CHECK(build_2free_predecessor(3, 1) == 1);
  CHECK(build_2free_predecessor(1, 3) == 5);
  CHECK(build_2free_predecessor(5, 1) == 3);
  CHECK_THROWS_AS(build_2free_predecessor(2, 1), Error);
  CHECK_THROWS_AS(build_2free_predecessor(1, 0), Error);
}

TEST_CASE("predecessors replay forward as 2-free runs") {
  auto gen = testutil::rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Term a1 = 2 * testutil::draw(gen, 0, 400) + 1;
    const Term a2 = 2 * testutil::draw(gen, 0, 400) + 1;
    const Term a0 = build_2free_predecessor(a1, a2);
    CHECK(a0 > 0);
    CHECK(a0 % 2 == 1);
    const auto run = core::generate(a0, a1, 2, 3);
    CHECK(run.steps[2].term == a2);
  }
}

TEST_CASE("legality pins the first violating index") {
  RemainderPrescription p;
  p.modulus = 3;
  p.remainders = {1, 1, 2, 2, 1, 1};
  p.powers = {std::nullopt, std::nullopt, 0u, 1u, 0u, 1u};
  CHECK(first_illegal_index(p) == 0);

  // Sum 1+1 = 2 is nonzero mod 3, so a positive power at position 3 is
  // illegal, and so is a wrong sum remainder.
  auto bad = p;
  bad.powers[2] = 1u;
  CHECK(first_illegal_index(bad) == 3);
  bad = p;
  bad.remainders[2] = 1;
  CHECK(first_illegal_index(bad) == 3);
  // Sum 1+2 = 0 mod 3 forces a division at position 4.
  bad = p;
  bad.powers[3] = 0u;
  CHECK(first_illegal_index(bad) == 4);
  // Remainders past position 2 are never zero.
  bad = p;
  bad.remainders[3] = 0;
  CHECK(first_illegal_index(bad) == 4);
  CHECK_THROWS_AS(require_legal(bad), Error);
}

TEST_CASE("build_from_prescription reproduces the division-poor example") {
  RemainderPrescription p;
  p.modulus = 3;
  p.remainders = {1, 1, 2, 2, 1, 1};
  p.powers = {std::nullopt, std::nullopt, 0u, 1u, 0u, 1u};
  CHECK(build_from_prescription(p, {1, 1}) == terms({-8, 7, -1, 2, 1, 1}));

  // All-divisor-1 prescription: plain Fibonacci-like backward extension b-a.
  RemainderPrescription plain;
  plain.modulus = 5;
  plain.remainders = {1, 1, 2, 3};
  plain.powers = {std::nullopt, std::nullopt, 0u, 0u};
  CHECK(build_from_prescription(plain, {7, 13}) == terms({1, 6, 7, 13}));

  // Terminal pair must be congruent to the last two remainders.
  CHECK_THROWS_AS(build_from_prescription(plain, {13, 8}), Error);
}

TEST_CASE("adjust_positive shifts the division-poor run positive") {
  const auto raw = terms({-8, 7, -1, 2, 1, 1});
  const auto run = adjust_positive(raw, 3, 3);
  CHECK(run.terms() == terms({19, 7, 26, 11, 37, 16}));

  // Signature and remainders survive the shift.
  CHECK(run.remainder_trace() == std::vector<std::int64_t>{1, 1, 2, 2, 1, 1});
  CHECK(signature_of(run).to_string() == "*,*,1,3,1,3");

  // Already positive stays untouched (divisor product 3^5 needs m = 6).
  const auto untouched = adjust_positive(terms({5, 4, 1, 5, 2, 7, 1}), 3, 6);
  CHECK(untouched.terms() == terms({5, 4, 1, 5, 2, 7, 1}));

  // m too small for the divisor product.
  CHECK_THROWS_AS(adjust_positive(raw, 3, 2), Error);
}

TEST_CASE("prescription round-trip on fuzzed runs") {
  auto gen = testutil::rng(0xfefe);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::int64_t n = testutil::draw(gen, 2, 9);
    const std::size_t length = testutil::draw(gen, 4, 12);
    const auto p = random_prescription(gen, n, length);
    const auto terminal = matching_terminal(gen, p);
    const auto raw = build_from_prescription(p, terminal);
    REQUIRE(raw.size() == length);
    CHECK(raw[length - 2] == terminal.first);
    CHECK(raw[length - 1] == terminal.second);

    // Forward replay (signs included) matches the prescribed signature and
    // remainders.
    for (std::size_t k = 2; k < length; ++k) {
      Term lhs = raw[k];
      for (unsigned i = 0; i < *p.powers[k]; ++i) lhs *= n;
      CHECK(lhs == raw[k - 1] + raw[k - 2]);
      Term residue = raw[k] % n;
      if (residue < 0) residue += n;
      CHECK(residue == p.remainders[k]);
    }

    // Positivity adjustment preserves both traces exactly.
    if (raw[0] % n == 0 || raw[1] % n == 0) continue;
    const unsigned m = total_power(p) + 1;
    const auto adjusted = adjust_positive(raw, n, m);
    const auto sig = signature_of(adjusted);
    for (std::size_t k = 2; k < length; ++k) {
      CHECK(adjusted.steps[k].power == *p.powers[k]);
      CHECK(adjusted.steps[k].residue == p.remainders[k]);
      CHECK(adjusted.steps[k].term > 0);
    }
    CHECK(sig.size() == length);
    ++checked;
  }
  CHECK(checked > 250);
}

TEST_CASE("generated runs always have legal remainder traces") {
  auto gen = testutil::rng(1001);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t n = testutil::draw(gen, 2, 9);
    Term a = testutil::draw(gen, 1, 500);
    Term b = testutil::draw(gen, 1, 500);
    while (a % n == 0) ++a;
    while (b % n == 0) ++b;
    const auto run = core::generate(a, b, n, 40);
    RemainderPrescription p;
    p.modulus = n;
    p.remainders = run.remainder_trace();
    p.powers.assign(run.size(), std::nullopt);
    for (std::size_t k = 2; k < run.size(); ++k) p.powers[k] = run.steps[k].power;
    CHECK(first_illegal_index(p) == 0);
  }
}

TEST_CASE("division-poor runs grow on the division-free positions") {
  // Divisions prescribed on odd positions 5, 7, 9, ...; the even positions
  // are then plain sums and must strictly increase.
  RemainderPrescription p;
  p.modulus = 3;
  const std::size_t length = 14;
  p.remainders.resize(length);
  p.powers.assign(length, std::nullopt);
  p.remainders[0] = 1;
  p.remainders[1] = 1;
  auto gen = testutil::rng(4242);
  for (std::size_t k = 2; k < length; ++k) {
    const std::int64_t sum = (p.remainders[k - 2] + p.remainders[k - 1]) % 3;
    if (sum == 0) {
      p.powers[k] = 1u;
      p.remainders[k] = testutil::draw(gen, 1, 2);
    } else {
      p.powers[k] = 0;
      p.remainders[k] = sum;
    }
  }
  const auto raw = build_from_prescription(
      p, {Term(p.remainders[length - 2]), Term(p.remainders[length - 1])});
  const auto run = adjust_positive(raw, 3, total_power(p) + 1);
  for (std::size_t k = 2; k < run.size(); ++k) {
    if (run.steps[k].power != 0) continue;
    CHECK(run.steps[k].term > run.steps[k - 2].term);
  }
}
