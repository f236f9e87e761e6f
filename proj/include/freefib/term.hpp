#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <string>

namespace freefib {

/// Sequence terms grow like phi^k and routinely reach hundreds of digits,
/// so they are arbitrary-precision throughout. Signed: backward
/// constructions legitimately pass through negative values before the
/// positivity adjustment.
using Term = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Decimal rendering. With digit_limit > 0 long values are truncated to the
/// leading digits plus an explicit marker, e.g. "31415…(1024 digits)".
std::string format_term(const Term& value, std::size_t digit_limit = 0);

/// Natural log of a positive term; safe far beyond double range.
double log_term(const Term& value);

/// value mod n reduced into [0, n).
std::int64_t residue_mod(const Term& value, std::int64_t n);

}  // namespace freefib
