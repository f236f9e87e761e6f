#include "freefib/term.hpp"

#include <cmath>
#include <limits>

#include "freefib/error.hpp"

namespace freefib {

std::string format_term(const Term& value, std::size_t digit_limit) {
  std::string text = value.str();
  std::size_t sign = (!text.empty() && text[0] == '-') ? 1 : 0;
  std::size_t digits = text.size() - sign;
  if (digit_limit == 0 || digits <= digit_limit) return text;
  return text.substr(0, sign + digit_limit) + "…(" + std::to_string(digits) +
         " digits)";
}

double log_term(const Term& value) {
  if (value <= 0) raise(ErrorKind::WrongDomain, "log of a non-positive term");
  const unsigned bits = msb(value);
  if (bits < 900) {
    return std::log(value.convert_to<double>());
  }
  // Keep the top 64 bits as the mantissa and account for the shift.
  const unsigned shift = bits - 63;
  const double head = Term(value >> shift).convert_to<double>();
  return std::log(head) + static_cast<double>(shift) * std::log(2.0);
}

std::int64_t residue_mod(const Term& value, std::int64_t n) {
  Term r = value % n;
  if (r < 0) r += n;
  return r.convert_to<std::int64_t>();
}

}  // namespace freefib
