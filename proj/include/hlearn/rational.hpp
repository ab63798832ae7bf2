#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hlearn {

/// Exact rational scalar used for weights, heuristic values, g-costs and all
/// derived quantities. Always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses "12", "-3", "1.25", "7/4". Scientific notation, "inf" and "nan" are
/// rejected, so every accepted string denotes an exact rational.
/// Throws InvalidInput on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// num/den in canonical form (gmpxx's two-argument constructor does not reduce).
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

/// Nearest double, for reporting and plotting only.
inline double to_double(const Rational& value) { return value.get_d(); }

/// Dyadic approximation floor(x * 2^bits) / 2^bits of a non-negative double.
Rational dyadic_from_double(double x, unsigned bits);

}  // namespace hlearn
