#include "hlearn/rational.hpp"

#include <cctype>
#include <cmath>

#include "hlearn/errors.hpp"

namespace hlearn {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational { throw InvalidInput("not an exact rational: '" + original + "'"); };

  if (text.empty()) return fail();
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class d(std::string(den), 10);
    if (d == 0) throw InvalidInput("zero denominator in '" + original + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac)) return fail();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = Rational(mpz_class(std::string(whole) + std::string(frac), 10), scale);
  } else {
    if (!all_digits(text)) return fail();
    value = Rational(mpz_class(std::string(text), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (is_integer(value)) return value.get_num().get_str();
  return value.get_str();
}

Rational dyadic_from_double(double x, unsigned bits) {
  const double scaled = std::floor(std::ldexp(x, static_cast<int>(bits)));
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  Rational r(mpz_class(scaled), den);
  r.canonicalize();
  return r;
}

}  // namespace hlearn
