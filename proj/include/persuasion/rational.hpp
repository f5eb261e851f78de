#pragma once

#include <gmpxx.h>

#include "persuasion/errors.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace persuasion {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "7", "-3", "2/3", "0.125", "1.5e-2". Decimal input is converted exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return InvalidArgument("not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational r;
    mpz_class num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
      throw bad();
    if (den == 0) throw InvalidArgument("zero denominator in '" + s + "'");
    r = Rational(num, den);
    r.canonicalize();
    return r;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long exp10 = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_dot) --exp10;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw bad();
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (i + 1 + used != s.size()) throw bad();
    exp10 += e;
  }
  mpz_class num(digits, 10), scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational r = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace persuasion
