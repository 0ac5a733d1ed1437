// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <string>

#include "treedist/errors.hpp"

namespace treedist {

/* All arithmetic in this library is exact.  Scalars are arbitrary-precision
 * rationals (GMP), kept canonical: reduced, denominator > 0. */
using Integer = mpz_class;
using Rational = mpq_class;

/* (-1)^k as a Rational. */
inline Rational sign_pow(long k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

/* 2^k for any integer k, including negative k. */
inline Rational pow2(long k) {
  Integer num = 1;
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
  if (k >= 0) return Rational(num);
  Rational r(1, num);
  r.canonicalize();
  return r;
}

/* (-2)^k for k >= 0. */
inline Rational neg_two_pow(long k) { return sign_pow(k) * pow2(k); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/* Canonical text form: "p/q", or just "p" when q = 1. */
inline std::string to_string(const Rational& q) { return q.get_str(); }

namespace detail {

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

/* Parses "p", "-p", or "p/q" (q > 0 after reduction).  With allow_decimal,
 * also accepts finite decimals such as "0.25"; exponent notation is always
 * rejected to keep inputs exact. */
inline Rational parse_rational(const std::string& text, bool allow_decimal = false) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = (s[0] == '-');
    s = s.substr(1);
  }
  if (s.empty()) throw ParseError("empty number");

  auto slash = s.find('/');
  auto dot = s.find('.');
  Rational value;
  if (slash != std::string::npos) {
    if (dot != std::string::npos) throw ParseError("mixed decimal and quotient notation: " + text);
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw ParseError("malformed rational: " + text);
    Integer d(den, 10);
    if (d == 0) throw ParseError("zero denominator: " + text);
    value = Rational(Integer(num, 10), d);
    value.canonicalize();
  } else if (dot != std::string::npos) {
    if (!allow_decimal) throw ParseError("decimal notation not accepted here: " + text);
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!detail::all_digits(whole) || (!frac.empty() && !detail::all_digits(frac)))
      throw ParseError("malformed decimal: " + text);
    Integer num(whole + frac, 10);
    Integer den = 1;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = Rational(num, den);
    value.canonicalize();
  } else {
    if (!detail::all_digits(s)) throw ParseError("malformed number: " + text);
    value = Rational(Integer(s, 10));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace treedist
