#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "periodlab/error.hpp"

namespace periodlab {

/// Exact rational, always in lowest terms with positive denominator.
using BigRational = mpq_class;
using BigInteger = mpz_class;

/// p/q in lowest terms (mpq_class(p, q) alone does not canonicalize).
inline BigRational make_rational(long p, long q) {
  BigRational r(p, q);
  r.canonicalize();
  return r;
}

/// "p/q" with an explicit denominator, e.g. "3/4", "-2/1", "0/1".
inline std::string to_pq_string(const BigRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Shortest form: "3/4", "-2", "0".
inline std::string to_short_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

/// Bit-size of numerator plus denominator; the pivot cost in rref.
inline std::size_t bit_size(const BigRational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

inline BigInteger binomial(unsigned long n, unsigned long k) {
  BigInteger r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInteger factorial(unsigned long n) {
  BigInteger r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigRational pow(const BigRational& base, unsigned long e) {
  BigRational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

/// Parses an exact rational from "p", "p/q", or a decimal "[-]d.ddd[e[+-]x]".
/// Throws ParseError (offsets relative to `text`).
inline BigRational parse_rational(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const char* msg) -> BigRational { throw ParseError(msg, i); };
  if (text.empty()) return fail("empty number");
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) return fail("expected digits");
  BigRational value{BigInteger(digits, 10)};
  if (frac_digits > 0) {
    BigInteger scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_digits);
    value /= scale;
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg_exp = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg_exp = text[i++] == '-';
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) return fail("expected exponent digits");
    unsigned long e = std::stoul(std::string(text.substr(start, i - start)));
    BigInteger scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, e);
    if (neg_exp) value /= scale; else value *= scale;
  } else if (i < text.size() && text[i] == '/' && !seen_point) {
    ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) return fail("expected denominator digits");
    BigInteger den(std::string(text.substr(start, i - start)), 10);
    if (den == 0) return fail("zero denominator");
    value /= den;
  }
  if (i != text.size()) return fail("unexpected character in number");
  value.canonicalize();
  return negative ? BigRational(-value) : value;
}

}  // namespace periodlab
