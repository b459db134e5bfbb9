#pragma once

#include <gmpxx.h>

#include <string>

namespace lagcov {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// Parses "num/den" or a plain integer; the result is canonicalized.
// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

// x^n for n >= 0.
Rational power(const Rational& x, unsigned long n);

}  // namespace lagcov
