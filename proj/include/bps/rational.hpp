#pragma once

// Arbitrary-precision integers and rationals (GMP-backed).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bps {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q" (exact).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw std::invalid_argument("malformed rational: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

/// Fractional part {x} = x - floor(x), in [0, 1).
inline Rational frac(const Rational& r) { return r - Rational(floor(r)); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Converts an integral rational to long; throws if it is not integral or too large.
inline long to_long(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("rational " + to_string(r) + " is not an integer");
  if (!r.get_num().fits_slong_p()) throw std::overflow_error("integer out of range");
  return r.get_num().get_si();
}

inline int sign(const Rational& r) { return sgn(r); }

}  // namespace bps
