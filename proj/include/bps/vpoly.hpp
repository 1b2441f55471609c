#pragma once

// Laurent polynomials in v with rational coefficients, where v^2 = w.
// Odd v-exponents encode half-integer powers of w.

#include "bps/intpoly.hpp"
#include "bps/rational.hpp"

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bps {

enum class SubstFlavor { plain, multicover };

class VPoly {
 public:
  VPoly() = default;
  VPoly(const Rational& c) {  // NOLINT: implicit constant embedding
    if (c != 0) {
      p_ = detail::IntPoly::constant(c.get_num());
      d_ = c.get_den();
    }
  }
  VPoly(long c) : VPoly(Rational(c)) {}  // NOLINT

  static VPoly monomial(const Rational& c, int v_exponent) {
    VPoly r(c);
    r.p_ = r.p_.shifted(v_exponent);
    return r;
  }
  /// c * w^k.
  static VPoly w_power(int k, const Rational& c = 1) { return monomial(c, 2 * k); }

  static VPoly from_terms(const std::map<int, Rational>& terms) {
    VPoly r;
    for (const auto& [e, c] : terms) r += monomial(c, e);
    return r;
  }

  /// Integer polynomial divided by a positive integer; reduced on construction.
  static VPoly from_parts(detail::IntPoly p, Integer d) {
    VPoly r;
    r.p_ = std::move(p);
    r.d_ = std::move(d);
    r.canonicalize();
    return r;
  }

  bool is_zero() const { return p_.is_zero(); }
  bool is_one() const { return p_.is_one() && d_ == 1; }
  int low() const { return p_.low(); }
  int high() const { return p_.high(); }

  Rational coeff(int v_exponent) const {
    Rational c(p_.coeff(v_exponent), d_);
    c.canonicalize();
    return c;
  }

  /// Nonzero terms as (v-exponent, coefficient), ascending.
  std::vector<std::pair<int, Rational>> terms() const {
    std::vector<std::pair<int, Rational>> out;
    const auto& c = p_.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Rational q(c[i], d_);
      q.canonicalize();
      out.emplace_back(p_.low() + static_cast<int>(i), q);
    }
    return out;
  }

  bool has_even_support() const {
    const auto& c = p_.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0 && (p_.low() + static_cast<int>(i)) % 2 != 0) return false;
    return true;
  }

  bool is_integral() const { return d_ == 1; }

  const detail::IntPoly& int_part() const { return p_; }
  const Integer& denominator() const { return d_; }

  bool operator==(const VPoly& o) const { return d_ == o.d_ && p_ == o.p_; }

  VPoly operator-() const {
    VPoly r = *this;
    r.p_ = -r.p_;
    return r;
  }

  VPoly& operator+=(const VPoly& o) { return combine(o, false); }
  VPoly& operator-=(const VPoly& o) { return combine(o, true); }
  friend VPoly operator+(VPoly a, const VPoly& b) { return a += b; }
  friend VPoly operator-(VPoly a, const VPoly& b) { return a -= b; }

  friend VPoly operator*(const VPoly& a, const VPoly& b) {
    return from_parts(a.p_ * b.p_, a.d_ * b.d_);
  }
  VPoly& operator*=(const VPoly& o) { return *this = *this * o; }

  friend VPoly operator*(const VPoly& a, const Rational& s) {
    return from_parts(a.p_ * s.get_num(), a.d_ * s.get_den());
  }

  VPoly shifted(int v_shift) const {
    VPoly r = *this;
    r.p_ = r.p_.shifted(v_shift);
    return r;
  }

  /// Value at v = 1 (equivalently w = 1).
  Rational value_at_one() const {
    Rational c(p_.value_at_one(), d_);
    c.canonicalize();
    return c;
  }

  VPoly substituted(int m, SubstFlavor flavor) const {
    if (m == 1) return *this;
    VPoly r;
    r.p_ = flavor == SubstFlavor::plain ? p_.substituted(m) : p_.multicover(m);
    r.d_ = d_;
    return r;
  }

  /// w -> 1/w.
  VPoly reflected() const {
    VPoly r = *this;
    r.p_ = p_.reflected();
    return r;
  }

  std::string to_string() const;

 private:
  void canonicalize() {
    if (d_ == 0) throw std::domain_error("zero denominator in VPoly");
    if (p_.is_zero()) {
      d_ = 1;
      return;
    }
    if (d_ < 0) {
      d_ = -d_;
      p_ = -p_;
    }
    if (d_ == 1) return;
    Integer g = p_.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d_.get_mpz_t());
    if (g != 1) {
      p_.divexact(g);
      mpz_divexact(d_.get_mpz_t(), d_.get_mpz_t(), g.get_mpz_t());
    }
  }

  VPoly& combine(const VPoly& o, bool subtract) {
    if (o.is_zero()) return *this;
    if (d_ == o.d_) {
      if (subtract)
        p_ -= o.p_;
      else
        p_ += o.p_;
    } else {
      detail::IntPoly lhs = p_ * o.d_;
      detail::IntPoly rhs = o.p_ * d_;
      p_ = subtract ? lhs - rhs : lhs + rhs;
      d_ *= o.d_;
    }
    canonicalize();
    return *this;
  }

  detail::IntPoly p_;
  Integer d_ = 1;
};

namespace detail {

inline std::string w_monomial(int v_exponent) {
  if (v_exponent == 0) return "";
  std::string e;
  if (v_exponent % 2 == 0) {
    int k = v_exponent / 2;
    if (k == 1) return "w";
    e = std::to_string(k);
  } else {
    e = "(" + std::to_string(v_exponent) + "/2)";
  }
  return "w^" + e;
}

}  // namespace detail

inline std::string VPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto ts = terms();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    Rational c = it->second;
    std::string mono = detail::w_monomial(it->first);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rational a = abs(c);
    if (mono.empty())
      os << bps::to_string(a);
    else if (a == 1)
      os << mono;
    else
      os << bps::to_string(a) << "*" << mono;
    first = false;
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const VPoly& p) { return os << p.to_string(); }

}  // namespace bps
