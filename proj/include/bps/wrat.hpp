#pragma once

// Exact rational functions of the refinement variable (v with v^2 = w).

#include "bps/intpoly.hpp"
#include "bps/vpoly.hpp"

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace bps {

// Stored as n / (d * D): n an integer Laurent polynomial, d a positive integer,
// D primitive with positive leading coefficient and lowest exponent 0.
// gcd(n, D) = 1 and gcd(content(n), d) = 1, so the form is canonical.
class WRat {
 public:
  WRat() = default;
  WRat(const VPoly& p) : n_(p.int_part()), d_(p.denominator()) {}  // NOLINT
  WRat(const Rational& c) : WRat(VPoly(c)) {}                       // NOLINT
  WRat(long c) : WRat(VPoly(c)) {}                                  // NOLINT

  WRat(const VPoly& num, const VPoly& den) {
    if (den.is_zero()) throw std::domain_error("WRat with zero denominator");
    // num/den = (pn/dn) / (pd/dd) = pn*dd / (dn*pd)
    detail::IntPoly pd = den.int_part();
    int shift = pd.low();
    pd = pd.normalized_low();
    Integer c = pd.content();
    if (sgn(pd.lead()) < 0) c = -c;
    pd.divexact(c);
    n_ = num.int_part().shifted(-shift) * den.denominator();
    d_ = num.denominator() * c;
    D_ = std::move(pd);
    reduce_full();
  }

  static WRat w_power(int k) { return WRat(VPoly::w_power(k)); }
  static WRat v_power(int e) { return WRat(VPoly::monomial(1, e)); }

  bool is_zero() const { return n_.is_zero(); }
  bool is_polynomial() const { return D_.is_one(); }
  bool is_one() const { return is_polynomial() && d_ == 1 && n_.is_one(); }

  /// Numerator presented against a denominator with highest coefficient +1.
  VPoly num() const { return VPoly::from_parts(n_ * D_.lead(), d_); }
  VPoly den() const { return VPoly::from_parts(D_, D_.lead()); }

  /// The polynomial itself; throws unless is_polynomial().
  VPoly as_vpoly() const {
    if (!is_polynomial()) throw std::domain_error("integrality violation: rational function is not a polynomial");
    return VPoly::from_parts(n_, d_);
  }

  const detail::IntPoly& raw_num() const { return n_; }
  const Integer& raw_scale() const { return d_; }
  const detail::IntPoly& raw_den() const { return D_; }

  bool operator==(const WRat& o) const { return d_ == o.d_ && n_ == o.n_ && D_ == o.D_; }
  bool operator!=(const WRat& o) const { return !(*this == o); }

  WRat operator-() const {
    WRat r = *this;
    r.n_ = -r.n_;
    return r;
  }

  friend WRat operator*(const WRat& a, const WRat& b) {
    if (a.is_zero() || b.is_zero()) return WRat();
    WRat r;
    detail::IntPoly n1 = a.n_, n2 = b.n_, D1 = a.D_, D2 = b.D_;
    if (!D2.is_one()) {
      detail::IntPoly g = detail::gcd(n1, D2);
      if (!g.is_one()) {
        n1 = *detail::divide_exact(n1, g);
        D2 = *detail::divide_exact(D2, g);
      }
    }
    if (!D1.is_one()) {
      detail::IntPoly g = detail::gcd(n2, D1);
      if (!g.is_one()) {
        n2 = *detail::divide_exact(n2, g);
        D1 = *detail::divide_exact(D1, g);
      }
    }
    r.n_ = n1 * n2;
    r.D_ = D1 * D2;
    r.d_ = a.d_ * b.d_;
    r.reduce_scalars();
    return r;
  }

  friend WRat operator+(const WRat& a, const WRat& b) { return sum(a, b, false); }
  friend WRat operator-(const WRat& a, const WRat& b) { return sum(a, b, true); }
  WRat& operator+=(const WRat& o) { return *this = *this + o; }
  WRat& operator-=(const WRat& o) { return *this = *this - o; }
  WRat& operator*=(const WRat& o) { return *this = *this * o; }

  WRat inverse() const {
    if (is_zero()) throw std::domain_error("division by zero rational function");
    // 1 / (n/(dD)) = d D / n
    WRat r;
    detail::IntPoly n = n_;
    int shift = n.low();
    n = n.normalized_low();
    Integer c = n.content();
    if (sgn(n.lead()) < 0) c = -c;
    n.divexact(c);
    r.n_ = D_.shifted(-shift) * d_;
    r.D_ = std::move(n);
    if (c < 0) {
      c = -c;
      r.n_ = -r.n_;
    }
    r.d_ = c;
    r.reduce_scalars();
    return r;
  }

  friend WRat operator/(const WRat& a, const WRat& b) { return a * b.inverse(); }

  WRat substituted(int m, SubstFlavor flavor) const {
    if (m == 1 || is_zero()) return *this;
    WRat r;
    if (flavor == SubstFlavor::plain) {
      r.n_ = n_.substituted(m);
      r.D_ = D_.substituted(m);
    } else {
      r.n_ = n_.multicover(m);
      r.D_ = D_.multicover(m);
    }
    r.d_ = d_;
    if (sgn(r.D_.lead()) < 0) {
      r.D_ = -r.D_;
      r.n_ = -r.n_;
    }
    return r;
  }

  /// w -> 1/w.
  WRat reflected() const {
    if (is_zero()) return *this;
    WRat r;
    int h = D_.high();
    r.D_ = D_.reflected().shifted(h);
    r.n_ = n_.reflected().shifted(h);
    r.d_ = d_;
    if (sgn(r.D_.lead()) < 0) {
      r.D_ = -r.D_;
      r.n_ = -r.n_;
    }
    return r;
  }

  bool has_even_support() const {
    return VPoly::from_parts(n_, 1).has_even_support() && VPoly::from_parts(D_, 1).has_even_support();
  }

  std::string to_string() const {
    if (is_polynomial()) return as_vpoly().to_string();
    return "(" + num().to_string() + ")/(" + den().to_string() + ")";
  }

  // Builds n/(d*D) from parts already known to satisfy the invariants except reduction.
  static WRat from_raw(detail::IntPoly n, Integer d, detail::IntPoly D) {
    WRat r;
    r.n_ = std::move(n);
    r.d_ = std::move(d);
    r.D_ = std::move(D);
    r.reduce_full();
    return r;
  }

 private:
  static WRat sum(const WRat& a, const WRat& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    WRat r;
    if (a.D_ == b.D_) {
      detail::IntPoly x = a.n_ * b.d_, y = b.n_ * a.d_;
      r.n_ = subtract ? x - y : x + y;
      r.d_ = a.d_ * b.d_;
      r.D_ = a.D_;
      if (r.D_.is_one()) {
        r.reduce_scalars();
        return r;
      }
    } else {
      detail::IntPoly g = detail::gcd(a.D_, b.D_);
      detail::IntPoly ca = *detail::divide_exact(b.D_, g);  // multiplies a
      detail::IntPoly cb = *detail::divide_exact(a.D_, g);  // multiplies b
      detail::IntPoly x = a.n_ * ca * b.d_, y = b.n_ * cb * a.d_;
      r.n_ = subtract ? x - y : x + y;
      r.d_ = a.d_ * b.d_;
      r.D_ = a.D_ * ca;
    }
    r.reduce_full();
    return r;
  }

  void reduce_scalars() {
    if (n_.is_zero()) {
      d_ = 1;
      D_ = detail::IntPoly::one();
      return;
    }
    if (d_ == 1) return;
    Integer g = n_.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d_.get_mpz_t());
    if (g != 1) {
      n_.divexact(g);
      mpz_divexact(d_.get_mpz_t(), d_.get_mpz_t(), g.get_mpz_t());
    }
  }

  void reduce_full() {
    if (n_.is_zero()) {
      d_ = 1;
      D_ = detail::IntPoly::one();
      return;
    }
    if (sgn(d_) < 0) {
      d_ = -d_;
      n_ = -n_;
    }
    if (!D_.is_one()) {
      detail::IntPoly g = detail::gcd(n_, D_);
      if (!g.is_one()) {
        n_ = *detail::divide_exact(n_, g);
        D_ = *detail::divide_exact(D_, g);
      }
    }
    reduce_scalars();
  }

  detail::IntPoly n_;
  Integer d_ = 1;
  detail::IntPoly D_ = detail::IntPoly::one();
};

inline std::ostream& operator<<(std::ostream& os, const WRat& x) { return os << x.to_string(); }

}  // namespace bps
