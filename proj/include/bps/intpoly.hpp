#pragma once

// Dense Laurent polynomials with integer coefficients in the variable v.
// Backing store for VPoly and WRat; not part of the public surface.

#include "bps/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bps::detail {

class IntPoly {
 public:
  IntPoly() = default;

  IntPoly(int low, std::vector<Integer> coeffs) : low_(low), c_(std::move(coeffs)) { trim(); }

  static IntPoly constant(Integer c) { return IntPoly(0, {std::move(c)}); }
  static IntPoly monomial(Integer c, int exponent) { return IntPoly(exponent, {std::move(c)}); }
  static IntPoly one() { return constant(1); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && low_ == 0 && c_[0] == 1; }
  bool is_monomial() const { return c_.size() == 1; }
  bool is_constant() const { return is_zero() || (c_.size() == 1 && low_ == 0); }

  // Exponent range; meaningful only for nonzero polynomials.
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  int degree_span() const { return is_zero() ? 0 : high() - low(); }

  const std::vector<Integer>& coeffs() const { return c_; }
  const Integer& lead() const { return c_.back(); }
  const Integer& trail() const { return c_.front(); }

  Integer coeff(int e) const {
    if (is_zero() || e < low_ || e > high()) return Integer(0);
    return c_[static_cast<std::size_t>(e - low_)];
  }

  bool operator==(const IntPoly& o) const {
    return c_.size() == o.c_.size() && (c_.empty() || low_ == o.low_) && c_ == o.c_;
  }

  IntPoly shifted(int k) const {
    IntPoly r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
  }

  /// Shift so that the lowest exponent is zero.
  IntPoly normalized_low() const { return is_zero() ? *this : shifted(-low_); }

  IntPoly operator-() const {
    IntPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  IntPoly& operator+=(const IntPoly& o) { return accumulate(o, false); }
  IntPoly& operator-=(const IntPoly& o) { return accumulate(o, true); }
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }

  IntPoly& operator*=(const Integer& s) {
    if (s == 0) {
      c_.clear();
      low_ = 0;
      return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend IntPoly operator*(IntPoly a, const Integer& s) { return a *= s; }

  /// Exact division of every coefficient by s.
  IntPoly& divexact(const Integer& s) {
    for (auto& x : c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
    return *this;
  }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) { return multiply(a, b); }

  /// Positive gcd of the coefficients (0 for the zero polynomial).
  Integer content() const {
    Integer g = 0;
    for (const auto& x : c_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  std::size_t max_bits() const {
    std::size_t b = 0;
    for (const auto& x : c_) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
    return b;
  }

  Integer max_abs() const {
    Integer m = 0;
    for (const auto& x : c_)
      if (mpz_cmpabs(x.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(x);
    return m;
  }

  /// Value at v = x (x != 0 needed for negative exponents; callers pass low-normalized input).
  Integer eval(const Integer& x) const {
    Integer acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  /// Sum of coefficients, i.e. the value at v = 1.
  Integer value_at_one() const {
    Integer s = 0;
    for (const auto& x : c_) s += x;
    return s;
  }

  /// v -> sign * v^m applied termwise (m >= 1, sign = +1 or -1 on odd exponents).
  IntPoly substituted(int m, bool negate_odd = false) const {
    if (is_zero()) return *this;
    std::vector<Integer> out(static_cast<std::size_t>((high() - low_) * m + 1));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      int e = low_ + static_cast<int>(i);
      Integer v = c_[i];
      if (negate_odd && (e % 2 != 0)) v = -v;
      out[i * static_cast<std::size_t>(m)] = v;
    }
    return IntPoly(low_ * m, std::move(out));
  }

  /// Multicover map on integer w-support (even v exponents): w^k -> (-1)^{k(m+1)} w^{mk}.
  IntPoly multicover(int m) const {
    if (is_zero()) return *this;
    std::vector<Integer> out(static_cast<std::size_t>((high() - low_) * m + 1));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      int e = low_ + static_cast<int>(i);
      if (e % 2 != 0) throw std::domain_error("multicover substitution on half-integer w-power");
      int k = e / 2;
      Integer v = c_[i];
      if ((static_cast<long>(k) * (m + 1)) % 2 != 0) v = -v;
      out[i * static_cast<std::size_t>(m)] = v;
    }
    return IntPoly(low_ * m, std::move(out));
  }

  /// v -> 1/v.
  IntPoly reflected() const {
    if (is_zero()) return *this;
    std::vector<Integer> out(c_.rbegin(), c_.rend());
    return IntPoly(-high(), std::move(out));
  }

  static IntPoly multiply(const IntPoly& a, const IntPoly& b);

 private:
  void trim() {
    std::size_t first = 0;
    while (first < c_.size() && c_[first] == 0) ++first;
    if (first == c_.size()) {
      c_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = c_.size();
    while (c_[last - 1] == 0) --last;
    if (first > 0 || last < c_.size()) {
      c_.erase(c_.begin() + static_cast<std::ptrdiff_t>(last), c_.end());
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(first));
      low_ += static_cast<int>(first);
    }
  }

  IntPoly& accumulate(const IntPoly& o, bool subtract) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = subtract ? -o : o;
      return *this;
    }
    int lo = std::min(low_, o.low_);
    int hi = std::max(high(), o.high());
    if (lo < low_ || hi > high()) {
      std::vector<Integer> grown(static_cast<std::size_t>(hi - lo + 1));
      for (std::size_t i = 0; i < c_.size(); ++i)
        grown[static_cast<std::size_t>(low_ - lo) + i] = std::move(c_[i]);
      c_ = std::move(grown);
      low_ = lo;
    }
    std::size_t off = static_cast<std::size_t>(o.low_ - low_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      if (subtract)
        c_[off + i] -= o.c_[i];
      else
        c_[off + i] += o.c_[i];
    }
    trim();
    return *this;
  }

  int low_ = 0;
  std::vector<Integer> c_;
};

namespace kronecker {

// Packs signed coefficients into slots of `limbs` machine words; returns the packed integer.
inline Integer pack(const std::vector<Integer>& c, std::size_t limbs) {
  std::vector<mp_limb_t> pos(c.size() * limbs, 0), neg(c.size() * limbs, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const mpz_srcptr z = c[i].get_mpz_t();
    std::size_t n = mpz_size(z);
    const mp_limb_t* src = mpz_limbs_read(z);
    auto& dst = sgn(c[i]) < 0 ? neg : pos;
    if (sgn(c[i]) < 0) any_neg = true;
    std::copy(src, src + n, dst.begin() + static_cast<std::ptrdiff_t>(i * limbs));
  }
  Integer p, q;
  mpz_import(p.get_mpz_t(), pos.size(), -1, sizeof(mp_limb_t), 0, 0, pos.data());
  if (any_neg) {
    mpz_import(q.get_mpz_t(), neg.size(), -1, sizeof(mp_limb_t), 0, 0, neg.data());
    p -= q;
  }
  return p;
}

inline std::vector<Integer> unpack(const Integer& value, std::size_t count, std::size_t limbs) {
  std::vector<Integer> out(count);
  int s = sgn(value);
  if (s == 0) return out;
  Integer mag = abs(value);
  const std::size_t n = mpz_size(mag.get_mpz_t());
  const mp_limb_t* src = mpz_limbs_read(mag.get_mpz_t());
  const std::size_t bits = limbs * GMP_NUMB_BITS;
  Integer half, full;
  mpz_setbit(half.get_mpz_t(), bits - 1);
  mpz_setbit(full.get_mpz_t(), bits);
  int carry = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Integer t;
    std::size_t begin = i * limbs;
    if (begin < n) {
      std::size_t len = std::min(limbs, n - begin);
      mpz_import(t.get_mpz_t(), len, -1, sizeof(mp_limb_t), 0, 0, src + begin);
    }
    t += carry;
    if (t >= half) {
      t -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = s > 0 ? t : Integer(-t);
  }
  return out;
}

}  // namespace kronecker

inline IntPoly IntPoly::multiply(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  const std::size_t la = a.c_.size(), lb = b.c_.size();
  const int low = a.low_ + b.low_;
  if (la == 1 || lb == 1) {
    const IntPoly& m = la == 1 ? a : b;
    const IntPoly& p = la == 1 ? b : a;
    IntPoly r = p * m.c_[0];
    r.low_ = low;
    return r;
  }
  if (std::min(la, lb) < 16) {
    std::vector<Integer> out(la + lb - 1);
    for (std::size_t i = 0; i < la; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < lb; ++j)
        mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return IntPoly(low, std::move(out));
  }
  // Kronecker substitution: evaluate at 2^k with k large enough to separate coefficients.
  std::size_t bound_bits = a.max_bits() + b.max_bits() + 2;
  for (std::size_t m = std::min(la, lb); m > 0; m >>= 1) ++bound_bits;
  std::size_t limbs = (bound_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  Integer pa = kronecker::pack(a.c_, limbs);
  Integer pb = kronecker::pack(b.c_, limbs);
  Integer prod = pa * pb;
  return IntPoly(low, kronecker::unpack(prod, la + lb - 1, limbs));
}

/// Exact quotient a / b in Z[v, 1/v], or nullopt if b does not divide a.
inline std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) return IntPoly();
  if (a.degree_span() < b.degree_span()) return std::nullopt;
  if (!mpz_divisible_p(a.lead().get_mpz_t(), b.lead().get_mpz_t()) ||
      !mpz_divisible_p(a.trail().get_mpz_t(), b.trail().get_mpz_t()))
    return std::nullopt;
  {
    Integer bv = b.value_at_one();
    if (bv != 0 && !mpz_divisible_p(a.value_at_one().get_mpz_t(), bv.get_mpz_t())) return std::nullopt;
  }
  const auto& bc = b.coeffs();
  const std::size_t lb = bc.size();
  if (lb == 1) {
    std::vector<Integer> q = a.coeffs();
    for (auto& x : q) {
      if (!mpz_divisible_p(x.get_mpz_t(), bc[0].get_mpz_t())) return std::nullopt;
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), bc[0].get_mpz_t());
    }
    return IntPoly(a.low() - b.low(), std::move(q));
  }
  std::vector<Integer> r = a.coeffs();
  const std::size_t la = r.size();
  const std::size_t lq = la - lb + 1;
  std::vector<Integer> q(lq);
  const Integer& blead = bc.back();
  for (std::size_t k = lq; k-- > 0;) {
    Integer& top = r[k + lb - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), blead.get_mpz_t())) return std::nullopt;
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), blead.get_mpz_t());
    for (std::size_t j = 0; j < lb; ++j)
      mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), bc[j].get_mpz_t());
  }
  for (std::size_t i = 0; i + 1 < lb && i < la; ++i)
    if (r[i] != 0) return std::nullopt;
  return IntPoly(a.low() - b.low(), std::move(q));
}

namespace gcd_detail {

// Primitive part with positive leading coefficient and lowest exponent 0.
inline IntPoly normalize(IntPoly p) {
  if (p.is_zero()) return p;
  p = p.normalized_low();
  Integer c = p.content();
  if (sgn(p.lead()) < 0) c = -c;
  if (c != 1) p.divexact(c);
  return p;
}

inline IntPoly from_integer(Integer h, const Integer& xi) {
  std::vector<Integer> out;
  Integer half = xi / 2;
  while (h != 0) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
    if (r > half) r -= xi;
    out.push_back(r);
    h -= r;
    mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
  }
  return IntPoly(0, std::move(out));
}

inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t lb = bc.size();
  const Integer& blead = bc.back();
  while (r.size() >= lb) {
    Integer top = r.back();
    std::size_t off = r.size() - lb;
    for (auto& x : r) x *= blead;
    for (std::size_t j = 0; j < lb; ++j) mpz_submul(r[off + j].get_mpz_t(), top.get_mpz_t(), bc[j].get_mpz_t());
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return IntPoly(0, std::move(r));
}

inline IntPoly euclid(IntPoly a, IntPoly b) {
  if (a.degree_span() < b.degree_span()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = normalize(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return normalize(a);
}

}  // namespace gcd_detail

/// Greatest common divisor in Q[v, 1/v], returned primitive with positive leading
/// coefficient and lowest exponent 0 (so v-power units are discarded).
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  using namespace gcd_detail;
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  IntPoly pa = normalize(a), pb = normalize(b);
  if (pa.degree_span() == 0 || pb.degree_span() == 0) return IntPoly::one();
  if (pa == pb) return pa;
  // Quick exits: one divides the other.
  if (pa.degree_span() <= pb.degree_span()) {
    if (divide_exact(pb, pa)) return pa;
  } else if (divide_exact(pa, pb)) {
    return pb;
  }
  // Heuristic gcd (evaluation at a large integer), verified by trial division.
  Integer xi = 2 * std::min(pa.max_abs(), pb.max_abs()) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Integer ha = pa.eval(xi), hb = pb.eval(xi);
    Integer h;
    mpz_gcd(h.get_mpz_t(), ha.get_mpz_t(), hb.get_mpz_t());
    IntPoly g = normalize(from_integer(h, xi));
    if (!g.is_zero()) {
      if (g.degree_span() == 0) {
        // Constant candidate: verified only if xi is large enough, which the bound guarantees.
        return IntPoly::one();
      }
      if (divide_exact(pa, g) && divide_exact(pb, g)) return g;
    }
    xi = xi * 73794 / 27011;
  }
  return euclid(pa, pb);
}

}  // namespace bps::detail
