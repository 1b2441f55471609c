#pragma once

// Sparse truncated q-series with rational exponents and WRat coefficients.

#include "bps/wrat.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bps {

namespace detail {

struct IntPolyLess {
  bool operator()(const IntPoly& a, const IntPoly& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.low() != b.low()) return a.low() < b.low();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    for (std::size_t i = 0; i < x.size(); ++i) {
      int c = cmp(x[i], y[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

}  // namespace detail

/// Sums many WRat values, deferring gcd work: terms sharing a denominator are
/// added as integer polynomials and reduced once.
class WRatSum {
 public:
  void add(const WRat& x) {
    if (x.is_zero()) return;
    push(x.raw_den(), x.raw_num(), x.raw_scale());
  }

  /// Adds a*b without reducing the product.
  void add_product(const WRat& a, const WRat& b) {
    if (a.is_zero() || b.is_zero()) return;
    detail::IntPoly D = a.raw_den().is_one() ? b.raw_den()
                        : b.raw_den().is_one() ? a.raw_den()
                                               : a.raw_den() * b.raw_den();
    push(D, a.raw_num() * b.raw_num(), a.raw_scale() * b.raw_scale());
  }

  void add_scaled(const WRat& x, const Rational& s) {
    if (x.is_zero() || s == 0) return;
    push(x.raw_den(), x.raw_num() * s.get_num(), x.raw_scale() * s.get_den());
  }

  bool empty() const { return groups_.empty(); }

  WRat result() const {
    // Combine groups pairwise in order of increasing denominator size.
    std::vector<WRat> parts;
    parts.reserve(groups_.size());
    for (const auto& [D, g] : groups_) {
      if (g.first.is_zero()) continue;
      parts.push_back(WRat::from_raw(g.first, g.second, D));
    }
    if (parts.empty()) return WRat();
    while (parts.size() > 1) {
      std::vector<WRat> next;
      for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
      if (parts.size() % 2 == 1) next.push_back(parts.back());
      parts = std::move(next);
    }
    return parts.front();
  }

 private:
  void push(const detail::IntPoly& D, detail::IntPoly n, Integer d) {
    auto it = groups_.find(D);
    if (it == groups_.end()) {
      groups_.emplace(D, std::make_pair(std::move(n), std::move(d)));
      return;
    }
    auto& [gn, gd] = it->second;
    if (gd == d) {
      gn += n;
      return;
    }
    Integer l;
    mpz_lcm(l.get_mpz_t(), gd.get_mpz_t(), d.get_mpz_t());
    Integer fg = l / gd, fn = l / d;
    if (fg != 1) gn *= fg;
    if (fn != 1) n *= fn;
    gn += n;
    gd = std::move(l);
  }

  std::map<detail::IntPoly, std::pair<detail::IntPoly, Integer>, detail::IntPolyLess> groups_;
};

class QSeries {
 public:
  using Terms = std::map<Rational, WRat>;

  QSeries() = default;
  explicit QSeries(Rational cutoff) : cutoff_(std::move(cutoff)) { cutoff_.canonicalize(); }

  static QSeries monomial(const WRat& c, const Rational& exponent, const Rational& cutoff) {
    QSeries s(cutoff);
    s.add_term(exponent, c);
    return s;
  }
  static QSeries one(const Rational& cutoff) { return monomial(WRat(1), 0, cutoff); }

  const Terms& terms() const { return terms_; }
  const Rational& cutoff() const { return cutoff_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  WRat coeff(const Rational& e) const {
    if (e >= cutoff_) throw std::out_of_range("coefficient requested at or beyond cutoff");
    auto it = terms_.find(e);
    return it == terms_.end() ? WRat() : it->second;
  }

  std::optional<Rational> leading_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }
  /// Leading exponent, or the cutoff for a series with no known terms.
  Rational valuation() const { return terms_.empty() ? cutoff_ : terms_.begin()->first; }

  /// Adds c*q^e; terms at or beyond the cutoff are discarded.
  void add_term(Rational e, const WRat& c) {
    e.canonicalize();
    if (e >= cutoff_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  QSeries truncated(const Rational& cutoff) const {
    QSeries r(std::min(cutoff, cutoff_));
    for (const auto& [e, c] : terms_) {
      if (e >= r.cutoff_) break;
      r.terms_.emplace(e, c);
    }
    return r;
  }

  /// Multiplication by q^s.
  QSeries shifted(const Rational& s) const {
    QSeries r(cutoff_ + s);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + s, c);
    return r;
  }

  QSeries operator-() const {
    QSeries r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) { return combine(a, b, false); }
  friend QSeries operator-(const QSeries& a, const QSeries& b) { return combine(a, b, true); }
  QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
  QSeries& operator-=(const QSeries& o) { return *this = *this - o; }

  friend QSeries operator*(const QSeries& a, const WRat& s) {
    QSeries r(a.cutoff_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
    return r;
  }
  friend QSeries operator*(const WRat& s, const QSeries& a) { return a * s; }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    const Rational la = a.valuation(), lb = b.valuation();
    QSeries r(std::min(a.cutoff_ + lb, b.cutoff_ + la));
    std::map<Rational, WRatSum> acc;
    for (const auto& [ea, ca] : a.terms_) {
      if (ea + lb >= r.cutoff_) break;
      for (const auto& [eb, cb] : b.terms_) {
        Rational e = ea + eb;
        if (e >= r.cutoff_) break;
        acc[e].add_product(ca, cb);
      }
    }
    for (auto& [e, s] : acc) {
      WRat c = s.result();
      if (!c.is_zero()) r.terms_.emplace_hint(r.terms_.end(), e, std::move(c));
    }
    return r;
  }
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  /// Multiplicative inverse; the result has cutoff c - 2*l for input cutoff c and leading exponent l.
  QSeries inverse() const {
    if (terms_.empty()) throw std::domain_error("non-invertible zero series");
    const Rational l = terms_.begin()->first;
    const Rational rel = cutoff_ - l;  // relative precision
    const WRat inv0 = terms_.begin()->second.inverse();
    std::vector<std::pair<Rational, WRat>> gaps;  // (e - l, a_e / a_0)
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      gaps.emplace_back(it->first - l, it->second * inv0);
    std::map<Rational, WRat> b;  // relative offsets
    std::set<Rational> todo{Rational(0)};
    while (!todo.empty()) {
      Rational s = *todo.begin();
      todo.erase(todo.begin());
      WRat value;
      if (s == 0) {
        value = WRat(1);
      } else {
        WRatSum acc;
        for (const auto& [g, c] : gaps) {
          if (g > s) break;
          auto it = b.find(s - g);
          if (it != b.end()) acc.add_product(c, it->second);
        }
        value = -acc.result();
      }
      b.emplace(s, value);
      for (const auto& [g, c] : gaps) {
        Rational t = s + g;
        if (t >= rel) break;
        todo.insert(t);
      }
    }
    QSeries r(cutoff_ - 2 * l);
    for (auto& [s, c] : b) {
      if (c.is_zero()) continue;
      r.terms_.emplace_hint(r.terms_.end(), s - l, c * inv0);
    }
    return r;
  }

  /// q -> q^m together with w -> w^m (plain) or w -> -(-w)^m (multicover).
  QSeries substituted(int m, SubstFlavor flavor) const {
    if (m < 1) throw std::invalid_argument("substitution order must be positive");
    if (m == 1) return *this;
    QSeries r(cutoff_ * m);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e * m, c.substituted(m, flavor));
    return r;
  }

  /// w -> 1/w on every coefficient.
  QSeries reflected() const {
    QSeries r(cutoff_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c.reflected());
    return r;
  }

  QSeries pow(unsigned n) const {
    QSeries result = one(cutoff_ - valuation());
    QSeries base = *this;
    bool first = true;
    while (n > 0) {
      if (n & 1u) {
        result = first ? base : result * base;
        first = false;
      }
      n >>= 1u;
      if (n > 0) base = base * base;
    }
    return result;
  }

  /// Equality of terms and cutoff.
  bool operator==(const QSeries& o) const { return cutoff_ == o.cutoff_ && terms_ == o.terms_; }

  /// Agreement of all terms below the smaller of the two cutoffs.
  bool agrees_with(const QSeries& o) const {
    Rational c = std::min(cutoff_, o.cutoff_);
    return truncated(c).terms_ == o.truncated(c).terms_;
  }

  bool all_even_support() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.has_even_support(); });
  }

  std::string to_string() const {
    std::ostringstream os;
    for (const auto& [e, c] : terms_) os << "q^" << bps::to_string(e) << " : " << c << "\n";
    os << "O(q^" << bps::to_string(cutoff_) << ")\n";
    return os.str();
  }

 private:
  static QSeries combine(const QSeries& a, const QSeries& b, bool subtract) {
    QSeries r(std::min(a.cutoff_, b.cutoff_));
    for (const auto& [e, c] : a.terms_) {
      if (e >= r.cutoff_) break;
      r.terms_.emplace_hint(r.terms_.end(), e, c);
    }
    for (const auto& [e, c] : b.terms_) {
      if (e >= r.cutoff_) break;
      r.add_term(e, subtract ? -c : c);
    }
    return r;
  }

  Terms terms_;
  Rational cutoff_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.to_string(); }

/// Sum over many series; same cutoff semantics as repeated addition.
class QSeriesSum {
 public:
  explicit QSeriesSum(Rational cutoff) : cutoff_(std::move(cutoff)) {}

  void add(const QSeries& s, const Rational& scale = 1) {
    cutoff_ = std::min(cutoff_, s.cutoff());
    if (scale == 0) return;
    for (const auto& [e, c] : s.terms()) {
      if (e >= cutoff_) break;
      acc_[e].add_scaled(c, scale);
    }
  }

  void add_term(const Rational& e, const WRat& c) {
    if (e < cutoff_) acc_[e].add(c);
  }

  void add_product_term(const Rational& e, const WRat& a, const WRat& b) {
    if (e < cutoff_) acc_[e].add_product(a, b);
  }

  const Rational& cutoff() const { return cutoff_; }

  QSeries result() const {
    QSeries r(cutoff_);
    for (const auto& [e, s] : acc_) {
      if (e >= cutoff_) break;
      r.add_term(e, s.result());
    }
    return r;
  }

 private:
  Rational cutoff_;
  std::map<Rational, WRatSum> acc_;
};

}  // namespace bps
