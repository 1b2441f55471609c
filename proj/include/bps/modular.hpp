#pragma once

// Dedekind eta, theta functions at even multiples of z, rank-one and fibre-product
// generating functions, the curve total-set function and the blow-up factors.
//
// theta_1(2kz, tau) = i * theta_hat(k); the factors of i in every formula used here
// combine to +1, so all series below have rational coefficients.

#include "bps/genfun.hpp"
#include "bps/qseries.hpp"
#include "bps/surface.hpp"
#include "bps/wrat.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace bps {

namespace detail {

/// sum_{n >= 0} c[n] q^n with integer Laurent polynomials in v.
class LevelSeries {
 public:
  explicit LevelSeries(std::size_t levels) : c_(levels) {
    if (levels > 0) c_[0] = IntPoly::one();
  }

  /// Multiplies by prod_{n >= 1} (1 - v^x q^n)^power.
  void apply(int x, int power) {
    const std::size_t N = c_.size();
    for (int p = 0; p < std::abs(power); ++p) {
      for (std::size_t n = 1; n < N; ++n) {
        if (power > 0) {
          for (std::size_t i = N - 1; i >= n; --i) {
            if (!c_[i - n].is_zero()) c_[i] -= c_[i - n].shifted(x);
            if (i == n) break;
          }
        } else {
          for (std::size_t i = n; i < N; ++i)
            if (!c_[i - n].is_zero()) c_[i] += c_[i - n].shifted(x);
        }
      }
    }
  }

  /// prefactor * q^lead * (this series), as a QSeries with the given cutoff.
  QSeries to_series(const Rational& lead, const WRat& prefactor, const Rational& cutoff) const {
    QSeries s(cutoff);
    for (std::size_t n = 0; n < c_.size(); ++n) {
      if (c_[n].is_zero()) continue;
      s.add_term(lead + static_cast<long>(n), WRat(VPoly::from_parts(c_[n], 1)) * prefactor);
    }
    return s;
  }

 private:
  std::vector<IntPoly> c_;
};

inline std::size_t levels_below(const Rational& lead, const Rational& cutoff) {
  Rational span = cutoff - lead;
  if (span <= 0) return 0;
  return static_cast<std::size_t>(to_long(Rational(ceil(span))));
}

/// w^k - w^{-k}.
inline VPoly w_odd(int k) { return VPoly::w_power(k) - VPoly::w_power(-k); }

inline SeriesCache<std::tuple<int, int, int>>& modular_cache() {
  static SeriesCache<std::tuple<int, int, int>> c;
  return c;
}

}  // namespace detail

inline QSeries eta_series(const Rational& cutoff) {
  return detail::modular_cache().get({0, 0, 0}, cutoff, [&] {
    const Rational lead = make_rational(1, 24);
    detail::LevelSeries ls(detail::levels_below(lead, cutoff));
    ls.apply(0, 1);
    return ls.to_series(lead, WRat(1), cutoff);
  });
}

/// eta^power for any integer power.
inline QSeries eta_power(int power, const Rational& cutoff) {
  return detail::modular_cache().get({1, power, 0}, cutoff, [&] {
    Rational lead = make_rational(power, 24);
    lead.canonicalize();
    detail::LevelSeries ls(detail::levels_below(lead, cutoff));
    ls.apply(0, power);
    return ls.to_series(lead, WRat(1), cutoff);
  });
}

/// q^{1/8} (w^k - w^{-k}) prod_n (1 - q^n)(1 - w^{2k} q^n)(1 - w^{-2k} q^n).
inline QSeries theta_hat(int k, const Rational& cutoff) {
  if (k < 1) throw std::invalid_argument("theta_hat requires k >= 1");
  return detail::modular_cache().get({2, k, 0}, cutoff, [&] {
    const Rational lead = make_rational(1, 8);
    detail::LevelSeries ls(detail::levels_below(lead, cutoff));
    ls.apply(0, 1);
    ls.apply(4 * k, 1);
    ls.apply(-4 * k, 1);
    return ls.to_series(lead, WRat(detail::w_odd(k)), cutoff);
  });
}

/// 1/(theta_hat(1) eta^{b2-1}).
inline GenFun rank1_genfun(const SurfaceId& S, const Rational& cutoff) {
  const int b2 = S.b2();
  QSeries s = detail::modular_cache().get({3, b2, 0}, cutoff, [&] {
    Rational lead = make_rational(-1, 8) - make_rational(b2 - 1, 24);
    lead.canonicalize();
    detail::LevelSeries ls(detail::levels_below(lead, cutoff));
    ls.apply(0, -(b2 - 1) - 1);
    ls.apply(4, -1);
    ls.apply(-4, -1);
    return ls.to_series(lead, WRat(1) / WRat(detail::w_odd(1)), cutoff);
  });
  Polarization J = S.is_hirzebruch() ? Polarization::suitable() : Polarization::hyperplane();
  return GenFun{S, 1, S.zero(), J, Flavor::omega_bar, std::move(s)};
}

/// eta^{2r-3} / (prod_{j<r} theta_hat(j)^2 theta_hat(r)), the bare series.
inline QSeries fibre_product_series(int r, const Rational& cutoff) {
  if (r < 1) throw std::invalid_argument("fibre product requires positive rank");
  return detail::modular_cache().get({4, r, 0}, cutoff, [&] {
    Rational lead = make_rational(-r, 6);
    lead.canonicalize();
    detail::LevelSeries ls(detail::levels_below(lead, cutoff));
    ls.apply(0, 2 * r - 3);
    VPoly den = 1;
    for (int j = 1; j < r; ++j) {
      ls.apply(0, -2);
      ls.apply(4 * j, -2);
      ls.apply(-4 * j, -2);
      den = den * detail::w_odd(j) * detail::w_odd(j);
    }
    ls.apply(0, -1);
    ls.apply(4 * r, -1);
    ls.apply(-4 * r, -1);
    den = den * detail::w_odd(r);
    return ls.to_series(lead, WRat(VPoly(1), den), cutoff);
  });
}

/// Stack-flavor generating function of sheaves semistable on the generic fibre.
inline GenFun fibre_product_genfun(int r, const Cls& c1, int ell, const Rational& cutoff) {
  if (r < 1) throw std::invalid_argument("fibre product requires positive rank");
  SurfaceId S = SurfaceId::hirzebruch(ell);
  GenFun g{S, r, reduce_c1(c1, r), Polarization::suitable(), Flavor::stack, QSeries(cutoff)};
  if (r > 1 && !is_integer(S.intersect(c1, S.fibre()) / r)) return g;
  g.series = fibre_product_series(r, cutoff);
  return g;
}

/// Virtual Poincare function of the stack of rank r bundles on a genus g curve.
inline WRat total_set_curve(int r, int g) {
  if (r < 1 || g < 0) throw std::invalid_argument("total_set_curve requires r >= 1, g >= 0");
  auto pw = [](const VPoly& b, int e) {
    VPoly out = 1;
    for (int i = 0; i < e; ++i) out = out * b;
    return out;
  };
  VPoly num = -pw(VPoly(1) + VPoly::w_power(2 * r - 1), 2 * g) * VPoly::w_power(r * r * (1 - g));
  VPoly den = VPoly(1) - VPoly::w_power(2 * r);
  for (int j = 1; j < r; ++j) {
    num = num * pw(VPoly(1) + VPoly::w_power(2 * j - 1), 2 * g);
    VPoly f = VPoly(1) - VPoly::w_power(2 * j);
    den = den * f * f;
  }
  return WRat(num, den);
}

/// Lattice part of B_{r,k}: sum over a_i in Z + k/r with sum a_i = 0 of
/// q^{sum a_i^2 / 2} w^{sum_i (r+1-2i) a_i}.
inline QSeries blowup_lattice_sum(int r, int k, const Rational& cutoff) {
  if (r < 1) throw std::invalid_argument("blow-up factor requires positive rank");
  k = ((k % r) + r) % r;
  QSeries s(cutoff);
  if (r == 1) {
    s.add_term(0, WRat(1));
    return s;
  }
  // sum a_i^2/2 < cutoff forces |a_i| < sqrt(2 cutoff); points outside that box exceed the cutoff.
  double bound = cutoff > 0 ? std::sqrt(2.0 * cutoff.get_d()) + 2.0 : 0.0;
  long nmax = static_cast<long>(bound);
  const Rational shift = make_rational(k, r);
  std::vector<long> n(r - 1, -nmax);
  std::map<Rational, std::map<int, Rational>> acc;
  while (true) {
    std::vector<Rational> a(r);
    Rational total = 0;
    for (int i = 0; i + 1 < r; ++i) {
      a[i] = n[i] + shift;
      total += a[i];
    }
    a[r - 1] = -total;
    Rational qe = 0, we = 0;
    for (int i = 0; i < r; ++i) {
      qe += a[i] * a[i];
      we += (r - 1 - 2 * i) * a[i];
    }
    qe /= 2;
    if (qe < cutoff) {
      if (!is_integer(2 * we)) throw std::logic_error("blow-up lattice produced a quarter w-power");
      acc[qe][static_cast<int>(to_long(2 * we))] += 1;
    }
    int i = 0;
    while (i < r - 1 && n[i] == nmax) n[i++] = -nmax;
    if (i == r - 1) break;
    ++n[i];
  }
  for (const auto& [e, terms] : acc) s.add_term(e, WRat(VPoly::from_terms(terms)));
  return s;
}

/// B_{r,k} = eta^{-r} times the lattice sum.
inline QSeries blowup_factor(int r, int k, const Rational& cutoff) {
  k = ((k % r) + r) % r;
  return detail::modular_cache().get({5, r, k}, cutoff, [&] {
    QSeries theta = blowup_lattice_sum(r, k, cutoff + make_rational(r, 24));
    Rational tmin = theta.valuation();
    QSeries e = eta_power(-r, cutoff - tmin);
    return (theta * e).truncated(cutoff);
  });
}

}  // namespace bps
