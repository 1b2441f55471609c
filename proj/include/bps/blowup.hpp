#pragma once

// From Sigma_1 = blow-up of P^2 to P^2: mu-semistable stack functions at J_{1,0},
// division by the blow-up factor, and back to Gieseker invariants on P^2.

#include "bps/genfun.hpp"
#include "bps/invariants.hpp"
#include "bps/modular.hpp"
#include "bps/surface.hpp"
#include "bps/wallcross.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace bps {

/// h_{r,c1}(Sigma_1, J_{1,eps}) for a class (r, c1) with c1 = x C + y f.
using NearPullbackLookup = std::function<QSeries(int r, const Cls& c1, const Rational& cutoff)>;

namespace detail {

inline QSeries near_pullback_closed(int r, const Cls& c1, const Rational& cutoff) {
  return genfun_at_polarization(r, c1, 1, Polarization::near_pullback_h(), cutoff).series;
}

inline void compositions_of(int r, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  compositions(r, cur, fn);
}

/// Stack function at J_{1,eps} of a class whose pieces all share its slope.
inline QSeries block_stack(int R, const Cls& c, const Rational& cutoff, const NearPullbackLookup& h) {
  auto lookup = [&](int ri, const Cls& ci) { return h(ri, ci, cutoff + make_rational(R - ri, 6)); };
  return h(R, c, cutoff) + equal_slope_products(lookup, R, c, StackDirection::to_stack, cutoff);
}

}  // namespace detail

/// Step (1): H^mu(Sigma_1, J_{1,0}) from the Gieseker invariants at J_{1,eps}.
/// Sums over HN filtrations for J_{1,eps} whose factors share the J_{1,0} slope: blocks of
/// equal slope with strictly decreasing C-degree per rank lambda_j, each block a stack
/// function, with weight w^{sum_{i<j} R_i R_j (lambda_j - lambda_i)} and q-shift
/// 1/2 sum R_j (lambda_j - x/r)^2.
inline GenFun gieseker_to_mu(int r, const Cls& c1, const Rational& cutoff,
                             const NearPullbackLookup& h = detail::near_pullback_closed) {
  if (r < 1 || r > 3) throw std::invalid_argument("mu conversion is implemented for 1 <= r <= 3");
  const SurfaceId S = SurfaceId::hirzebruch(1);
  if (!is_integral(c1) || c1.size() != 2) throw std::invalid_argument("c1 must be an integral class on Sigma_1");
  const Rational x = c1[0], muy = c1[1] / r, mux = x / r;
  GenFun out{S, r, c1, Polarization::pullback_h(), Flavor::stack_mu, QSeries(cutoff)};
  // every block series starts at or above -R chi / 24 = -R/6
  const Rational reach = cutoff + make_rational(r, 6);
  detail::compositions_of(r, [&](const std::vector<int>& R) {
    const std::size_t l = R.size();
    for (int Rj : R)
      if (!is_integer(Rj * muy)) return;
    std::vector<long> xs(l);
    std::function<void(std::size_t, Rational)> place = [&](std::size_t j, Rational used) {
      if (j + 1 == l) {
        xs[j] = to_long(x - used);
      } else {
        const double half = std::sqrt(2.0 * R[j] * reach.get_d()) + 1.0;
        const double centre = Rational(R[j] * mux).get_d();
        for (long v = static_cast<long>(std::floor(centre - half)); v <= static_cast<long>(std::ceil(centre + half)); ++v) {
          xs[j] = v;
          place(j + 1, used + v);
        }
        return;
      }
      Rational shift = 0, wexp = 0;
      for (std::size_t i = 0; i < l; ++i) {
        const Rational li = make_rational(xs[i], R[i]);
        if (i + 1 < l && !(li > make_rational(xs[i + 1], R[i + 1]))) return;
        shift += R[i] * (li - mux) * (li - mux);
        for (std::size_t k = i + 1; k < l; ++k) wexp += R[i] * xs[k] - R[k] * xs[i];
      }
      shift /= 2;
      if (shift >= reach) return;
      QSeries prod = QSeries::one(cutoff - shift + make_rational(r, 6));
      for (std::size_t i = 0; i < l; ++i) {
        Cls ci{Rational(xs[i]), R[i] * muy};
        prod = prod * detail::block_stack(R[i], ci, cutoff - shift + make_rational(r, 6), h);
      }
      out.series += prod.shifted(shift) * WRat(VPoly::w_power(static_cast<int>(to_long(wexp))));
    };
    place(0, 0);
  });
  if (out.series.cutoff() < cutoff) throw std::logic_error("insufficient precision in mu conversion");
  return out;
}

/// Overload taking the Gieseker generating function of the class itself.
inline GenFun gieseker_to_mu(const GenFun& h, const Rational& cutoff) {
  if (!h.surface.is_hirzebruch() || h.surface.ell != 1 || h.J.kind != Polarization::Kind::near_pullback_h)
    throw std::invalid_argument("mu conversion expects Sigma_1 at J_{1,eps}");
  const Cls top = reduce_c1(h.c1, h.r);
  return gieseker_to_mu(h.r, h.c1, cutoff, [&](int r, const Cls& c, const Rational& cut) {
    if (r == h.r && reduce_c1(c, r) == top && h.series.cutoff() >= cut) return h.series.truncated(cut);
    return detail::near_pullback_closed(r, c, cut);
  });
}

/// Step (2): H^mu(P^2, c1 = d H) = H^mu(Sigma_1, d C_pullback - k C_e) / B_{r,k}.
inline GenFun blowup_divide(const GenFun& Hmu, int k, const Rational& cutoff) {
  if (Hmu.flavor != Flavor::stack_mu || !Hmu.surface.is_hirzebruch() || Hmu.surface.ell != 1)
    throw std::invalid_argument("blow-up division expects a mu stack function on Sigma_1");
  const int r = Hmu.r;
  const Rational d = Hmu.c1[1];
  if (!is_integer((Hmu.c1[1] - Hmu.c1[0] - k) / r))
    throw std::invalid_argument("k does not match the exceptional degree of c1");
  QSeries B = blowup_factor(r, k, cutoff + 2);
  QSeries out = (Hmu.series * B.inverse()).truncated(cutoff);
  if (out.cutoff() < cutoff) throw std::logic_error("insufficient precision in blow-up division");
  for (const auto& [e, c] : out.terms())
    if (!c.has_even_support()) throw std::domain_error("blow-up parity violation");
  return GenFun{SurfaceId::p2(), r, Cls{d}, Polarization::hyperplane(), Flavor::stack_mu, out};
}

/// Step (3): removes the mu-semistable, Gieseker-unstable products on P^2.
inline GenFun mu_to_gieseker(const GenFun& Hmu, const GenFunLookup& lower) {
  if (Hmu.surface.is_hirzebruch() || Hmu.flavor != Flavor::stack_mu)
    throw std::invalid_argument("mu_to_gieseker expects a mu stack function on P^2");
  const Rational cutoff = Hmu.series.cutoff();
  auto lookup = [&](int ri, const Cls& ci) {
    GenFun g = lower(ri, ci);
    if (g.flavor != Flavor::omega_bar) throw std::invalid_argument("lower-rank input must have omega_bar flavor");
    return g.series;
  };
  GenFun out = Hmu;
  out.flavor = Flavor::omega_bar;
  out.series = (Hmu.series - equal_slope_products(lookup, Hmu.r, Hmu.c1, StackDirection::to_stack, cutoff)).truncated(cutoff);
  return out;
}

namespace detail {

inline SeriesCache<std::tuple<int, long, long>>& p2_cache() {
  static SeriesCache<std::tuple<int, long, long>> c;
  return c;
}

inline long default_route(int r, long d) {
  // c1 = a C + d f on Sigma_1; a = 1 for even-degree classes, a = d otherwise
  d = mod_pos(d, r);
  if (r == 1) return 0;
  return d == 0 ? 1 : d;
}

}  // namespace detail

/// h_{r, dH}(P^2) for r <= 3, computed from the class a C + d f on Sigma_1.
inline GenFun p2_genfun(int r, long d, const Rational& cutoff, std::optional<long> route = std::nullopt);

inline GenFun p2_genfun(int r, long d, const Rational& cutoff, std::optional<long> route) {
  if (r < 1 || r > 3) throw std::invalid_argument("P^2 generating functions are implemented for 1 <= r <= 3");
  const SurfaceId P2 = SurfaceId::p2();
  d = detail::mod_pos(d, r);
  if (r == 1) return rank1_genfun(P2, cutoff);
  const long a = route.value_or(detail::default_route(r, d));
  QSeries s = detail::p2_cache().get({r, d, a}, cutoff, [&] {
    // B_{r,k}^{-1} starts at -(val B) and needs Sigma_1 precision beyond the target
    const QSeries B = blowup_factor(r, static_cast<int>(detail::mod_pos(d - a, r)), 1);
    const Rational extra = B.valuation();
    GenFun H = gieseker_to_mu(r, Cls{Rational(a), Rational(d)}, cutoff + extra);
    GenFun Hp = blowup_divide(H, static_cast<int>(detail::mod_pos(d - a, r)), cutoff);
    return mu_to_gieseker(Hp, [&](int ri, const Cls& ci) {
             return p2_genfun(ri, to_long(ci.at(0)), cutoff + make_rational(r - ri, 8));
           }).series;
  });
  return GenFun{P2, r, Cls{Rational(d)}, Polarization::hyperplane(), Flavor::omega_bar, s};
}

/// Integer invariants of P^2: p2_genfun with the multicover terms removed.
inline GenFun p2_omega(int r, long d, const Rational& cutoff) {
  GenFun h = p2_genfun(r, d, cutoff);
  return omegabar_to_omega(h, [&](int ri, const Cls& ci) {
    if (ri == 1) {
      GenFun g = rank1_genfun(SurfaceId::p2(), cutoff);
      g.flavor = Flavor::omega;
      return g;
    }
    return p2_omega(ri, to_long(ci.at(0)), cutoff);
  });
}

}  // namespace bps
