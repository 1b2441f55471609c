#pragma once

// Conversions among integer, rational and stack invariants, and extraction of
// Betti and Euler numbers from integer generating functions.

#include "bps/genfun.hpp"
#include "bps/qseries.hpp"
#include "bps/surface.hpp"
#include "bps/wrat.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bps {

/// Provides the integer-flavor generating function for a lower (rank, c1).
using GenFunLookup = std::function<GenFun(int r, const Cls& c1)>;

/// Subtracts the multicover contributions sum_{m | Gamma, m > 1} Omega(Gamma/m, -(-w)^m)/m.
inline GenFun omegabar_to_omega(const GenFun& h, const GenFunLookup& lower) {
  if (h.flavor != Flavor::omega_bar) throw std::invalid_argument("omegabar_to_omega expects omega_bar flavor");
  GenFun out = h;
  out.flavor = Flavor::omega;
  Cls c1 = reduce_c1(h.c1, h.r);
  for (int m = 2; m <= h.r; ++m) {
    if (h.r % m != 0) continue;
    bool divides = true;
    for (const auto& x : c1)
      if (!is_integer(x / m)) divides = false;
    if (!divides) continue;
    GenFun g = lower(h.r / m, Rational(1, 1) / m * c1);
    if (g.flavor != Flavor::omega) throw std::invalid_argument("multicover input must have omega flavor");
    out.series -= g.series.substituted(m, SubstFlavor::multicover) * WRat(make_rational(1, m));
  }
  return out;
}

enum class StackDirection { to_stack, from_stack };

/// Per-class invariant provider: returns the invariant of a class at the fixed polarization.
using ClassLookup = std::function<WRat(const ChernVector&)>;

namespace detail {

inline void compositions(int r, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
  if (r == 0) {
    fn(cur);
    return;
  }
  for (int p = 1; p <= r; ++p) {
    cur.push_back(p);
    compositions(r - p, cur, fn);
    cur.pop_back();
  }
}

inline Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// True when p_J-equality forces equal slopes (J determines mu from both pairing components).
inline bool pairing_is_definite(const Polarization& J, const SurfaceId& S) {
  if (!S.is_hirzebruch()) return true;
  switch (J.kind) {
    case Polarization::Kind::suitable_near_fibre:
    case Polarization::Kind::near_pullback_h: return true;
    case Polarization::Kind::jmn: return J.side != 0;
    default: return false;
  }
}

}  // namespace detail

/// Converts between rational and stack invariants of Gamma at a generic polarization J.
/// Decompositions Gamma = sum Gamma_i with equal reduced Hilbert polynomial have equal slope
/// and equal discriminant, so the sum runs over compositions of the rank.
inline WRat stack_conversion(const ClassLookup& inputs, StackDirection dir, const ChernVector& g, const Polarization& J,
                             const SurfaceId& S) {
  if (!detail::pairing_is_definite(J, S))
    throw std::invalid_argument("unbounded enumeration: polarization is not generic for stack conversion");
  const Cls mu = g.mu();
  const Rational delta = discriminant(g, S);
  WRat total;
  std::vector<int> cur;
  detail::compositions(g.r, cur, [&](const std::vector<int>& parts) {
    const int l = static_cast<int>(parts.size());
    WRat prod(1);
    for (int ri : parts) {
      Cls ci = Rational(ri) * mu;
      if (!is_integral(ci)) return;
      prod *= inputs(ChernVector::from_delta(ri, ci, delta, S));
      if (prod.is_zero()) return;
    }
    Rational coef = dir == StackDirection::to_stack ? Rational(1 / detail::factorial(l))
                                                    : Rational((l % 2 == 1) ? 1 : -1) / l;
    total += prod * WRat(coef);
  });
  return total;
}

/// Series-level sum over ordered equal-slope decompositions with l >= 2 pieces:
/// sum coef(l) prod h_{r_i, r_i mu}. Exponents add because equal slopes carry no cross term.
inline QSeries equal_slope_products(const std::function<QSeries(int r, const Cls& c1)>& lookup, int r, const Cls& c1,
                                    StackDirection dir, const Rational& cutoff) {
  const Cls mu = Rational(1, 1) / r * c1;
  QSeries total(cutoff);
  std::vector<int> cur;
  detail::compositions(r, cur, [&](const std::vector<int>& parts) {
    const int l = static_cast<int>(parts.size());
    if (l < 2) return;
    for (int ri : parts)
      if (!is_integral(Rational(ri) * mu)) return;
    QSeries prod = lookup(parts[0], Rational(parts[0]) * mu);
    for (int i = 1; i < l; ++i) prod = prod * lookup(parts[i], Rational(parts[i]) * mu);
    Rational coef = dir == StackDirection::to_stack ? Rational(1 / detail::factorial(l))
                                                    : Rational((l % 2 == 1) ? 1 : -1) / l;
    total += prod * WRat(coef);
  });
  return total;
}

struct TableRow {
  Rational c2;
  Rational delta;
  long dim = 0;
  VPoly poincare;           // (w - 1/w) * Omega
  std::vector<long> betti;  // b_0, b_2, ..., b_{2 dim}
  long euler = 0;
};

struct InvariantTable {
  SurfaceId surface;
  int r = 1;
  Cls c1;
  std::vector<TableRow> rows;
};

/// Reads Betti and Euler numbers off an integer generating function and checks
/// integrality, palindromy, positivity, parity and the degree span.
inline InvariantTable extract_table(const GenFun& h) {
  if (h.flavor != Flavor::omega) throw std::invalid_argument("extract_table expects omega flavor");
  const SurfaceId& S = h.surface;
  InvariantTable t{S, h.r, h.c1, {}};
  const WRat wdiff(VPoly::w_power(1) - VPoly::w_power(-1));
  const Rational c1sq = S.square(h.c1);
  for (const auto& [e, c] : h.series.terms()) {
    TableRow row;
    row.delta = h.delta_of(e);
    row.c2 = h.r * row.delta + Rational(h.r - 1, 1) / (2 * h.r) * c1sq;
    if (!is_integer(row.c2)) throw std::domain_error("q-exponent does not correspond to an integral c2");
    ChernVector g = ChernVector::from_c2(h.r, h.c1, row.c2, S);
    row.dim = expected_dimension(g, S);
    if (row.dim < 0) throw std::domain_error("nonzero invariant on an expected-empty moduli space (c2 = " + to_string(row.c2) + ")");
    row.poincare = (c * wdiff).as_vpoly();
    const VPoly& p = row.poincare;
    if (!p.is_integral()) throw std::domain_error("integrality violation: non-integer coefficient");
    if (!p.has_even_support()) throw std::domain_error("half-integer w-power in integer invariant");
    if (!(p.reflected() == p)) throw std::domain_error("Poincare polynomial is not palindromic");
    if (p.low() != -2 * row.dim || p.high() != 2 * row.dim)
      throw std::domain_error("degree span differs from twice the expected dimension");
    row.betti.resize(static_cast<std::size_t>(row.dim + 1));
    for (long k = 0; k <= row.dim; ++k) {
      Rational b = p.coeff(static_cast<int>(4 * k - 2 * row.dim));
      if (b < 0) throw std::domain_error("negative Betti number");
      row.betti[static_cast<std::size_t>(k)] = to_long(b);
    }
    row.euler = std::accumulate(row.betti.begin(), row.betti.end(), 0L);
    if (p.value_at_one() != row.euler) throw std::domain_error("odd-degree cohomology in Poincare polynomial");
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// 2 * (Betti numbers below the middle) + middle Betti number.
inline long duality_sum(const TableRow& row) {
  long s = 0;
  const long d = row.dim;
  for (long k = 0; 2 * k < d; ++k) s += 2 * row.betti[static_cast<std::size_t>(k)];
  if (d % 2 == 0) s += row.betti[static_cast<std::size_t>(d / 2)];
  return s;
}

}  // namespace bps
