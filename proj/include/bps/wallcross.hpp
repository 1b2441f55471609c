#pragma once

// Generating functions at an arbitrary polarization of a Hirzebruch surface: closed forms
// for ranks 2 and 3, and a per-class route that crosses one wall at a time.

#include "bps/genfun.hpp"
#include "bps/hn.hpp"
#include "bps/invariants.hpp"
#include "bps/modular.hpp"
#include "bps/surface.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace bps {

namespace detail {

inline int pair_sign(const std::pair<Rational, Rational>& p) {
  if (p.first != 0) return sgn(p.first);
  return sgn(p.second);
}

/// Sign of J.(X C - Y f) and of J_{eps,1}.(X C - Y f).
inline std::pair<int, int> window_signs(long X, long Y, const Polarization& J) {
  Cls D{Rational(X), Rational(-Y)};
  return {pair_sign(J.pair_with(D)), pair_sign(Polarization::suitable().pair_with(D))};
}

inline void check_target(const Polarization& J) {
  switch (J.kind) {
    case Polarization::Kind::jmn:
    case Polarization::Kind::suitable_near_fibre:
    case Polarization::Kind::near_pullback_h: return;
    default: throw std::invalid_argument("wall-crossing target must be J_{m,n}, J_{eps,1} or J_{1,eps}");
  }
}

/// w^{-E} - w^{E} with E = (l-2)X + 2Y.
inline WRat wall_w_factor(long X, long Y, int ell) {
  long E = (ell - 2) * X + 2 * Y;
  return WRat(VPoly::w_power(static_cast<int>(-E)) - VPoly::w_power(static_cast<int>(E)));
}

}  // namespace detail

/// How the rank-2 factor of the rank-3 closed form is evaluated when J_{|X|,|Y|} lies on
/// one of its own walls.
enum class OnWallRule { average, fibre_side, pullback_side };

inline QSeries genfun_closed_rank2(const Cls& c1, int ell, const Polarization& J, const Rational& cutoff,
                                   bool allow_on_wall = false);

/// Rank 2: h(J) = h(J_{eps,1}) + 1/2 sum_{X = beta, Y = alpha mod 2} 1/2 (sgn_J - sgn_eps)
/// (w^{-E} - w^{E}) q^{l X^2/4 + XY/2} h_1^2, with c1 = beta C - alpha f.
/// A nonzero sign difference forces XY > 0, so the exponent is at least max(|X|,|Y|)/2.
inline QSeries genfun_closed_rank2(const Cls& c1, int ell, const Polarization& J, const Rational& cutoff,
                                   bool allow_on_wall) {
  detail::check_target(J);
  const long beta = to_long(c1.at(0)), alpha = -to_long(c1.at(1));
  const SurfaceId S = SurfaceId::hirzebruch(ell);
  QSeries h = suitable_genfun(2, c1, ell, cutoff).series;
  if (J.kind == Polarization::Kind::suitable_near_fibre) return h;
  const Rational top = cutoff + make_rational(1, 3);
  const long bound = to_long(Rational(ceil(2 * top)));
  QSeries T(top), Twall(top);
  for (long X = -bound; X <= bound; ++X) {
    if (X == 0 || detail::mod_pos(X - beta, 2) != 0) continue;
    for (long Y = -bound; Y <= bound; ++Y) {
      if (detail::mod_pos(Y - alpha, 2) != 0) continue;
      auto [sJ, sE] = detail::window_signs(X, Y, J);
      if (sJ == sE) continue;
      Rational e = make_rational(ell * X * X, 4) + make_rational(X * Y, 2);
      if (e >= top) continue;
      WRat c = detail::wall_w_factor(X, Y, ell) * WRat(make_rational(sJ - sE, 4));
      if (sJ == 0 && !allow_on_wall) Twall.add_term(e, c);
      T.add_term(e, c);
    }
  }
  if (T.is_zero()) return h;
  QSeries h1 = rank1_genfun(S, cutoff + make_rational(1, 6)).series;
  QSeries h11 = h1 * h1;
  if (!(Twall * h11).truncated(cutoff).is_zero()) throw std::domain_error("polarization on wall");
  return (h + T * h11).truncated(cutoff);
}

/// Rank 3: h(J) = h(J_{eps,1}) + sum_{X = beta, Y = alpha mod 3} 1/2 (sgn_J - sgn_eps)
/// (w^{-E} - w^{E}) q^{l X^2/12 + XY/6} h_{2, bC - af}(J_{|X|,|Y|}) h_1, X = 3b - 2 beta, Y = 3a - 2 alpha.
inline QSeries genfun_closed_rank3(const Cls& c1, int ell, const Polarization& J, const Rational& cutoff,
                                   OnWallRule rule = OnWallRule::average) {
  detail::check_target(J);
  const long beta = to_long(c1.at(0)), alpha = -to_long(c1.at(1));
  const SurfaceId S = SurfaceId::hirzebruch(ell);
  QSeries h = suitable_genfun(3, c1, ell, cutoff).series;
  if (J.kind == Polarization::Kind::suitable_near_fibre) return h;
  const Rational top = cutoff + make_rational(1, 2);
  const long bound = to_long(Rational(ceil(6 * top)));
  // grouped by the rank-2 factor: (c1 of the rank-2 piece mod 2, its polarization)
  std::map<std::tuple<int, int, Rational>, std::pair<QSeries, Polarization>> groups, on_wall;
  for (long X = -bound; X <= bound; ++X) {
    if (X == 0 || detail::mod_pos(X - beta, 3) != 0) continue;
    for (long Y = -bound; Y <= bound; ++Y) {
      if (detail::mod_pos(Y - alpha, 3) != 0) continue;
      auto [sJ, sE] = detail::window_signs(X, Y, J);
      if (sJ == sE) continue;
      Rational e = make_rational(ell * X * X, 12) + make_rational(X * Y, 6);
      if (e >= top) continue;
      const long b = (X + 2 * beta) / 3, a = (Y + 2 * alpha) / 3;
      const int side = rule == OnWallRule::fibre_side ? 1 : rule == OnWallRule::pullback_side ? -1 : 0;
      Polarization J2 = Polarization::jmn(std::labs(X), std::labs(Y), side);
      auto key = std::make_tuple(detail::mod_pos(b, 2), detail::mod_pos(a, 2), make_rational(std::labs(Y), std::labs(X)));
      auto& target = sJ == 0 ? on_wall : groups;
      auto it = target.find(key);
      if (it == target.end()) it = target.emplace(key, std::make_pair(QSeries(top), J2)).first;
      it->second.first.add_term(e, detail::wall_w_factor(X, Y, ell) * WRat(make_rational(sJ - sE, 2)));
    }
  }
  if (groups.empty() && on_wall.empty()) return h;
  QSeries h1 = rank1_genfun(S, cutoff + make_rational(1, 3)).series;
  auto contribution = [&](const std::tuple<int, int, Rational>& key, const QSeries& T, const Polarization& J2) {
    const Rational depth = cutoff - T.valuation();
    Cls c2{Rational(std::get<0>(key)), Rational(-std::get<1>(key))};
    QSeries h2 = genfun_closed_rank2(c2, ell, J2, depth + make_rational(1, 6), rule == OnWallRule::average);
    return (T * (h2 * h1.truncated(depth + make_rational(1, 3)))).truncated(cutoff);
  };
  for (const auto& [key, val] : on_wall)
    if (!contribution(key, val.first, val.second).is_zero()) throw std::domain_error("polarization on wall");
  for (const auto& [key, val] : groups) h += contribution(key, val.first, val.second);
  return h.truncated(cutoff);
}

/// Closed-form generating function at J for r = 1, 2, 3.
inline GenFun genfun_at_polarization(int r, const Cls& c1, int ell, const Polarization& J, const Rational& cutoff) {
  const SurfaceId S = SurfaceId::hirzebruch(ell);
  Cls red = reduce_c1(c1, r);
  GenFun g{S, r, red, J, Flavor::omega_bar, QSeries(cutoff)};
  switch (r) {
    case 1: g.series = rank1_genfun(S, cutoff).series; break;
    case 2: g.series = genfun_closed_rank2(red, ell, J, cutoff); break;
    case 3: g.series = genfun_closed_rank3(red, ell, J, cutoff); break;
    default: throw std::invalid_argument("closed-form wall-crossing is available for r <= 3");
  }
  return g;
}

/// A point of the ample cone: J_{eps,1}, or slope t displaced by side * eps.
struct ChamberPoint {
  bool fibre = false;
  Rational t;
  int side = 0;

  static ChamberPoint of(const Polarization& J) {
    switch (J.kind) {
      case Polarization::Kind::suitable_near_fibre: return {true, 0, 0};
      case Polarization::Kind::near_pullback_h: return {false, 0, 1};
      case Polarization::Kind::jmn: return {false, J.n / J.m, J.side};
      default: throw std::invalid_argument("chamber point requires a Hirzebruch polarization off J_{1,0}");
    }
  }
  /// True when the wall at slope w separates this point from J_{eps,1}.
  bool below(const Rational& w) const { return !fibre && (w > t || (w == t && side < 0)); }
  Polarization polarization() const {
    if (fibre) return Polarization::suitable();
    if (t == 0) return Polarization::near_pullback_h();
    return Polarization::at_slope(t, side);
  }
};

struct ChamberPath {
  Polarization start, end;
  std::vector<Wall> walls;  // in crossing order
};

/// Walls of Gamma crossed on the way from J_start to J_end.
inline ChamberPath chamber_path(const ChernVector& g, const Polarization& start, const Polarization& end,
                                const SurfaceId& S) {
  ChamberPath path{start, end, {}};
  if (!S.is_hirzebruch()) return path;
  ChamberPoint a = ChamberPoint::of(start), b = ChamberPoint::of(end);
  for (const auto& w : enumerate_walls(g, S)) {
    if ((!a.fibre && a.side == 0 && a.t == w.slope) || (!b.fibre && b.side == 0 && b.t == w.slope))
      throw std::domain_error("polarization on wall");
    if (a.below(w.slope) != b.below(w.slope)) path.walls.push_back(w);
  }
  // enumerate_walls is ordered from the fibre side
  const bool downward = a.fibre || (!b.fibre && (a.t > b.t || (a.t == b.t && a.side > b.side)));
  if (!downward) std::reverse(path.walls.begin(), path.walls.end());
  return path;
}

/// Per-class invariants at any chamber of a Hirzebruch surface, obtained from J_{eps,1} by
/// crossing one wall at a time. Across a wall W the stack of sheaves that are slope
/// semistable for J_W has two Harder-Narasimhan stratifications, one for each side:
///   sum_{HN types at J_+} w^{wt} prod I(G_i; J_+) = sum_{HN types at J_-} w^{wt} prod I(G_i; J_-),
/// where all quotients have the slope of G along J_W.
class WallCrossingEngine {
 public:
  explicit WallCrossingEngine(int ell) : ell_(ell), S_(SurfaceId::hirzebruch(ell)) {}

  const SurfaceId& surface() const { return S_; }

  WRat omega_bar(const ChernVector& g, const Polarization& J) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    ChamberPoint P = ChamberPoint::of(J);
    if (!P.fibre && P.side == 0) {
      P.side = -1;
      WRat below = omega_at(g, P);
      if (omega_at(g, ChamberPoint{false, P.t, 1}) != below) throw std::domain_error("polarization on wall");
      return below;
    }
    return omega_at(g, P);
  }

  WRat stack(const ChernVector& g, const Polarization& J) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    ChamberPoint P = ChamberPoint::of(J);
    if (!P.fibre && P.side == 0) P.side = -1;
    return stack_at(g, P);
  }

  /// Omega_bar(J_-) - Omega_bar(J_+) across the wall at slope t, summing over filtrations
  /// ordered for one side and reverse-ordered for the other, each with its own invariants.
  /// The reverse condition compares slopes only, so quotients of equal slope and different
  /// discriminant are kept.
  WRat wallcross_delta(const ChernVector& g, const Rational& t) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    const Wall* W = find_wall(g, t);
    if (!W) return WRat();
    ChamberPoint plus{false, t, 1}, minus{false, t, -1};
    const Polarization Jp = plus.polarization(), Jm = minus.polarization();
    WRat delta;
    for (const auto& tuple : on_wall_tuples(g, *W)) {
      if (tuple.size() < 2) continue;
      if (ordered(tuple, Jp, false) && ordered(tuple, Jm, false, true, SlopeFlavor::mu)) {
        WRat prod = WRat::w_power(static_cast<int>(to_long(weight_exponent(tuple, S_)))) * WRat(aut(tuple, Jp));
        for (const auto& piece : tuple) prod *= omega_at(piece, plus);
        delta += prod;
      }
      if (ordered(tuple, Jm, false) && ordered(tuple, Jp, false, true, SlopeFlavor::mu)) {
        WRat prod = WRat::w_power(static_cast<int>(to_long(weight_exponent(tuple, S_)))) * WRat(aut(tuple, Jm));
        for (const auto& piece : tuple) prod *= omega_at(piece, minus);
        delta -= prod;
      }
    }
    return delta;
  }

  /// Generating function at J assembled class by class.
  GenFun genfun(int r, const Cls& c1, const Polarization& J, const Rational& cutoff) {
    Cls red = reduce_c1(c1, r);
    GenFun out{S_, r, red, J, Flavor::omega_bar, QSeries(cutoff)};
    const Rational c1sq = S_.square(red);
    const Rational base = Rational(r - 1) * c1sq / (2 * r);  // c2 at Delta = 0
    for (Integer c2 = ceil(base);; ++c2) {
      ChernVector g = ChernVector::from_c2(r, red, Rational(c2), S_);
      Rational e = out.exponent_of(discriminant(g, S_));
      if (e >= cutoff) break;
      WRat v = omega_bar(g, J);
      if (!v.is_zero()) out.series.add_term(e, v);
    }
    return out;
  }

  void clear() {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    walls_.clear();
    omega_.clear();
    stack_.clear();
    tuples_.clear();
  }

 private:
  using ClassKey = std::tuple<int, Cls, Rational>;
  using PointKey = std::tuple<ClassKey, std::size_t>;

  ClassKey key_of(const ChernVector& g) const {
    ChernVector red = twist_reduce(g, S_).reduced;
    return {red.r, red.c1, red.ch2};
  }

  const std::vector<Wall>& walls(const ChernVector& g) {
    ClassKey k = key_of(g);
    auto it = walls_.find(k);
    if (it != walls_.end()) return it->second;
    return walls_.emplace(k, enumerate_walls(g, S_)).first->second;
  }

  const Wall* find_wall(const ChernVector& g, const Rational& t) {
    for (const auto& w : walls(g))
      if (w.slope == t) return &w;
    return nullptr;
  }

  /// Number of walls of g between P and J_{eps,1}.
  std::size_t chamber_index(const ChernVector& g, const ChamberPoint& P) {
    std::size_t n = 0;
    for (const auto& w : walls(g))
      if (P.below(w.slope)) ++n;
    return n;
  }

  WRat suitable_value(const ChernVector& g) {
    const Rational e = g.r * discriminant(g, S_) - make_rational(g.r * S_.chi_top(), 24);
    if (e < -make_rational(g.r * S_.chi_top(), 24)) return WRat();
    const Rational cutoff = Rational(floor(e)) + 2;
    return suitable_genfun(g.r, g.c1, ell_, cutoff).series.coeff(e);
  }

  WRat omega_at(const ChernVector& g, const ChamberPoint& P) {
    if (discriminant(g, S_) < 0) return WRat();
    const std::size_t idx = chamber_index(g, P);
    PointKey key{key_of(g), idx};
    if (auto it = omega_.find(key); it != omega_.end()) return it->second;
    WRat value;
    if (idx == 0) {
      value = suitable_value(g);
    } else {
      const Wall& W = walls(g)[idx - 1];
      ChamberPoint plus{false, W.slope, 1}, minus{false, W.slope, -1};
      const Polarization Jp = plus.polarization(), Jm = minus.polarization();
      WRat I;
      for (const auto& tuple : on_wall_tuples(g, W)) {
        if (ordered(tuple, Jp, true)) I += hn_term(tuple, plus);
        if (tuple.size() >= 2 && ordered(tuple, Jm, true)) I -= hn_term(tuple, minus);
      }
      ClassKey self = key_of(g);
      ClassLookup lookup = [&](const ChernVector& x) { return key_of(x) == self ? I : stack_at(x, minus); };
      value = stack_conversion(lookup, StackDirection::from_stack, g, Jm, S_);
    }
    omega_.emplace(key, value);
    return value;
  }

  WRat stack_at(const ChernVector& g, const ChamberPoint& P) {
    if (discriminant(g, S_) < 0) return WRat();
    PointKey key{key_of(g), chamber_index(g, P)};
    if (auto it = stack_.find(key); it != stack_.end()) return it->second;
    ClassLookup lookup = [&](const ChernVector& x) { return omega_at(x, P); };
    WRat value = stack_conversion(lookup, StackDirection::to_stack, g, P.polarization(), S_);
    stack_.emplace(key, value);
    return value;
  }

  WRat hn_term(const std::vector<ChernVector>& tuple, const ChamberPoint& P) {
    WRat prod = WRat::w_power(static_cast<int>(to_long(weight_exponent(tuple, S_))));
    for (const auto& piece : tuple) {
      prod *= stack_at(piece, P);
      if (prod.is_zero()) break;
    }
    return prod;
  }

  /// Decreasing reduced Hilbert polynomials (strictly or not); reversed for increasing.
  bool ordered(const std::vector<ChernVector>& tuple, const Polarization& J, bool strict, bool reversed = false,
               SlopeFlavor flavor = SlopeFlavor::gieseker) const {
    for (std::size_t i = 0; i + 1 < tuple.size(); ++i) {
      Ordering o = slope_order(tuple[i], tuple[i + 1], J, S_, flavor);
      if (reversed) o = o == Ordering::less ? Ordering::greater : o == Ordering::greater ? Ordering::less : o;
      if (o == Ordering::less || (strict && o == Ordering::equal)) return false;
    }
    return true;
  }

  Rational aut(const std::vector<ChernVector>& tuple, const Polarization& J) const {
    Rational a = 1;
    int run = 1;
    for (std::size_t i = 0; i + 1 < tuple.size(); ++i) {
      if (slope_order(tuple[i], tuple[i + 1], J, S_, SlopeFlavor::gieseker) == Ordering::equal) {
        a /= ++run;
      } else {
        run = 1;
      }
    }
    return a;
  }

  /// Ordered tuples of classes with nonnegative discriminant, all with the slope of g along
  /// the wall, summing to g. Each quotient differs from r_i mu by a multiple of u = pC - qf,
  /// and Delta(g) = sum (r_i/r) Delta_i + (|u^2|/2r) sum s_i^2/r_i bounds every term.
  const std::vector<std::vector<ChernVector>>& on_wall_tuples(const ChernVector& g, const Wall& W) {
    auto tk = std::make_tuple(g.r, g.c1, g.ch2, W.slope);
    if (auto it = tuples_.find(tk); it != tuples_.end()) return it->second;
    std::vector<std::vector<ChernVector>> out;
    const int r = g.r;
    const Rational delta = discriminant(g, S_);
    const Cls u{Rational(W.p), Rational(-W.q)};
    const Rational usq = -S_.square(u);
    const Cls mu = g.mu();
    std::vector<ChernVector> cur;
    std::function<void(const ChernVector&)> rec = [&](const ChernVector& rest) {
      if (discriminant(rest, S_) < 0) return;
      cur.push_back(rest);
      out.push_back(cur);
      cur.pop_back();
      for (int r1 = 1; r1 < rest.r; ++r1) {
        // s = j/r with j^2 <= 2 r^3 r1 Delta/|u^2|
        const long jmax = static_cast<long>(std::floor(std::sqrt(Rational(2 * Rational(r) * r * r * r1 * delta / usq).get_d()))) + 1;
        for (long j = -jmax; j <= jmax; ++j) {
          Rational s = make_rational(j, r);
          if (s * s * usq > 2 * Rational(r) * r1 * delta) continue;
          Cls c1 = Rational(r1) * mu + s * u;
          if (!is_integral(c1)) continue;
          const Rational base = Rational(r1 - 1) * S_.square(c1) / (2 * r1);
          for (Integer c2 = ceil(base); Rational(c2) <= base + r * delta; ++c2) {
            ChernVector piece = ChernVector::from_c2(r1, c1, Rational(c2), S_);
            cur.push_back(piece);
            rec(rest - piece);
            cur.pop_back();
          }
        }
      }
    };
    rec(g);
    return tuples_.emplace(tk, std::move(out)).first->second;
  }

  int ell_;
  SurfaceId S_;
  std::recursive_mutex mu_;
  std::map<ClassKey, std::vector<Wall>> walls_;
  std::map<PointKey, WRat> omega_, stack_;
  std::map<std::tuple<int, Cls, Rational, Rational>, std::vector<std::vector<ChernVector>>> tuples_;
};

}  // namespace bps
