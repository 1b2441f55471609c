#pragma once

// Surface data for P^2 and the Hirzebruch surfaces, Chern vectors,
// discriminants, twisting, stability orderings and walls.

#include "bps/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bps {

/// Divisor class in the surface basis: (H) for P^2, (C, f) for a Hirzebruch surface.
using Cls = std::vector<Rational>;

inline Cls operator+(Cls a, const Cls& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Cls operator-(Cls a, const Cls& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Cls operator*(const Rational& s, Cls a) {
  for (auto& x : a) x *= s;
  return a;
}
inline bool is_integral(const Cls& c) {
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return is_integer(x); });
}

struct SurfaceId {
  enum class Kind { projective_plane, hirzebruch };
  Kind kind = Kind::projective_plane;
  int ell = 0;

  static SurfaceId p2() { return {Kind::projective_plane, 0}; }
  static SurfaceId hirzebruch(int l) {
    if (l < 0) throw std::invalid_argument("Hirzebruch index must be nonnegative");
    return {Kind::hirzebruch, l};
  }

  bool is_hirzebruch() const { return kind == Kind::hirzebruch; }
  int b2() const { return is_hirzebruch() ? 2 : 1; }
  int chi_top() const { return b2() + 2; }
  int chi_O() const { return 1; }

  Cls zero() const { return Cls(static_cast<std::size_t>(b2()), Rational(0)); }

  Cls canonical() const {
    if (is_hirzebruch()) return {Rational(-2), Rational(-2 - ell)};
    return {Rational(-3)};
  }
  Cls fibre() const {
    if (!is_hirzebruch()) throw std::logic_error("fibre class requires a Hirzebruch surface");
    return {Rational(0), Rational(1)};
  }

  Rational intersect(const Cls& a, const Cls& b) const {
    if (a.size() != static_cast<std::size_t>(b2()) || b.size() != a.size())
      throw std::invalid_argument("class dimension does not match surface");
    if (is_hirzebruch()) return -ell * a[0] * b[0] + a[0] * b[1] + a[1] * b[0];
    return a[0] * b[0];
  }
  Rational square(const Cls& a) const { return intersect(a, a); }

  std::string name() const { return is_hirzebruch() ? "hirzebruch:" + std::to_string(ell) : "p2"; }

  bool operator==(const SurfaceId& o) const { return kind == o.kind && ell == o.ell; }
};

/// Gamma = (r, ch_1, ch_2).
struct ChernVector {
  int r = 1;
  Cls c1;
  Rational ch2;

  static ChernVector from_c2(int r, Cls c1, const Rational& c2, const SurfaceId& S) {
    Rational ch2 = S.square(c1) / 2 - c2;
    return {r, std::move(c1), ch2};
  }
  /// Class with given rank, c1 and discriminant.
  static ChernVector from_delta(int r, Cls c1, const Rational& delta, const SurfaceId& S) {
    // delta = mu^2/2 - ch2/r
    Rational mu2 = S.square(c1) / (Rational(r) * r);
    Rational ch2 = r * (mu2 / 2 - delta);
    return {r, std::move(c1), ch2};
  }

  Rational c2(const SurfaceId& S) const { return S.square(c1) / 2 - ch2; }
  Cls mu() const { return Rational(1, 1) / r * c1; }

  ChernVector operator+(const ChernVector& o) const { return {r + o.r, c1 + o.c1, ch2 + o.ch2}; }
  ChernVector operator-(const ChernVector& o) const { return {r - o.r, c1 - o.c1, ch2 - o.ch2}; }
  bool operator==(const ChernVector& o) const { return r == o.r && c1 == o.c1 && ch2 == o.ch2; }
};

inline Rational discriminant(const ChernVector& g, const SurfaceId& S) {
  if (g.r < 1) throw std::invalid_argument("discriminant requires positive rank");
  Cls mu = g.mu();
  return S.square(mu) / 2 - g.ch2 / g.r;
}

/// Discriminant of the total object evaluated from the quotients of a filtration.
inline Rational discriminant_of_filtration(const std::vector<ChernVector>& pieces, const SurfaceId& S) {
  if (pieces.empty()) throw std::invalid_argument("empty filtration");
  ChernVector total = pieces.front();
  for (std::size_t i = 1; i < pieces.size(); ++i) total = total + pieces[i];
  const Rational r = total.r;
  Rational d = 0;
  for (const auto& p : pieces) d += Rational(p.r) / r * discriminant(p, S);
  ChernVector prev = pieces.front();
  Rational corr = 0;
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    ChernVector cur = prev + pieces[i];
    Cls dm = cur.mu() - prev.mu();
    corr += Rational(cur.r) * prev.r / pieces[i].r * S.square(dm);
    prev = cur;
  }
  return d - corr / (2 * r);
}

/// d_exp = 2 r^2 Delta - r^2 chi(O) + 1.
inline long expected_dimension(const ChernVector& g, const SurfaceId& S) {
  Rational r2 = Rational(g.r) * g.r;
  Rational d = 2 * r2 * discriminant(g, S) - r2 * S.chi_O() + 1;
  if (!is_integer(d)) throw std::domain_error("non-integral expected dimension: inconsistent Chern vector");
  return to_long(d);
}

struct TwistResult {
  ChernVector reduced;
  Cls twist;  // c1 = reduced.c1 + r * twist
};

/// Reduces c1 into {0..r-1} on every basis class by tensoring with a line bundle.
inline TwistResult twist_reduce(const ChernVector& g, const SurfaceId& S) {
  if (!is_integral(g.c1)) throw std::invalid_argument("first Chern class must be integral");
  Cls t = S.zero();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = Rational(floor(g.c1[i] / g.r));
  // ch(E (x) L) = ch(E) e^L with L = -t
  Cls L = Rational(-1) * t;
  ChernVector out{g.r, g.c1 + Rational(g.r) * L, g.ch2 + S.intersect(g.c1, L) + Rational(g.r) * S.square(L) / 2};
  return {out, t};
}

/// Reduces an integral c1 into the fundamental domain {0..r-1}^b2.
inline Cls reduce_c1(const Cls& c1, int r) {
  Cls out = c1;
  for (auto& x : out) {
    Integer v = floor(x);
    Integer m = v % r;
    if (m < 0) m += r;
    x = Rational(m);
  }
  return out;
}

/// Polarization of a Hirzebruch surface (or the hyperplane class of P^2).
struct Polarization {
  enum class Kind {
    jmn,                  // J_{m,n} = m(C + l f) + n f, with an optional infinitesimal shift n -> n + side*eps
    suitable_near_fibre,  // J_{eps,1}
    near_pullback_h,      // J_{1,eps}
    pullback_h,           // J_{1,0}, boundary of the ample cone
    hyperplane            // H on P^2
  };
  Kind kind = Kind::suitable_near_fibre;
  Rational m = 1, n = 1;
  int side = 0;

  static Polarization jmn(const Rational& m, const Rational& n, int side = 0) {
    if (m <= 0 || n <= 0) throw std::invalid_argument("J_{m,n} requires m, n > 0");
    return {Kind::jmn, m, n, side};
  }
  /// Polarization at slope t = n/m with an infinitesimal displacement.
  static Polarization at_slope(const Rational& t, int side = 0) { return jmn(1, t, side); }
  static Polarization suitable() { return {Kind::suitable_near_fibre, 0, 1, 0}; }
  static Polarization near_pullback_h() { return {Kind::near_pullback_h, 1, 0, 0}; }
  static Polarization pullback_h() { return {Kind::pullback_h, 1, 0, 0}; }
  static Polarization hyperplane() { return {Kind::hyperplane, 1, 0, 0}; }

  /// n/m, ordering chambers from J_{1,0} (0) towards the fibre (infinity); nullopt for J_{eps,1}.
  std::optional<Rational> slope() const {
    switch (kind) {
      case Kind::jmn: return n / m;
      case Kind::near_pullback_h:
      case Kind::pullback_h: return Rational(0);
      default: return std::nullopt;
    }
  }

  /// D.J as a lexicographic pair (finite part, infinitesimal part), up to a positive factor.
  std::pair<Rational, Rational> pair_with(const Cls& D) const {
    switch (kind) {
      case Kind::hyperplane: return {D.at(0), 0};
      case Kind::jmn: return {D.at(0) * n + D.at(1) * m, side * D.at(0)};
      case Kind::suitable_near_fibre: return {D.at(0), D.at(1)};
      case Kind::near_pullback_h: return {D.at(1), D.at(0)};
      case Kind::pullback_h: return {D.at(1), 0};
    }
    return {0, 0};
  }

  std::string describe() const {
    switch (kind) {
      case Kind::hyperplane: return "H";
      case Kind::suitable_near_fibre: return "J_{eps,1}";
      case Kind::near_pullback_h: return "J_{1,eps}";
      case Kind::pullback_h: return "J_{1,0}";
      case Kind::jmn: {
        std::string s = "J_{" + to_string(m) + "," + to_string(n) + "}";
        if (side > 0) s += "+";
        if (side < 0) s += "-";
        return s;
      }
    }
    return "?";
  }

  bool operator==(const Polarization& o) const {
    if (kind != o.kind) return false;
    if (kind != Kind::jmn) return true;
    return n / m == o.n / o.m && side == o.side;
  }
};

enum class Ordering { less, equal, greater };
enum class SlopeFlavor { mu, gieseker };

namespace detail {
inline Ordering compare_pairs(const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b) {
  if (a.first != b.first) return a.first < b.first ? Ordering::less : Ordering::greater;
  if (a.second != b.second) return a.second < b.second ? Ordering::less : Ordering::greater;
  return Ordering::equal;
}
}  // namespace detail

/// Constant term of the reduced Hilbert polynomial minus chi(O): mu^2/2 - mu.K/2 - Delta.
inline Rational hilbert_constant(const ChernVector& g, const SurfaceId& S) {
  Cls mu = g.mu();
  return S.square(mu) / 2 - S.intersect(mu, S.canonical()) / 2 - discriminant(g, S);
}

inline Ordering slope_order(const ChernVector& a, const ChernVector& b, const Polarization& J, const SurfaceId& S,
                            SlopeFlavor flavor) {
  Ordering o = detail::compare_pairs(J.pair_with(a.mu()), J.pair_with(b.mu()));
  if (o != Ordering::equal || flavor == SlopeFlavor::mu) return o;
  Rational ca = hilbert_constant(a, S), cb = hilbert_constant(b, S);
  if (ca == cb) return Ordering::equal;
  return ca < cb ? Ordering::less : Ordering::greater;
}

/// Slope n/m > 0 of the wall where (mu(G') - mu(G)).J_{m,n} = 0, if any.
inline std::optional<Rational> wall_locus(const ChernVector& sub, const ChernVector& g, const SurfaceId& S) {
  if (!S.is_hirzebruch()) return std::nullopt;
  Cls d = sub.mu() - g.mu();
  // d.J_{m,n} = x n + y m
  if (d[0] == 0) return std::nullopt;
  Rational t = -d[1] / d[0];
  if (t <= 0) return std::nullopt;
  return t;
}

/// A wall for a Chern vector: slope t = q/p with primitive direction u = (p, -q) (so u.J_t = 0),
/// and the two-piece splittings that realize it within the discriminant bound.
struct Wall {
  Rational slope;
  Integer p, q;
  std::vector<std::pair<int, Cls>> splits;  // (rank of first piece, its c1)
};

/// Enumerates the walls of Gamma on a Hirzebruch surface. A 2-piece splitting with
/// r c1' - r' c1 = k u requires k^2 |u^2| <= 2 r^2 r' (r-r') Delta because each piece has
/// nonnegative discriminant and the filtration term is nonnegative on a wall.
inline std::vector<Wall> enumerate_walls(const ChernVector& g, const SurfaceId& S) {
  std::vector<Wall> out;
  if (!S.is_hirzebruch() || g.r < 2) return out;
  const Rational delta = discriminant(g, S);
  if (delta <= 0) return out;
  const int r = g.r;
  const long l = S.ell;
  // p q <= r^2 r'(r-r') Delta for |k| >= 1 since |u^2| = l p^2 + 2pq.
  Rational maxprod = 0;
  for (int r1 = 1; r1 < r; ++r1) maxprod = std::max<Rational>(maxprod, Rational(r) * r * r1 * (r - r1) * delta);
  long pqmax = to_long(Rational(floor(maxprod)));
  for (long p = 1; p <= pqmax; ++p) {
    for (long q = 1; p * q <= pqmax; ++q) {
      if (std::gcd(p, q) != 1) continue;
      Wall w;
      w.p = p;
      w.q = q;
      w.slope = make_rational(q, p);
      w.slope.canonicalize();
      const long usq = l * p * p + 2 * p * q;  // -u^2
      for (int r1 = 1; r1 < r; ++r1) {
        Rational budget = 2 * Rational(r) * r * r1 * (r - r1) * delta;
        for (long k = 1; Rational(k * k * usq) <= budget; ++k) {
          for (int sgnk : {1, -1}) {
            long kk = sgnk * k;
            // c1' = (r1 c1 + k u) / r
            Cls c1p = Rational(1, 1) / r * (Rational(r1) * g.c1 + Cls{Rational(kk * p), Rational(-kk * q)});
            if (!is_integral(c1p)) continue;
            w.splits.emplace_back(r1, c1p);
          }
        }
      }
      if (!w.splits.empty()) out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) { return a.slope > b.slope; });
  return out;
}

inline bool on_wall(const Polarization& J, const ChernVector& g, const SurfaceId& S) {
  if (J.kind != Polarization::Kind::jmn || J.side != 0) return false;
  Rational t = *J.slope();
  for (const auto& w : enumerate_walls(g, S))
    if (w.slope == t) return true;
  return false;
}

/// Suitability: off every wall and on the fibre side of every wall.
inline bool is_suitable(const Polarization& J, const ChernVector& g, const SurfaceId& S) {
  if (!S.is_hirzebruch()) throw std::invalid_argument("suitability is defined on Hirzebruch surfaces");
  if (J.kind == Polarization::Kind::suitable_near_fibre) return true;
  auto walls = enumerate_walls(g, S);
  if (walls.empty()) return true;
  switch (J.kind) {
    case Polarization::Kind::jmn: {
      Rational t = *J.slope();
      const Rational& top = walls.front().slope;
      if (t > top) return true;
      if (t == top) return J.side > 0;
      return false;
    }
    default: return false;
  }
}

}  // namespace bps
