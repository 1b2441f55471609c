#pragma once

// Generating functions at the suitable polarization J_{eps,1} of a Hirzebruch
// surface: the extended Harder-Narasimhan subtraction recursion and its solved form.

#include "bps/genfun.hpp"
#include "bps/invariants.hpp"
#include "bps/modular.hpp"
#include "bps/surface.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace bps {

struct FiltrationTerm {
  std::vector<ChernVector> pieces;
  WRat weight;
  Rational aut;
};

/// -sum_{i<j} r_i r_j (mu_j - mu_i).K_S, always an integer.
inline Rational weight_exponent(const std::vector<ChernVector>& pieces, const SurfaceId& S) {
  const Cls K = S.canonical();
  Rational e = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      // r_i r_j (mu_j - mu_i) = r_i c1_j - r_j c1_i
      Cls d = Rational(pieces[i].r) * pieces[j].c1 - Rational(pieces[j].r) * pieces[i].c1;
      e -= S.intersect(d, K);
    }
  return e;
}

/// Weight and 1/|Aut| of an extended HN filtration with the given quotients.
inline std::pair<WRat, Rational> filtration_weight(const std::vector<ChernVector>& pieces, const Polarization& J,
                                                   const SurfaceId& S) {
  if (pieces.empty()) throw std::invalid_argument("empty filtration");
  Rational aut = 1;
  int run = 1;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    Ordering o = slope_order(pieces[i], pieces[i + 1], J, S, SlopeFlavor::gieseker);
    if (o == Ordering::less) throw std::invalid_argument("filtration quotients are not ordered by reduced Hilbert polynomial");
    if (o == Ordering::equal) {
      ++run;
      aut /= run;
    } else {
      run = 1;
    }
  }
  Rational e = weight_exponent(pieces, S);
  if (!is_integer(e)) throw std::logic_error("non-integral filtration weight");
  return {WRat::w_power(static_cast<int>(to_long(e))), aut};
}

/// sum_{j=1}^{l-1} (r_j + r_{j+1}) {(r_1 + ... + r_j) lambda}.
inline Rational M(const std::vector<int>& rs, const Rational& lambda) {
  if (rs.empty()) throw std::invalid_argument("M requires a nonempty rank list");
  Rational total = 0;
  int partial = 0;
  for (std::size_t j = 0; j + 1 < rs.size(); ++j) {
    partial += rs[j];
    total += (rs[j] + rs[j + 1]) * frac(partial * lambda);
  }
  return total;
}

/// Product of generating functions h_{r_i, y_i f}, as sorted (r_i, y_i) with 0 <= y_i < r_i.
using ProductKey = std::vector<std::pair<int, int>>;

/// One group of subtracted filtrations: the block structure (quotients of equal slope share
/// a block, blocks in increasing order of c1.C/r) and the resulting product.
struct SuitableTerm {
  std::vector<std::vector<int>> blocks;
  ProductKey product;
  WRat coefficient;
};

namespace detail {

inline int mod_pos(long x, long m) { return static_cast<int>(((x % m) + m) % m); }

inline ProductKey product_key(const std::vector<int>& ranks, const std::vector<Rational>& a) {
  ProductKey key;
  for (std::size_t i = 0; i < ranks.size(); ++i) key.emplace_back(ranks[i], mod_pos(-to_long(a[i]), ranks[i]));
  std::sort(key.begin(), key.end());
  return key;
}

inline void block_structures(int r, const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  std::vector<int> outer;
  compositions(r, outer, [&](const std::vector<int>& sizes) {
    std::vector<std::vector<int>> blocks(sizes.size());
    std::function<void(std::size_t)> fill = [&](std::size_t j) {
      if (j == sizes.size()) {
        fn(blocks);
        return;
      }
      std::vector<int> inner;
      compositions(sizes[j], inner, [&](const std::vector<int>& parts) {
        blocks[j] = parts;
        fill(j + 1);
      });
    };
    fill(0);
  });
}

inline long lcm_range(const std::vector<long>& xs) {
  long l = 1;
  for (long x : xs) l = std::lcm(l, x);
  return l;
}

}  // namespace detail

/// All extended HN filtrations with at least two quotients that are subtracted from the
/// fibre product to give h_{r,-af} at J_{eps,1}. Quotients have c1 = -a_i f; the sums over
/// the unbounded gaps between block slopes are carried out as geometric series in 1/w.
inline std::vector<SuitableTerm> suitable_subtraction_terms(int r, long a, int ell) {
  const SurfaceId S = SurfaceId::hirzebruch(ell);
  std::map<std::pair<std::vector<std::vector<int>>, ProductKey>, WRat> acc;

  auto pieces_for = [&](const std::vector<std::vector<int>>& blocks, const std::vector<Rational>& lambda,
                        std::vector<int>& ranks, std::vector<Rational>& as) {
    std::vector<ChernVector> pieces;
    ranks.clear();
    as.clear();
    for (std::size_t j = 0; j < blocks.size(); ++j)
      for (int ri : blocks[j]) {
        Rational ai = ri * lambda[j];
        ranks.push_back(ri);
        as.push_back(ai);
        pieces.push_back(ChernVector::from_delta(ri, Cls{Rational(0), -ai}, 0, S));
      }
    return pieces;
  };

  detail::block_structures(r, [&](const std::vector<std::vector<int>>& blocks) {
    const std::size_t m = blocks.size();
    std::size_t npieces = 0;
    Rational aut = 1;
    std::vector<long> g(m);
    std::vector<int> R(m);
    for (std::size_t j = 0; j < m; ++j) {
      npieces += blocks[j].size();
      aut /= detail::factorial(static_cast<int>(blocks[j].size()));
      long gj = 0;
      for (int ri : blocks[j]) gj = std::gcd(gj, static_cast<long>(ri));
      g[j] = gj;
      R[j] = std::accumulate(blocks[j].begin(), blocks[j].end(), 0);
    }
    if (npieces < 2) return;
    std::vector<int> Q(m, 0);  // rank to the right of gap t
    for (std::size_t t = 0; t + 1 < m; ++t)
      for (std::size_t j = t + 1; j < m; ++j) Q[t] += R[j];

    const long Lg = detail::lcm_range(g);
    const long steps = r * Lg;  // residues rho = s/Lg with 0 < s <= r Lg
    const std::size_t gaps = m - 1;

    auto lambdas_of = [&](const std::vector<Rational>& delta) {
      Rational l1 = a;
      for (std::size_t t = 0; t < gaps; ++t) l1 -= Q[t] * delta[t];
      l1 /= r;
      std::vector<Rational> lam(m);
      lam[0] = l1;
      for (std::size_t j = 1; j < m; ++j) lam[j] = lam[j - 1] + delta[j - 1];
      return lam;
    };

    // exponent change per full period of each gap (linear in the gaps)
    std::vector<long> period(gaps, 0);
    {
      std::vector<int> rk;
      std::vector<Rational> as;
      std::vector<Rational> base(gaps, Rational(1));
      Rational e0 = weight_exponent(pieces_for(blocks, lambdas_of(base), rk, as), S);
      for (std::size_t t = 0; t < gaps; ++t) {
        std::vector<Rational> d = base;
        d[t] += r;
        Rational e1 = weight_exponent(pieces_for(blocks, lambdas_of(d), rk, as), S);
        if (!is_integer(e1 - e0) || e1 - e0 >= 0) throw std::logic_error("filtration tower does not converge for |w| > 1");
        period[t] = to_long(e1 - e0);
      }
    }

    std::map<ProductKey, std::map<int, Rational>> numer;
    std::vector<long> s(gaps, 1);
    while (true) {
      std::vector<Rational> delta(gaps);
      for (std::size_t t = 0; t < gaps; ++t) delta[t] = make_rational(s[t], Lg);
      std::vector<Rational> lam = lambdas_of(delta);
      bool ok = true;
      for (std::size_t j = 0; j < m && ok; ++j)
        if (!is_integer(lam[j] * g[j])) ok = false;
      if (ok) {
        std::vector<int> rk;
        std::vector<Rational> as;
        std::vector<ChernVector> pieces = pieces_for(blocks, lam, rk, as);
        if (discriminant_of_filtration(pieces, S) != 0)
          throw std::logic_error("fibre-class filtration with a nonzero discriminant shift");
        Rational e = weight_exponent(pieces, S);
        numer[detail::product_key(rk, as)][static_cast<int>(2 * to_long(e))] += aut;
      }
      std::size_t t = 0;
      while (t < gaps && s[t] == steps) s[t++] = 1;
      if (t == gaps) break;
      ++s[t];
    }
    VPoly den = 1;
    for (long p : period) den = den * (VPoly(1) - VPoly::w_power(static_cast<int>(p)));
    for (const auto& [key, terms] : numer) {
      WRat c(VPoly::from_terms(terms), den);
      if (c.is_zero()) continue;
      auto& slot = acc[{blocks, key}];
      slot += c;
    }
  });

  std::vector<SuitableTerm> out;
  for (const auto& [k, c] : acc)
    if (!c.is_zero()) out.push_back({k.first, k.second, c});
  return out;
}

/// Sum of the coefficients of the subtraction terms grouped by product.
inline std::map<ProductKey, WRat> collect_by_product(const std::vector<SuitableTerm>& terms) {
  std::map<ProductKey, WRat> out;
  for (const auto& t : terms) out[t.product] += t.coefficient;
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

namespace detail {

inline Rational lower_cutoff(const Rational& cutoff, int r, int ri, const SurfaceId& S) {
  // other factors have exponents >= -r_j chi/24
  return cutoff + make_rational((r - ri) * S.chi_top(), 24);
}

using SuitableKey = std::tuple<int, int, int, int>;  // (route, r, y, ell)

inline SeriesCache<SuitableKey>& suitable_cache() {
  static SeriesCache<SuitableKey> c;
  return c;
}

}  // namespace detail

inline QSeries suitable_series_recursive(int r, long y, int ell, const Rational& cutoff);

/// h_{r, y f} at J_{eps,1} via the subtraction recursion; y reduced mod r.
inline QSeries suitable_series_recursive(int r, long y, int ell, const Rational& cutoff) {
  const int yr = detail::mod_pos(y, r);
  return detail::suitable_cache().get({0, r, yr, ell}, cutoff, [&]() -> QSeries {
    const SurfaceId S = SurfaceId::hirzebruch(ell);
    if (r == 1) return rank1_genfun(S, cutoff).series;
    QSeries h = fibre_product_series(r, cutoff);
    for (const auto& [key, coef] : collect_by_product(suitable_subtraction_terms(r, -yr, ell))) {
      QSeries prod;
      bool first = true;
      for (const auto& [ri, yi] : key) {
        QSeries f = suitable_series_recursive(ri, yi, ell, detail::lower_cutoff(cutoff, r, ri, S));
        prod = first ? f : prod * f;
        first = false;
      }
      h -= prod * coef;
    }
    return h.truncated(cutoff);
  });
}

/// Coefficients of products of fibre-product series in the solved recursion for h_{r,-af}.
inline std::map<std::vector<int>, WRat> suitable_closed_terms(int r, long a) {
  std::map<std::vector<int>, WRat> out;
  const Rational lambda = make_rational(a, r);
  // inner factor: sum over compositions of ri of w^{2M}/prod(1 - w^{2(r_j + r_{j+1})}) prod H
  auto inner = [&](int ri) {
    std::map<std::vector<int>, WRat> res;
    std::vector<int> cur;
    detail::compositions(ri, cur, [&](const std::vector<int>& parts) {
      Rational Mv = M(parts, lambda);
      if (!is_integer(Mv)) throw std::logic_error("non-integral M");
      VPoly den = 1;
      for (std::size_t j = 0; j + 1 < parts.size(); ++j) den = den * (VPoly(1) - VPoly::w_power(2 * (parts[j] + parts[j + 1])));
      std::vector<int> key = parts;
      std::sort(key.begin(), key.end());
      res[key] += WRat(VPoly::w_power(static_cast<int>(2 * to_long(Mv))), den);
    });
    return res;
  };
  std::vector<int> cur;
  detail::compositions(r, cur, [&](const std::vector<int>& parts) {
    for (int ri : parts)
      if (!is_integer(ri * lambda)) return;
    const int m = static_cast<int>(parts.size());
    std::map<std::vector<int>, WRat> prod{{{}, WRat(make_rational(m % 2 == 1 ? 1 : -1, m))}};
    for (int ri : parts) {
      std::map<std::vector<int>, WRat> next;
      for (const auto& [k1, c1] : prod)
        for (const auto& [k2, c2] : inner(ri)) {
          std::vector<int> k = k1;
          k.insert(k.end(), k2.begin(), k2.end());
          std::sort(k.begin(), k.end());
          next[k] += c1 * c2;
        }
      prod = std::move(next);
    }
    for (const auto& [k, c] : prod) out[k] += c;
  });
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

/// h_{r, y f} at J_{eps,1} from the solved recursion.
inline QSeries suitable_series_closed(int r, long y, int ell, const Rational& cutoff) {
  const int yr = detail::mod_pos(y, r);
  return detail::suitable_cache().get({1, r, yr, ell}, cutoff, [&]() -> QSeries {
    const SurfaceId S = SurfaceId::hirzebruch(ell);
    QSeries h(cutoff);
    for (const auto& [ranks, coef] : suitable_closed_terms(r, -yr)) {
      QSeries prod;
      for (std::size_t i = 0; i < ranks.size(); ++i) {
        QSeries f = fibre_product_series(ranks[i], detail::lower_cutoff(cutoff, r, ranks[i], S));
        prod = i == 0 ? f : prod * f;
      }
      h += prod * coef;
    }
    return h.truncated(cutoff);
  });
}

enum class SuitableRoute { recursive, closed };

/// h_{r,c1}(J_{eps,1}) on Sigma_ell; zero unless c1.f = 0 mod r.
inline GenFun suitable_genfun(int r, const Cls& c1, int ell, const Rational& cutoff,
                              SuitableRoute route = SuitableRoute::recursive) {
  if (r < 1) throw std::invalid_argument("rank must be positive");
  const SurfaceId S = SurfaceId::hirzebruch(ell);
  Cls red = reduce_c1(c1, r);
  GenFun g{S, r, red, Polarization::suitable(), Flavor::omega_bar, QSeries(cutoff)};
  if (red[0] != 0) return g;
  long y = to_long(red[1]);
  g.series = route == SuitableRoute::recursive ? suitable_series_recursive(r, y, ell, cutoff)
                                               : suitable_series_closed(r, y, ell, cutoff);
  return g;
}

inline GenFun suitable_genfun_recursive(int r, const Cls& c1, int ell, const Rational& cutoff) {
  return suitable_genfun(r, c1, ell, cutoff, SuitableRoute::recursive);
}

/// c1 = -a f.
inline GenFun suitable_genfun_closed(int r, long a, int ell, const Rational& cutoff) {
  return suitable_genfun(r, Cls{Rational(0), Rational(-a)}, ell, cutoff, SuitableRoute::closed);
}

}  // namespace bps
