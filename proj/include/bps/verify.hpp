#pragma once

// Self-checks run by `bps check`: series arithmetic, the rank-3 P^2 table (suite "table1"), and route equalities.

#include "bps/blowup.hpp"
#include "bps/hn.hpp"
#include "bps/serialize.hpp"
#include "bps/wallcross.hpp"

#include <atomic>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bps {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Check {
  std::string suite;
  std::string name;
  std::function<std::string()> run;  // empty string on success
};

namespace detail {

inline QSeries random_series(std::mt19937& rng, const Rational& cutoff) {
  std::uniform_int_distribution<int> coef(-3, 3), pw(-3, 3), den(1, 4);
  QSeries s(cutoff);
  s.add_term(make_rational(-1, 3), WRat(VPoly::w_power(pw(rng), 1) + VPoly(1)));
  for (int k = 0; k < 6; ++k) {
    VPoly num = VPoly::w_power(pw(rng), make_rational(coef(rng), den(rng))) + VPoly::monomial(coef(rng), pw(rng));
    VPoly d = VPoly(1) - VPoly::w_power(1 + den(rng));
    s.add_term(make_rational(k, 2), WRat(num, d));
  }
  return s;
}

/// Points displaced off a numerical wall, so never on one: J_{1,t +- eps}.
inline std::vector<Polarization> wallcross_chambers() {
  return {Polarization::at_slope(make_rational(5, 2), 1), Polarization::at_slope(1, -1), Polarization::at_slope(make_rational(1, 3), 1),
          Polarization::near_pullback_h()};
}

inline std::string expect(bool ok, const std::string& what) { return ok ? std::string() : what; }

inline std::vector<Check> core_checks() {
  std::vector<Check> out;
  out.push_back({"core", "ring axioms", [] {
                   std::mt19937 rng(20240611);
                   for (int i = 0; i < 8; ++i) {
                     QSeries a = random_series(rng, 4), b = random_series(rng, 4), c = random_series(rng, 4);
                     if (!((a * b) * c == a * (b * c))) return std::string("associativity");
                     if (!(a * b == b * a)) return std::string("commutativity");
                     if (!(a * (b + c) == a * b + a * c)) return std::string("distributivity");
                     if (!((a - a).is_zero())) return std::string("additive inverse");
                   }
                   return std::string();
                 }});
  out.push_back({"core", "inversion round trip", [] {
                   std::mt19937 rng(7);
                   for (int i = 0; i < 8; ++i) {
                     QSeries a = random_series(rng, 4);
                     QSeries p = a * a.inverse();
                     if (!(p == QSeries::one(p.cutoff()))) return std::string("series inverse");
                     for (const auto& [e, c] : a.terms())
                       if (!(c * c.inverse()).is_one()) return std::string("coefficient inverse");
                   }
                   return std::string();
                 }});
  out.push_back({"core", "serialization round trip", [] {
                   std::mt19937 rng(11);
                   for (int i = 0; i < 8; ++i) {
                     QSeries a = random_series(rng, 3);
                     if (!(qseries_from_json(Json::parse(to_json(a).dump())) == a)) return std::string("json");
                   }
                   QSeries t = p2_genfun(3, 0, 3).series;
                   return expect(qseries_from_json(to_json(t)) == t, "json of h_{3,0}");
                 }});
  out.push_back({"core", "rank one Euler numbers", [] {
                   // coefficients of prod (1 - q^n)^{-3}: 1, 3, 9, 22, 51, 108, 221, 429, 810
                   const std::vector<long> expect_e = {1, 3, 9, 22, 51, 108, 221, 429, 810};
                   GenFun g = rank1_genfun(SurfaceId::p2(), 9);
                   g.flavor = Flavor::omega;
                   InvariantTable t = extract_table(g);
                   if (t.rows.size() < expect_e.size()) return std::string("row count");
                   for (std::size_t n = 0; n < expect_e.size(); ++n)
                     if (t.rows[n].euler != expect_e[n]) return "Euler number at n = " + std::to_string(n);
                   return std::string();
                 }});
  return out;
}

inline std::vector<Check> table1_checks() {
  std::vector<Check> out;
  out.push_back({"table1", "P^2 rank 3, c1 = 0", [] {
                   const std::vector<std::vector<long>> lower = {
                       {1, 1, 2, 2, 2, 2},
                       {1, 2, 5, 9, 15, 19, 22, 23, 24},
                       {1, 2, 6, 12, 25, 43, 70, 98, 125, 142, 154, 156},
                       {1, 2, 6, 13, 28, 53, 99, 165, 264, 383, 515, 631, 723, 774, 795}};
                   const std::vector<long> euler = {18, 216, 1512, 8109};
                   InvariantTable t = extract_table(p2_omega(3, 0, make_rational(21, 8) + 5));
                   if (t.rows.size() < 4) return std::string("fewer than four rows");
                   for (std::size_t i = 0; i < 4; ++i) {
                     const TableRow& row = t.rows[i];
                     const std::string at = " at c2 = " + std::to_string(i + 3);
                     if (row.c2 != static_cast<long>(i + 3)) return "c2" + at;
                     if (row.betti.size() < lower[i].size() ||
                         !std::equal(lower[i].begin(), lower[i].end(), row.betti.begin()))
                       return "Betti numbers" + at;
                     if (row.euler != euler[i]) return "Euler number" + at;
                     if (duality_sum(row) != euler[i]) return "duality sum" + at;
                   }
                   return std::string();
                 }});
  return out;
}

inline std::vector<Check> route_checks() {
  std::vector<Check> out;
  for (int ell : {0, 1, 2})
    out.push_back({"routes", "h_{4,0} closed vs recursive, l = " + std::to_string(ell), [ell] {
                     const Rational c = make_rational(-2, 3) + 5;
                     return expect(suitable_series_closed(4, 0, ell, c) == suitable_series_recursive(4, 0, ell, c), "mismatch");
                   }});
  out.push_back({"routes", "h_{3,H}(P^2) via C+f vs f", [] {
                   const Rational c = make_rational(-3, 8) + 5;
                   return expect(p2_genfun(3, 1, c, 1).series == p2_genfun(3, 1, c, 0).series, "mismatch");
                 }});
  out.push_back({"routes", "h_{2,0}(P^2) via B_{2,1} vs B_{2,0}", [] {
                   const Rational c = make_rational(-1, 4) + 5;
                   return expect(p2_genfun(2, 0, c, 1).series == p2_genfun(2, 0, c, 0).series, "mismatch");
                 }});
  for (int ell : {0, 1, 2})
    out.push_back({"routes", "wall-crossing closed vs iterated, l = " + std::to_string(ell), [ell] {
                     WallCrossingEngine E(ell);
                     for (const auto& J : wallcross_chambers())
                       for (int r : {2, 3})
                         for (int x = 0; x < r; ++x)
                           for (int y = 0; y < r; ++y) {
                             const Cls c1{Rational(x), Rational(y)};
                             const Rational c = make_rational(-r, 6) + 5;
                             QSeries a = r == 2 ? genfun_closed_rank2(c1, ell, J, c) : genfun_closed_rank3(c1, ell, J, c);
                             if (!(a == E.genfun(r, c1, J, c).series))
                               return "r = " + std::to_string(r) + ", c1 = (" + std::to_string(x) + "," + std::to_string(y) + ") at " + J.describe();
                           }
                     return std::string();
                   }});
  return out;
}

}  // namespace detail

inline std::vector<Check> checks_for(const std::string& suite) {
  std::vector<Check> out;
  auto add = [&](std::vector<Check> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (suite == "core" || suite == "all") add(detail::core_checks());
  if (suite == "table1" || suite == "all") add(detail::table1_checks());
  if (suite == "routes" || suite == "all") add(detail::route_checks());
  if (out.empty()) throw std::invalid_argument("unknown suite '" + suite + "' (core, table1, routes, all)");
  return out;
}

/// Runs the checks on up to `jobs` threads; results keep the input order.
inline std::vector<CheckResult> run_checks(const std::vector<Check>& checks, int jobs) {
  std::vector<CheckResult> res(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < checks.size();) {
      res[i] = {checks[i].suite, checks[i].name, false, {}};
      try {
        res[i].detail = checks[i].run();
        res[i].passed = res[i].detail.empty();
      } catch (const std::exception& e) {
        res[i].detail = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return res;
}

}  // namespace bps
