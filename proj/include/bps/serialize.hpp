#pragma once

// JSON encoding of series and invariant tables. Exponents and coefficients are exact
// fraction strings; v-polynomials are dense coefficient lists starting at a v-exponent.

#include "bps/genfun.hpp"
#include "bps/invariants.hpp"
#include "bps/qseries.hpp"
#include "bps/wrat.hpp"

#include "json.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace bps {

using Json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

inline Json to_json(const VPoly& p) {
  Json coeffs = Json::array();
  if (p.is_zero()) return Json{{"low", 0}, {"coeffs", coeffs}};
  for (int e = p.low(); e <= p.high(); ++e) coeffs.push_back(to_string(p.coeff(e)));
  return Json{{"low", p.low()}, {"coeffs", coeffs}};
}

inline VPoly vpoly_from_json(const Json& j) {
  std::map<int, Rational> terms;
  int e = j.at("low").get<int>();
  for (const auto& c : j.at("coeffs")) {
    Rational x = parse_rational(c.get<std::string>());
    if (x != 0) terms[e] = x;
    ++e;
  }
  return VPoly::from_terms(terms);
}

inline Json to_json(const WRat& c) { return Json{{"num", to_json(c.num())}, {"den", to_json(c.den())}}; }

inline WRat wrat_from_json(const Json& j) { return WRat(vpoly_from_json(j.at("num")), vpoly_from_json(j.at("den"))); }

inline Json to_json(const QSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back(Json{{"exponent", to_string(e)}, {"coefficient", to_json(c)}});
  return Json{{"cutoff", to_string(s.cutoff())}, {"terms", terms}};
}

inline QSeries qseries_from_json(const Json& j) {
  QSeries s(parse_rational(j.at("cutoff").get<std::string>()));
  for (const auto& t : j.at("terms")) s.add_term(parse_rational(t.at("exponent").get<std::string>()), wrat_from_json(t.at("coefficient")));
  return s;
}

inline Json to_json(const Cls& c) {
  Json out = Json::array();
  for (const auto& x : c) out.push_back(to_string(x));
  return out;
}

inline Json to_json(const GenFun& g) {
  return Json{{"surface", g.surface.name()}, {"rank", g.r},           {"c1", to_json(g.c1)},
              {"polarization", g.J.describe()}, {"flavor", flavor_name(g.flavor)}, {"series", to_json(g.series)}};
}

inline Json to_json(const TableRow& row) {
  return Json{{"c2", to_string(row.c2)}, {"delta", to_string(row.delta)}, {"dim", row.dim}, {"betti", row.betti}, {"euler", row.euler}};
}

inline Json to_json(const InvariantTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(to_json(r));
  return rows;
}

/// One CSV line per row; Betti columns padded to the widest row.
inline std::string to_csv(const InvariantTable& t) {
  std::size_t width = 0;
  for (const auto& r : t.rows) width = std::max(width, r.betti.size());
  std::string out = "c2,delta,dim,euler";
  for (std::size_t k = 0; k < width; ++k) out += ",b" + std::to_string(2 * k);
  out += "\n";
  for (const auto& r : t.rows) {
    out += to_string(r.c2) + "," + to_string(r.delta) + "," + std::to_string(r.dim) + "," + std::to_string(r.euler);
    for (std::size_t k = 0; k < width; ++k) out += "," + (k < r.betti.size() ? std::to_string(r.betti[k]) : std::string());
    out += "\n";
  }
  return out;
}

}  // namespace bps
