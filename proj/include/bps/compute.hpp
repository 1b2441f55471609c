#pragma once

// Dispatch of a single (surface, rank, c1, polarization) request to the right engine.

#include "bps/blowup.hpp"
#include "bps/cache.hpp"
#include "bps/hn.hpp"
#include "bps/invariants.hpp"
#include "bps/modular.hpp"
#include "bps/wallcross.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace bps {

struct JobSpec {
  SurfaceId surface = SurfaceId::p2();
  int r = 1;
  Cls c1;
  Polarization J = Polarization::hyperplane();
  int qorders = 5;
};

struct JobResult {
  GenFun rational;                    // Omega_bar
  GenFun integer;  // Omega
  std::optional<InvariantTable> table;
};

/// Throws std::invalid_argument when the request is outside the supported range.
inline void validate(const JobSpec& s) {
  if (s.r < 1) throw std::invalid_argument("rank must be positive");
  if (s.qorders < 1 || s.qorders > 40) throw std::invalid_argument("qorders must be between 1 and 40");
  if (s.c1.size() != static_cast<std::size_t>(s.surface.b2()))
    throw std::invalid_argument("c1 needs " + std::to_string(s.surface.b2()) + " component(s) on " + s.surface.name());
  if (!is_integral(s.c1)) throw std::invalid_argument("c1 must be integral");
  if (!s.surface.is_hirzebruch()) {
    if (s.r > 3) throw std::invalid_argument("P^2 is supported for r <= 3");
    if (s.J.kind != Polarization::Kind::hyperplane) throw std::invalid_argument("P^2 takes no polarization");
    return;
  }
  if (s.J.kind == Polarization::Kind::hyperplane || s.J.kind == Polarization::Kind::pullback_h)
    throw std::invalid_argument("polarization must lie in the ample cone of the Hirzebruch surface");
  if (s.J.kind == Polarization::Kind::suitable_near_fibre) {
    if (s.r > 4) throw std::invalid_argument("suitable polarization is supported for r <= 4");
  } else if (s.r > 3) {
    throw std::invalid_argument("wall-crossing away from J_{eps,1} is supported for r <= 3");
  }
}

/// Omega_bar generating function below the given cutoff.
inline GenFun genfun_for(const SurfaceId& S, int r, const Cls& c1, const Polarization& J, const Rational& cutoff) {
  if (!S.is_hirzebruch()) {
    if (r == 1) return rank1_genfun(S, cutoff);
    return p2_genfun(r, to_long(c1.at(0)), cutoff);
  }
  if (r == 1) {
    GenFun g = rank1_genfun(S, cutoff);
    g.J = J;
    return g;
  }
  if (J.kind == Polarization::Kind::suitable_near_fibre) return suitable_genfun(r, c1, S.ell, cutoff);
  return genfun_at_polarization(r, c1, S.ell, J, cutoff);
}

/// Omega generating function: Omega_bar minus the multicover terms of lower rank.
inline GenFun omega_for(const SurfaceId& S, int r, const Cls& c1, const Polarization& J, const Rational& cutoff) {
  GenFun h = genfun_for(S, r, c1, J, cutoff);
  if (r == 1) {
    h.flavor = Flavor::omega;
    return h;
  }
  return omegabar_to_omega(h, [&](int ri, const Cls& ci) {
    // q -> q^m scales the cutoff by m = r / ri
    return omega_for(S, ri, ci, J, cutoff >= 0 ? cutoff : Rational(cutoff * ri / r));
  });
}

namespace detail {

inline std::string job_params(const JobSpec& s) {
  std::string p = s.surface.name() + "|r=" + std::to_string(s.r) + "|c1=";
  for (const auto& x : reduce_c1(s.c1, s.r)) p += to_string(x) + ",";
  return p + "|J=" + s.J.describe();
}

}  // namespace detail

/// Runs a request: the window starts at the leading nonzero q-power of Omega and spans qorders levels.
inline JobResult run_job(const JobSpec& s, const std::optional<SeriesStore>& store = std::nullopt) {
  validate(s);
  const SurfaceId& S = s.surface;
  const Rational lead = make_rational(-s.r * S.chi_top(), 24);
  auto rational = [&](const Rational& cutoff) {
    auto make = [&] { return genfun_for(S, s.r, s.c1, s.J, cutoff).series; };
    QSeries series = store ? store->get_or_compute(SeriesStore::key_of("bps", "genfun", detail::job_params(s), cutoff), make)
                           : make();
    return GenFun{S, s.r, reduce_c1(s.c1, s.r), s.J, Flavor::omega_bar, series};
  };
  Rational cutoff = lead + s.qorders;
  GenFun w = omega_for(S, s.r, s.c1, s.J, cutoff);
  if (!w.series.is_zero() && w.series.valuation() + s.qorders > cutoff) {
    cutoff = w.series.valuation() + s.qorders;
    w = omega_for(S, s.r, s.c1, s.J, cutoff);
  }
  JobResult out{rational(cutoff), w, std::nullopt};
  out.table = extract_table(w);
  return out;
}

}  // namespace bps
