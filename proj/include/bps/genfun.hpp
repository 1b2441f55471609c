#pragma once

#include "bps/qseries.hpp"
#include "bps/surface.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace bps {

enum class Flavor { omega_bar, omega_bar_mu, stack, stack_mu, omega };

inline std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::omega_bar: return "omega_bar";
    case Flavor::omega_bar_mu: return "omega_bar_mu";
    case Flavor::stack: return "stack";
    case Flavor::stack_mu: return "stack_mu";
    case Flavor::omega: return "omega";
  }
  return "?";
}

/// h_{r,c1}(z, tau; S, J) = sum over c2 of an invariant times q^{r Delta - r chi(S)/24}.
struct GenFun {
  SurfaceId surface;
  int r = 1;
  Cls c1;
  Polarization J;
  Flavor flavor = Flavor::omega_bar;
  QSeries series;

  /// q-exponent carrying the invariants of discriminant delta.
  Rational exponent_of(const Rational& delta) const { return r * delta - make_rational(r * surface.chi_top(), 24); }
  Rational delta_of(const Rational& exponent) const {
    return (exponent + make_rational(r * surface.chi_top(), 24)) / r;
  }
};

/// Memo of series keyed by parameters; keeps the deepest expansion and truncates on lookup.
template <class Key>
class SeriesCache {
 public:
  QSeries get(const Key& key, const Rational& cutoff, const std::function<QSeries()>& make) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end() && it->second.cutoff() >= cutoff) return it->second.truncated(cutoff);
    }
    QSeries s = make();
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it == map_.end())
        map_.emplace(key, s);
      else if (it->second.cutoff() < s.cutoff())
        it->second = s;
    }
    return s.truncated(cutoff);
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    map_.clear();
  }

 private:
  std::mutex mu_;
  std::map<Key, QSeries> map_;
};

}  // namespace bps
