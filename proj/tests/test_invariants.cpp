#include "bps/invariants.hpp"
#include "bps/modular.hpp"

#include <gtest/gtest.h>

using namespace bps;

namespace {

VPoly w(int k, long c = 1) { return VPoly::w_power(k, c); }

GenFun hilbert_p2(const Rational& cutoff) {
  GenFun g = rank1_genfun(SurfaceId::p2(), cutoff);
  g.flavor = Flavor::omega;
  return g;
}

}  // namespace

TEST(ExtractTable, HilbertSchemesOfPlane) {
  InvariantTable t = extract_table(hilbert_p2(4));
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.rows[0].dim, 0);
  EXPECT_EQ(t.rows[1].betti, (std::vector<long>{1, 1, 1}));
  EXPECT_EQ(t.rows[2].betti, (std::vector<long>{1, 2, 3, 2, 1}));
  EXPECT_EQ(t.rows[3].betti, (std::vector<long>{1, 2, 5, 6, 5, 2, 1}));
  EXPECT_EQ(t.rows[3].euler, 22);
  EXPECT_EQ(t.rows[3].c2, 3);
  for (const auto& row : t.rows) EXPECT_EQ(duality_sum(row), row.euler);
}

TEST(ExtractTable, RejectsBadInput) {
  GenFun g = hilbert_p2(2);
  g.flavor = Flavor::omega_bar;
  EXPECT_THROW(extract_table(g), std::invalid_argument);
  GenFun h = hilbert_p2(2);
  h.series = QSeries(2);
  h.series.add_term(make_rational(7, 8), WRat(make_rational(1, 2)) / WRat(w(1) - w(-1)));
  EXPECT_THROW(extract_table(h), std::domain_error);
  GenFun k = hilbert_p2(2);
  k.series = QSeries(2);
  k.series.add_term(make_rational(7, 8), WRat(w(4) + w(-4)) / WRat(w(1) - w(-1)));
  EXPECT_THROW(extract_table(k), std::domain_error);
}

TEST(Multicover, SubtractsSubstitutedLowerRank) {
  SurfaceId S = SurfaceId::p2();
  GenFun h{S, 2, Cls{Rational(0)}, Polarization::hyperplane(), Flavor::omega_bar, QSeries(3)};
  h.series.add_term(1, WRat(w(2)));
  GenFun lower{S, 1, Cls{Rational(0)}, Polarization::hyperplane(), Flavor::omega, QSeries(3)};
  lower.series.add_term(make_rational(1, 2), WRat(w(1)));
  GenFun out = omegabar_to_omega(h, [&](int, const Cls&) { return lower; });
  EXPECT_EQ(out.flavor, Flavor::omega);
  EXPECT_EQ(out.series.coeff(1), WRat(w(2)) - WRat(make_rational(1, 2)) * WRat(w(1)).substituted(2, SubstFlavor::multicover));
  GenFun odd = h;
  odd.c1 = Cls{Rational(1)};
  EXPECT_TRUE(omegabar_to_omega(odd, [&](int, const Cls&) -> GenFun { throw std::logic_error("unused"); }).series ==
              odd.series);
}

TEST(StackConversion, RoundTrip) {
  SurfaceId S = SurfaceId::hirzebruch(1);
  const Polarization J = Polarization::suitable();
  // rational invariants: constant on rank 1, something else on rank 2 and 3
  ClassLookup rational = [&](const ChernVector& g) -> WRat {
    if (g.r == 1) return WRat(w(1) + w(-1));
    if (g.r == 2) return WRat(w(4));
    return WRat(make_rational(3, 7));
  };
  ChernVector g = ChernVector::from_delta(3, Cls{Rational(0), Rational(-3)}, 0, S);
  auto stack_of = [&](const ChernVector& x) { return stack_conversion(rational, StackDirection::to_stack, x, J, S); };
  WRat back = stack_conversion(stack_of, StackDirection::from_stack, g, J, S);
  EXPECT_EQ(back, rational(g));
  EXPECT_THROW(stack_conversion(rational, StackDirection::to_stack, g, Polarization::pullback_h(), S),
               std::invalid_argument);
}

TEST(EqualSlopeProducts, RankTwo) {
  QSeries one = QSeries::one(3);
  auto lookup = [&](int, const Cls&) { return one; };
  QSeries s = equal_slope_products(lookup, 2, Cls{Rational(0), Rational(0)}, StackDirection::to_stack, 3);
  EXPECT_EQ(s.coeff(0), WRat(make_rational(1, 2)));
  QSeries t = equal_slope_products(lookup, 2, Cls{Rational(0), Rational(1)}, StackDirection::from_stack, 3);
  EXPECT_TRUE(t.is_zero());
}
