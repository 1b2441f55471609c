#include "bps/qseries.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bps;
using detail::IntPoly;

namespace {

IntPoly random_poly(std::mt19937& rng, int max_len, int max_coeff) {
  std::uniform_int_distribution<int> len(1, max_len), c(-max_coeff, max_coeff), lo(-4, 4);
  std::vector<Integer> v(static_cast<std::size_t>(len(rng)));
  for (auto& x : v) x = c(rng);
  if (v.back() == 0) v.back() = 1;
  return IntPoly(lo(rng), std::move(v));
}

WRat random_wrat(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 3), k(1, 4);
  VPoly num = VPoly::from_parts(random_poly(rng, 4, 5), std::uniform_int_distribution<int>(1, 3)(rng));
  VPoly den = VPoly(1);
  switch (pick(rng)) {
    case 0: break;
    case 1: den = VPoly(1) - VPoly::w_power(k(rng)); break;
    case 2: den = VPoly::w_power(1) - VPoly::w_power(-1); break;
    default: den = (VPoly(1) - VPoly::w_power(k(rng))) * (VPoly(1) - VPoly::w_power(k(rng))); break;
  }
  return WRat(num, den);
}

QSeries random_series(std::mt19937& rng, const Rational& cutoff, bool invertible) {
  QSeries s(cutoff);
  std::uniform_int_distribution<int> n(1, 5), e(0, 8);
  int terms = n(rng);
  if (invertible) {
    WRat c = random_wrat(rng);
    while (c.is_zero()) c = random_wrat(rng);
    s.add_term(0, c);
  }
  for (int i = 0; i < terms; ++i) s.add_term(make_rational(e(rng), 2), random_wrat(rng));
  return s;
}

}  // namespace

TEST(IntPoly, KroneckerMatchesSchoolbook) {
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    IntPoly a = random_poly(rng, 60, 1000000), b = random_poly(rng, 60, 1000000);
    IntPoly c = a * b;
    std::vector<Integer> ref(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) ref[i + j] += a.coeffs()[i] * b.coeffs()[j];
    EXPECT_EQ(c, IntPoly(a.low() + b.low(), ref));
  }
}

TEST(IntPoly, GcdRecoversCommonFactor) {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    IntPoly g = random_poly(rng, 6, 9), a = random_poly(rng, 8, 9), b = random_poly(rng, 8, 9);
    IntPoly ga = g * a, gb = g * b;
    IntPoly h = detail::gcd(ga, gb);
    ASSERT_TRUE(detail::divide_exact(ga, h).has_value());
    ASSERT_TRUE(detail::divide_exact(gb, h).has_value());
    IntPoly gn = detail::gcd(g, g);
    ASSERT_TRUE(detail::divide_exact(h, gn).has_value());
    // cofactors are coprime
    IntPoly ca = *detail::divide_exact(ga, h), cb = *detail::divide_exact(gb, h);
    EXPECT_EQ(detail::gcd(ca, cb), IntPoly::one());
  }
}

TEST(WRat, CanonicalForm) {
  VPoly w = VPoly::w_power(1);
  WRat a(VPoly(1), w - VPoly::w_power(-1));
  WRat b(w, w * w - VPoly(1));
  EXPECT_EQ(a, b);
  WRat c(VPoly(2) * (w + VPoly(1)), VPoly(4) * (w * w - VPoly(1)));
  EXPECT_EQ(c, WRat(VPoly(make_rational(1, 2)), w - VPoly(1)));
  EXPECT_EQ(c.den(), w - VPoly(1));
}

TEST(WRat, FieldAxioms) {
  std::mt19937 rng(3);
  for (int t = 0; t < 300; ++t) {
    WRat a = random_wrat(rng), b = random_wrat(rng), c = random_wrat(rng);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a - a, WRat());
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), WRat(1));
    }
    EXPECT_EQ(a.reflected().reflected(), a);
  }
}

TEST(WRat, MulticoverSubstitution) {
  VPoly w = VPoly::w_power(1), wi = VPoly::w_power(-1);
  WRat x(VPoly(1), w - wi);
  EXPECT_EQ(x.substituted(2, SubstFlavor::multicover), WRat(VPoly(-1), VPoly::w_power(2) - VPoly::w_power(-2)));
  EXPECT_EQ(x.substituted(3, SubstFlavor::multicover), WRat(VPoly(1), VPoly::w_power(3) - VPoly::w_power(-3)));
  EXPECT_THROW(WRat(VPoly::monomial(1, 1)).substituted(2, SubstFlavor::multicover), std::domain_error);
}

TEST(QSeries, DifferenceOfSquares) {
  QSeries a(3), b(3);
  a.add_term(0, 1); a.add_term(1, 1);
  b.add_term(0, 1); b.add_term(1, -1);
  QSeries p = a * b;
  EXPECT_EQ(p.cutoff(), 3);
  EXPECT_EQ(p.terms().size(), 2u);
  EXPECT_EQ(p.coeff(2), WRat(-1));
  EXPECT_EQ(a + QSeries(5), a);
}

TEST(QSeries, GeometricInverse) {
  QSeries a(6);
  a.add_term(0, 1); a.add_term(1, -1);
  QSeries b = a.inverse();
  for (int k = 0; k < 6; ++k) EXPECT_EQ(b.coeff(k), WRat(1));
  QSeries m = QSeries::monomial(WRat(VPoly::w_power(1) - VPoly::w_power(-1)), make_rational(1, 8), 2);
  QSeries mi = m.inverse();
  EXPECT_EQ(mi.coeff(make_rational(-1, 8)), WRat(VPoly(1), VPoly::w_power(1) - VPoly::w_power(-1)));
  EXPECT_THROW(QSeries(3).inverse(), std::domain_error);
}

TEST(QSeries, RingAxiomsRandomized) {
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    QSeries a = random_series(rng, 4, false), b = random_series(rng, 5, false), c = random_series(rng, make_rational(9, 2), false);
    EXPECT_TRUE(((a * b) * c).agrees_with(a * (b * c))) << a << b << c << (a * b) * c << a * (b * c);
    EXPECT_TRUE(((a + b) * c).agrees_with(a * c + b * c));
  }
}

TEST(QSeries, InverseRoundTripRandomized) {
  std::mt19937 rng(9);
  for (int t = 0; t < 1000; ++t) {
    QSeries a = random_series(rng, 3, true).shifted(make_rational(t % 5, 8));
    QSeries ai = a.inverse();
    QSeries p = a * ai, q = ai * a;
    QSeries one = QSeries::one(p.cutoff());
    ASSERT_EQ(p, one);
    ASSERT_EQ(q, one);
    ASSERT_EQ(p.cutoff(), a.cutoff() - a.valuation());
  }
}
