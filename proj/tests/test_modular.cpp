#include "bps/modular.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace bps;

namespace {

VPoly w(int k, long c = 1) { return VPoly::w_power(k, c); }

// (-1)^k at n = k(3k-1)/2, zero elsewhere.
long pentagonal(long n) {
  for (long k = -40; k <= 40; ++k)
    if (k * (3 * k - 1) / 2 == n) return k % 2 == 0 ? 1 : -1;
  return 0;
}

// Number of triples of partitions with total size n.
std::vector<long> partition_triples(int N) {
  std::vector<long> p(N + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= N; ++part)
    for (int i = part; i <= N; ++i) p[i] += p[i - part];
  std::vector<long> out(N + 1, 0);
  for (int a = 0; a <= N; ++a)
    for (int b = 0; a + b <= N; ++b)
      for (int c = 0; a + b + c <= N; ++c) out[a + b + c] += p[a] * p[b] * p[c];
  return out;
}

}  // namespace

TEST(Eta, PentagonalCoefficients) {
  QSeries e = eta_series(12);
  EXPECT_EQ(e.coeff(make_rational(1, 24)), WRat(1));
  EXPECT_EQ(e.coeff(make_rational(25, 24)), WRat(-1));
  for (long n = 0; n < 12; ++n) EXPECT_EQ(e.coeff(make_rational(1, 24) + n), WRat(pentagonal(n))) << n;
}

TEST(Eta, InverseIsTwoSided) {
  QSeries e = eta_series(5);
  QSeries one = (e * eta_power(-1, 5)).truncated(5);
  EXPECT_TRUE(one.agrees_with(QSeries::one(5)));
}

TEST(ThetaHat, LowOrders) {
  QSeries t = theta_hat(1, 4);
  EXPECT_EQ(t.coeff(make_rational(1, 8)), WRat(w(1) - w(-1)));
  EXPECT_EQ(t.coeff(make_rational(9, 8)), WRat(-(w(3) - w(-3))));
  for (int k = 1; k <= 4; ++k) {
    QSeries tk = theta_hat(k, 5);
    EXPECT_EQ(tk.coeff(make_rational(1, 8)), WRat(w(k) - w(-k)));
    EXPECT_EQ(tk.reflected(), -tk);
    EXPECT_TRUE(tk.all_even_support());
  }
}

TEST(Rank1, ProjectivePlaneHilbertSchemes) {
  GenFun h = rank1_genfun(SurfaceId::p2(), 9);
  WRat inv = WRat(1) / WRat(w(1) - w(-1));
  EXPECT_EQ(h.series.coeff(make_rational(-1, 8)), inv);
  EXPECT_EQ(h.series.coeff(make_rational(7, 8)), WRat(w(-2) + VPoly(1) + w(2)) * inv);
  // Hilb^2(P^2) has Betti numbers 1, 2, 3, 2, 1.
  EXPECT_EQ(h.series.coeff(make_rational(15, 8)), WRat(w(-4) + w(-2, 2) + VPoly(3) + w(2, 2) + w(4)) * inv);
}

TEST(Rank1, EulerNumbersMatchPartitionTriples) {
  auto oracle = partition_triples(8);
  GenFun h = rank1_genfun(SurfaceId::p2(), 9);
  for (int n = 0; n <= 8; ++n) {
    WRat c = h.series.coeff(make_rational(-1, 8) + n) * WRat(w(1) - w(-1));
    EXPECT_EQ(c.as_vpoly().value_at_one(), Rational(oracle[n])) << n;
  }
}

TEST(Rank1, HirzebruchLeadingTerm) {
  GenFun h = rank1_genfun(SurfaceId::hirzebruch(1), 3);
  EXPECT_EQ(h.series.leading_exponent(), make_rational(-1, 6));
  EXPECT_EQ(h.series.coeff(make_rational(-1, 6)), WRat(1) / WRat(w(1) - w(-1)));
}

TEST(FibreProduct, VanishesOffResidue) {
  EXPECT_TRUE(fibre_product_genfun(2, {1, 0}, 1, 3).series.is_zero());
  EXPECT_TRUE(fibre_product_genfun(3, {1, 0}, 0, 3).series.is_zero());
  EXPECT_TRUE(fibre_product_genfun(3, {2, 5}, 2, 3).series.is_zero());
  EXPECT_FALSE(fibre_product_genfun(2, {0, 1}, 1, 3).series.is_zero());
}

TEST(FibreProduct, RankTwoLeadingTerm) {
  QSeries s = fibre_product_genfun(2, {0, 0}, 1, 2).series;
  EXPECT_EQ(s.leading_exponent(), make_rational(-1, 3));
  VPoly a = w(2) - VPoly(1), b = w(4) - VPoly(1);
  EXPECT_EQ(s.coeff(make_rational(-1, 3)), WRat(w(4), a * a * b));
}

TEST(FibreProduct, RankOneIsRankOneGenFun) {
  for (int l = 0; l <= 2; ++l)
    EXPECT_EQ(fibre_product_genfun(1, {0, 0}, l, 5).series, rank1_genfun(SurfaceId::hirzebruch(l), 5).series);
}

TEST(FibreProduct, LeadingTermIsTotalSetOfCurve) {
  for (int r = 1; r <= 4; ++r) {
    QSeries s = fibre_product_series(r, 1);
    EXPECT_EQ(s.leading_exponent(), make_rational(-r, 6));
    EXPECT_EQ(s.coeff(make_rational(-r, 6)), total_set_curve(r, 0)) << r;
  }
}

TEST(TotalSet, SmallCases) {
  EXPECT_EQ(total_set_curve(1, 0), WRat(1) / WRat(w(1) - w(-1)));
  VPoly a = VPoly(1) - w(4), b = VPoly(1) - w(2);
  EXPECT_EQ(total_set_curve(2, 0), WRat(-w(4), a * b * b));
}

TEST(BlowupFactor, RankTwo) {
  QSeries b0 = blowup_factor(2, 0, 3);
  EXPECT_EQ(b0.leading_exponent(), make_rational(-1, 12));
  EXPECT_EQ(b0.coeff(make_rational(-1, 12)), WRat(1));
  EXPECT_EQ(b0.coeff(make_rational(11, 12)), WRat(VPoly(2) + w(2) + w(-2)));
  QSeries b1 = blowup_factor(2, 1, 3);
  EXPECT_EQ(b1.leading_exponent(), make_rational(1, 6));
  EXPECT_EQ(b1.coeff(make_rational(1, 6)), WRat(w(1) + w(-1)));
}

TEST(BlowupFactor, RankThreeSupportAndSymmetry) {
  for (int k = 0; k < 3; ++k) {
    QSeries b = blowup_factor(3, k, 5);
    EXPECT_TRUE(b.all_even_support()) << k;
    EXPECT_EQ(b.reflected(), b);
  }
  EXPECT_EQ(blowup_factor(3, 1, 5), blowup_factor(3, 2, 5));
  EXPECT_EQ(blowup_factor(3, 0, 3).coeff(make_rational(-1, 8)), WRat(1));
  EXPECT_EQ(blowup_factor(3, 1, 3).leading_exponent(), make_rational(5, 24));
}

TEST(BlowupFactor, InverseRoundTrip) {
  for (int r = 2; r <= 3; ++r)
    for (int k = 0; k < r; ++k) {
      QSeries b = blowup_factor(r, k, 4);
      QSeries prod = b * b.inverse();
      EXPECT_TRUE(prod.agrees_with(QSeries::one(prod.cutoff()))) << r << k;
      EXPECT_GE(prod.cutoff(), 3);
    }
}
