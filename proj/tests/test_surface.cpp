#include "bps/surface.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace bps;

namespace {

Cls cls(long a, long b) { return {Rational(a), Rational(b)}; }

ChernVector random_class(std::mt19937& rng, const SurfaceId& S, int r) {
  std::uniform_int_distribution<long> d(-6, 6);
  Cls c1 = S.is_hirzebruch() ? cls(d(rng), d(rng)) : Cls{Rational(d(rng))};
  return ChernVector::from_c2(r, c1, Rational(d(rng)), S);
}

// Walls for rank 2 with rank-1 pieces L, c1 - L: slope -(dy)/(dx) of D = 2L - c1
// whenever L.(c1 - L) <= c2 (both pieces have a nonnegative number of points).
std::set<Rational> brute_force_rank2_walls(const ChernVector& g, const SurfaceId& S) {
  std::set<Rational> out;
  for (long x = -30; x <= 30; ++x)
    for (long y = -30; y <= 30; ++y) {
      Cls L = cls(x, y);
      if (S.intersect(L, g.c1 - L) > g.c2(S)) continue;
      Cls D = Rational(2) * L - g.c1;
      if (D[0] == 0) continue;
      Rational t = -D[1] / D[0];
      if (t > 0) out.insert(t);
    }
  return out;
}

}  // namespace

TEST(Discriminant, Examples) {
  SurfaceId p2 = SurfaceId::p2(), s1 = SurfaceId::hirzebruch(1);
  EXPECT_EQ(discriminant(ChernVector{3, {Rational(0)}, Rational(-3)}, p2), Rational(1));
  EXPECT_EQ(discriminant(ChernVector::from_c2(2, cls(1, 1), 1, s1), s1), make_rational(3, 8));
  EXPECT_EQ(ChernVector::from_c2(3, {Rational(0)}, 3, p2).ch2, Rational(-3));
}

TEST(Discriminant, FiltrationFormulaAgreesOnRandomSplits) {
  std::mt19937 rng(7);
  for (const SurfaceId& S : {SurfaceId::p2(), SurfaceId::hirzebruch(0), SurfaceId::hirzebruch(1), SurfaceId::hirzebruch(3)}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<ChernVector> pieces;
      int n = 1 + trial % 4;
      for (int i = 0; i < n; ++i) pieces.push_back(random_class(rng, S, 1 + static_cast<int>(rng() % 3)));
      ChernVector total = pieces[0];
      for (int i = 1; i < n; ++i) total = total + pieces[i];
      EXPECT_EQ(discriminant_of_filtration(pieces, S), discriminant(total, S));
    }
  }
}

TEST(Dimension, Examples) {
  SurfaceId p2 = SurfaceId::p2();
  EXPECT_EQ(expected_dimension(ChernVector::from_c2(3, {Rational(0)}, 3, p2), p2), 10);
  EXPECT_EQ(expected_dimension(ChernVector::from_c2(1, {Rational(0)}, 0, p2), p2), 0);
  EXPECT_EQ(expected_dimension(ChernVector::from_c2(3, {Rational(0)}, 4, p2), p2), 16);
  for (int l = 0; l <= 3; ++l) {
    SurfaceId S = SurfaceId::hirzebruch(l);
    EXPECT_EQ(expected_dimension(ChernVector::from_c2(2, cls(0, 1), 0, S), S), -3);
  }
  EXPECT_THROW(expected_dimension(ChernVector{2, {Rational(0)}, make_rational(1, 3)}, p2), std::domain_error);
}

TEST(Twist, ReducesIntoFundamentalDomain) {
  SurfaceId S = SurfaceId::hirzebruch(1);
  auto t = twist_reduce(ChernVector::from_c2(2, cls(3, 5), 4, S), S);
  EXPECT_EQ(t.reduced.c1, cls(1, 1));
  EXPECT_EQ(t.twist, cls(1, 2));
  auto u = twist_reduce(ChernVector::from_c2(3, cls(0, 0), 2, S), S);
  EXPECT_EQ(u.reduced.c1, cls(0, 0));
  EXPECT_EQ(u.twist, cls(0, 0));
}

TEST(Twist, PreservesDiscriminant) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    SurfaceId S = trial % 2 ? SurfaceId::hirzebruch(trial % 4) : SurfaceId::p2();
    ChernVector g = random_class(rng, S, 1 + trial % 4);
    auto t = twist_reduce(g, S);
    EXPECT_EQ(discriminant(t.reduced, S), discriminant(g, S));
    EXPECT_EQ(t.reduced.c1 + Rational(g.r) * t.twist, g.c1);
    for (const auto& x : t.reduced.c1) {
      EXPECT_GE(x, 0);
      EXPECT_LT(x, g.r);
    }
  }
}

TEST(SlopeOrder, Examples) {
  SurfaceId S = SurfaceId::hirzebruch(1);
  ChernVector a = ChernVector::from_c2(1, cls(0, 1), 0, S), b = ChernVector::from_c2(1, cls(0, 0), 0, S);
  EXPECT_EQ(slope_order(a, b, Polarization::suitable(), S, SlopeFlavor::mu), Ordering::greater);
  EXPECT_EQ(slope_order(a, a, Polarization::jmn(1, 1), S, SlopeFlavor::gieseker), Ordering::equal);
  // equal slope, fewer points has larger reduced Hilbert polynomial
  ChernVector c = ChernVector::from_c2(1, cls(0, 0), 2, S);
  EXPECT_EQ(slope_order(b, c, Polarization::suitable(), S, SlopeFlavor::mu), Ordering::equal);
  EXPECT_EQ(slope_order(b, c, Polarization::suitable(), S, SlopeFlavor::gieseker), Ordering::greater);
}

TEST(SlopeOrder, GiesekerRefinesMu) {
  std::mt19937 rng(3);
  SurfaceId S = SurfaceId::hirzebruch(2);
  Polarization J = Polarization::jmn(2, 3);
  for (int trial = 0; trial < 500; ++trial) {
    ChernVector a = random_class(rng, S, 1 + trial % 3), b = random_class(rng, S, 1 + (trial / 3) % 3);
    Ordering m = slope_order(a, b, J, S, SlopeFlavor::mu), g = slope_order(a, b, J, S, SlopeFlavor::gieseker);
    if (m != Ordering::equal) EXPECT_EQ(m, g);
    if (m == Ordering::equal) {
      Rational ca = hilbert_constant(a, S), cb = hilbert_constant(b, S);
      EXPECT_EQ(g, ca == cb ? Ordering::equal : (ca < cb ? Ordering::less : Ordering::greater));
    }
  }
}

TEST(Walls, Locus) {
  SurfaceId S = SurfaceId::hirzebruch(1);
  auto t = wall_locus(ChernVector::from_c2(1, cls(1, 0), 0, S), ChernVector::from_c2(2, cls(0, 1), 0, S), S);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(*t, make_rational(1, 2));
  EXPECT_FALSE(wall_locus(ChernVector::from_c2(1, cls(0, 0), 0, S), ChernVector::from_c2(2, cls(0, 0), 1, S), S));
  EXPECT_FALSE(wall_locus(ChernVector::from_c2(1, cls(0, 1), 0, S), ChernVector::from_c2(2, cls(0, 0), 1, S), S));
  EXPECT_FALSE(wall_locus(ChernVector{1, {Rational(1)}, 0}, ChernVector{2, {Rational(0)}, 0}, SurfaceId::p2()));
}

TEST(Walls, RankTwoEnumerationMatchesBruteForce) {
  for (int l = 0; l <= 2; ++l) {
    SurfaceId S = SurfaceId::hirzebruch(l);
    for (long a = 0; a <= 1; ++a)
      for (long b = 0; b <= 1; ++b)
        for (long c2 = -1; c2 <= 4; ++c2) {
          ChernVector g = ChernVector::from_c2(2, cls(a, b), c2, S);
          std::set<Rational> brute = brute_force_rank2_walls(g, S), fast;
          for (const auto& w : enumerate_walls(g, S)) fast.insert(w.slope);
          // the enumerator may report numerically allowed walls only; every true wall must appear
          for (const auto& t : brute) EXPECT_TRUE(fast.count(t)) << l << " " << a << b << " c2=" << c2 << " t=" << t;
        }
  }
}

TEST(Suitable, Examples) {
  SurfaceId S = SurfaceId::hirzebruch(1);
  ChernVector g1 = ChernVector::from_c2(2, cls(0, 1), 1, S);
  EXPECT_TRUE(enumerate_walls(g1, S).empty());
  EXPECT_TRUE(is_suitable(Polarization::jmn(1, 1), g1, S));
  ChernVector g2 = ChernVector::from_c2(2, cls(0, 1), 2, S);
  EXPECT_TRUE(is_suitable(Polarization::suitable(), g2, S));
  EXPECT_TRUE(is_suitable(Polarization::jmn(1, 1), g2, S));
  EXPECT_FALSE(is_suitable(Polarization::jmn(2, 1), g2, S));
  EXPECT_TRUE(on_wall(Polarization::jmn(2, 1), g2, S));
  EXPECT_FALSE(is_suitable(Polarization::jmn(4, 1), g2, S));
}
