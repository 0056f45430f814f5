#include <gtest/gtest.h>

#include <random>
#include <set>

#include "quadtor/ellcurve.hpp"

using namespace quadtor;

namespace {

const EllipticCurveK X11 = EllipticCurveK::from_ints({0, -1, -1, 0, 0});
const EllipticCurveK X15 = EllipticCurveK::from_ints({1, 1, 1, 0, 0});
const EllipticCurveK X14 = EllipticCurveK::from_ints({1, 0, 1, -1, 0});

QuadElem q(long a, long b, long d) { return QuadElem(Rational(a), Rational(b), d); }

}  // namespace

TEST(EllCurve, RejectsSingularModel) {
  EXPECT_THROW(EllipticCurveK::from_ints({0, 0, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(EllipticCurveK::from_ints({0, 0, 0, -3, 2}), std::invalid_argument);
}

TEST(EllCurve, CuspPointsLieOnX15) {
  for (auto [x, y] : std::vector<std::pair<long, long>>{{0, 0}, {0, -1}, {-1, 0}})
    EXPECT_TRUE(X15.on_curve(ECPointK::affine(QuadElem(x), QuadElem(y))));
  EXPECT_FALSE(X15.on_curve(ECPointK::affine(QuadElem(1), QuadElem(1))));
  EXPECT_THROW(X15.point(QuadElem(1), QuadElem(1)), std::invalid_argument);
}

TEST(EllCurve, OrderOfOriginOnX15) {
  ECPointK P = X15.point(QuadElem(0), QuadElem(0));
  EXPECT_EQ(ec_point_order(X15, P, 100), 4);
  ECPointK P2 = ec_mul(X15, 2, P);
  EXPECT_EQ(P2, X15.point(QuadElem(-1), QuadElem(0)));
  EXPECT_EQ(ec_mul(X15, 3, P), ec_neg(X15, P));
}

TEST(EllCurve, InvariantsMatchHandComputation) {
  // y^2 - y = x^3 - x^2: b2 = -4, b4 = 0, b6 = 1, disc = -11, j = -4096/11
  EXPECT_EQ(X11.b2(), QuadElem(-4));
  EXPECT_EQ(X11.b6(), QuadElem(1));
  EXPECT_EQ(X11.disc(), QuadElem(-11));
  EXPECT_EQ(X11.j_invariant(), make_rational(-4096, 11));
  EXPECT_EQ(X15.disc(), QuadElem(-15));
}

TEST(EllCurve, QuadraticTwistOfX2_10) {
  EllipticCurveK E = EllipticCurveK::from_ints({0, 1, 0, -1, 0});
  EllipticCurveK T = ec_quadratic_twist(E, 17);
  EXPECT_EQ(T.a2, QuadElem(17));
  EXPECT_EQ(T.a4, QuadElem(-289));
  EXPECT_EQ(T.a6, QuadElem(0));
  EXPECT_EQ(T.j_invariant(), E.j_invariant());
  EXPECT_EQ(ec_quadratic_twist(X11, 17).j_invariant(), X11.j_invariant());
  EXPECT_THROW(ec_quadratic_twist(E, 12), std::invalid_argument);
}

TEST(EllCurve, TwistPointsMapOntoBaseChange) {
  for (const auto& E : {X11, X14, X15}) {
    EllipticCurveK T = ec_quadratic_twist(E, 17);
    for (const auto& P : ec_point_search(T, QuadField(17), 6)) {
      if (!P.x.is_rational() || !P.y.is_rational()) continue;
      ECPointK Q = ec_twist_point_to_K(E, 17, P);
      EXPECT_TRUE(E.base_change(17).on_curve(Q));
      EXPECT_TRUE(Q.x.is_rational());
    }
  }
}

TEST(EllCurve, GroupLawOverK) {
  EllipticCurveK E = X11.base_change(17);
  auto pts = ec_point_search(E, QuadField(17), 4);
  ASSERT_GE(pts.size(), 6u);
  std::mt19937 rng(7);
  std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
  for (int i = 0; i < 60; ++i) {
    const auto &P = pts[pick(rng)], &Q = pts[pick(rng)], &R = pts[pick(rng)];
    EXPECT_EQ(E.add(E.add(P, Q), R), E.add(P, E.add(Q, R)));
    EXPECT_EQ(E.add(P, Q), E.add(Q, P));
    EXPECT_TRUE(E.add(P, E.neg(P)).inf);
    EXPECT_TRUE(E.on_curve(E.add(P, Q)));
  }
}

TEST(EllCurve, ReductionIsAHomomorphism) {
  EllipticCurveK E = X11.base_change(17);
  auto pts = ec_point_search(E, QuadField(17), 3);
  for (uint32_t p : {3u, 5u, 7u, 13u}) {
    ResidueMap r(QuadField(17), p);
    ASSERT_TRUE(ec_good_reduction(E, r));
    auto Ef = ec_reduce(E, r);
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i; j < pts.size(); ++j) {
        ECPointK S = E.add(pts[i], pts[j]);
        if (!S.inf && (!r.can_reduce(S.x) || !r.can_reduce(S.y))) continue;
        ECPointF lhs = ec_reduce_point(S, r);
        ECPointF rhs = Ef.add(ec_reduce_point(pts[i], r), ec_reduce_point(pts[j], r));
        EXPECT_EQ(lhs, rhs);
      }
  }
}

TEST(EllCurve, PointCountsAgainstBruteForce) {
  for (long d : {2L, 17L}) {
    for (uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
      if (d % p == 0) continue;
      ResidueMap r(QuadField(d), p);
      EllipticCurveK E = X14.base_change(d);
      if (!ec_good_reduction(E, r)) continue;
      auto Ef = ec_reduce(E, r);
      const FiniteField& F = r.field();
      uint64_t n = 1;
      for (uint64_t i = 0; i < F.q(); ++i)
        for (uint64_t j = 0; j < F.q(); ++j)
          if (Ef.on_curve(ECPointF::affine(F.from_index(i), F.from_index(j)))) ++n;
      EXPECT_EQ(ec_count_points(Ef), n) << "d=" << d << " p=" << p;
    }
  }
}

TEST(EllCurve, DivisionPolynomialRootsAreTorsion) {
  DivisionPolynomials dp(X11);
  PolyK g5 = dp.g(5);
  EXPECT_EQ(g5.degree(), 12);
  EXPECT_TRUE(g5.eval(QuadElem(0)).is_zero());
  EXPECT_TRUE(g5.eval(QuadElem(1)).is_zero());
  for (int n = 2; n <= 9; ++n) EXPECT_EQ(dp.torsion_x_poly(n).degree(), n % 2 ? (n * n - 1) / 2 : (n * n + 2) / 2) << n;
}

struct TorsionCase {
  std::array<long, 5> a;
  long d;
  long m, n;
};

// Expected groups computed with PARI elltors over the number field.
class TorsionTable : public ::testing::TestWithParam<TorsionCase> {};

TEST_P(TorsionTable, MatchesReference) {
  const auto& c = GetParam();
  EllipticCurveK E = EllipticCurveK::from_ints(c.a);
  TorsionDesc t = ec_torsion_over_K(E, QuadField(c.d));
  EXPECT_EQ(t.m, c.m);
  EXPECT_EQ(t.n, c.n);
  EXPECT_EQ(static_cast<long>(t.points.size()), c.m * c.n);
  EXPECT_TRUE(t.points.front().inf);
  EllipticCurveK EK = E.base_change(c.d);
  for (const auto& P : t.points) {
    EXPECT_TRUE(EK.on_curve(P));
    EXPECT_TRUE(EK.mul(c.n, P).inf);
  }
  EXPECT_EQ(t.bound % t.order(), 0);
}

INSTANTIATE_TEST_SUITE_P(Reference, TorsionTable,
                         ::testing::Values(TorsionCase{{0, -1, -1, 0, 0}, 17, 1, 5}, TorsionCase{{1, 1, 1, 0, 0}, 17, 1, 4},
                                           TorsionCase{{0, 0, 0, 0, 1}, 2, 1, 6}, TorsionCase{{0, 0, 0, 0, 1}, 3, 1, 6},
                                           TorsionCase{{1, 0, 1, -1, 0}, 17, 1, 6}, TorsionCase{{0, 1, 0, -1, 0}, 17, 1, 6},
                                           TorsionCase{{0, -1, 0, 1, 0}, 17, 1, 4}, TorsionCase{{0, 0, 0, -1, 0}, 2, 2, 4}));

TEST(EllCurve, X15CuspsAreTheWholeTorsion) {
  TorsionDesc t = ec_torsion_over_K(X15, QuadField(17));
  std::set<ECPointK> got(t.points.begin(), t.points.end());
  std::set<ECPointK> want{ECPointK::infinity(), ECPointK::affine(q(0, 0, 17), q(0, 0, 17)),
                          ECPointK::affine(q(0, 0, 17), q(-1, 0, 17)), ECPointK::affine(q(-1, 0, 17), q(0, 0, 17))};
  EXPECT_EQ(got, want);
  EXPECT_EQ(t.structure(), "Z/4");
}

TEST(EllCurve, TorsionOverQ) {
  EXPECT_EQ(ec_torsion_over_Q(X11).structure(), "Z/5");
  EXPECT_EQ(ec_torsion_over_Q(EllipticCurveK::from_ints({0, 0, 0, -1, 0})).structure(), "Z/2 + Z/2");
}

TEST(EllCurve, SearchIsSoundAndDeterministic) {
  EllipticCurveK E = X14.base_change(17);
  auto a = ec_point_search(E, QuadField(17), 3);
  auto b = ec_point_search(E, QuadField(17), 3);
  EXPECT_EQ(a, b);
  for (const auto& P : a) EXPECT_TRUE(E.on_curve(P));
  std::set<QuadElem> xs;
  long count = 0;
  enumerate_abscissae(17, 3, [&](const QuadElem& x) {
    xs.insert(x);
    ++count;
  });
  EXPECT_EQ(static_cast<long>(xs.size()), count);
  long rational = 0;
  enumerate_abscissae(0, 5, [&](const QuadElem& x) {
    EXPECT_TRUE(x.is_rational());
    ++rational;
  });
  EXPECT_GT(rational, 0);
}
