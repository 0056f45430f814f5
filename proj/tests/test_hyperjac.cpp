#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "quadtor/hyperjac.hpp"

using namespace quadtor;

namespace {

const HyperCurve X16(poly_q({0, -1, 2, 0, 2, 1}));
const HyperCurve X18(poly_q({1, 4, 10, 10, 5, 2, 1}));
const HyperCurve X13(poly_q({1, -4, 6, -2, 1, -2, 1}));

std::vector<FqElem> elements_of(const FiniteField& F) {
  std::vector<FqElem> out;
  for (uint64_t i = 0; i < F.q(); ++i) out.push_back(F.from_index(i));
  return out;
}

std::vector<JacElemK> cusp_classes(const HyperJacobian& J, const std::vector<std::string>& texts) {
  std::vector<JacElemK> out;
  for (const auto& t : texts) out.push_back(J.from_triple(parse_triple(t, J.field_d())));
  return out;
}

}  // namespace

TEST(HyperJac, CurveBasics) {
  EXPECT_EQ(X16.infinity_points(), 1);
  EXPECT_EQ(X18.infinity_points(), 2);
  EXPECT_TRUE(X16.on_curve(QuadElem(1), QuadElem(2)));
  EXPECT_FALSE(X16.on_curve(QuadElem(1), QuadElem(1)));
  EXPECT_THROW(HyperCurve(poly_q({0, 0, 1, 0, 0, 1})), std::invalid_argument);
  EXPECT_THROW(HyperCurve(poly_q({1, 0, 0, 1})), std::invalid_argument);
  EXPECT_EQ(X16.twist(17).f(), X16.f() * Rational(17));
}

TEST(HyperJac, SexticNeedsSquareLead) {
  EXPECT_THROW(JacobianArith<QuadElem>(poly_k(poly_q({1, 0, 0, 0, 0, 0, 2}))), std::invalid_argument);
  EXPECT_NO_THROW(JacobianArith<QuadElem>(poly_k(poly_q({1, 0, 0, 0, 0, 0, 4}))));
}

TEST(HyperJac, GroupLawOverK) {
  HyperJacobian J(X16, 17);
  const auto& ar = J.arith();
  auto E = cusp_classes(J, {"(x+1,2,1)", "(x-1,-2,1)", "(x,0,1)", "(x^2-1,2x,2)", "(x^2+2x-1,0,2)"});
  for (const auto& A : E) {
    EXPECT_TRUE(ar.is_valid(A));
    EXPECT_TRUE(ar.is_zero(ar.add(A, ar.neg(A))));
    EXPECT_EQ(ar.add(A, ar.zero()), A);
    for (const auto& B : E) {
      EXPECT_EQ(ar.add(A, B), ar.add(B, A));
      for (const auto& C : E) EXPECT_EQ(ar.add(ar.add(A, B), C), ar.add(A, ar.add(B, C)));
    }
  }
  EXPECT_EQ(ar.mul(7, E[0]), ar.sub(ar.mul(10, E[0]), ar.mul(3, E[0])));
  EXPECT_EQ(ar.mul(-1, E[1]), ar.neg(E[1]));
}

TEST(HyperJac, GroupLawSextic) {
  HyperJacobian J(X18, 17);
  const auto& ar = J.arith();
  auto E = cusp_classes(J, {"(1,x^3+x^2,2)", "(x^2+2x+1,x,2)", "(x,x^3-1,2)", "(x^2+x+1,x-1,2)", "(x+1,x^3+2,2)"});
  for (const auto& A : E) {
    EXPECT_TRUE(ar.is_valid(A));
    EXPECT_TRUE(ar.is_zero(ar.add(A, ar.neg(A))));
    for (const auto& B : E)
      for (const auto& C : E) EXPECT_EQ(ar.add(ar.add(A, B), C), ar.add(A, ar.add(B, C)));
    auto ord = ar.order(A, 100);
    ASSERT_TRUE(ord.has_value());
    EXPECT_EQ(21 % *ord, 0);
  }
}

TEST(HyperJac, CuspOrdersOnX16) {
  HyperJacobian J(X16, 0);
  const auto& ar = J.arith();
  EXPECT_EQ(ar.order(J.from_triple(parse_triple("(x+1,2,1)")), 100), 10);
  EXPECT_EQ(ar.order(J.from_triple(parse_triple("(x,0,1)")), 100), 2);
  EXPECT_EQ(ar.order(J.from_triple(parse_triple("(x^2+2x+1,2x,2)")), 100), 5);
}

TEST(HyperJac, DecodeQuinticTriple) {
  HyperJacobian J(X16, 17);
  EXPECT_EQ(hj_decode_mumford(J, parse_triple("(x^2+2x+1,2x,2)", 17)).str(),
            "[(-1 : -2 : 1) + (-1 : -2 : 1) - 2*inf]");
  EXPECT_EQ(hj_decode_mumford(J, parse_triple("(x,0,1)", 17)).str(), "[(0 : 0 : 1) - 1*inf]");
  auto D = hj_decode_mumford(J, parse_triple("(x^2+1,0,2)", 17));
  ASSERT_EQ(D.support.size(), 1u);
  EXPECT_EQ(D.support[0].kind, Place::Kind::Conjugate);
}

TEST(HyperJac, DecodeSexticInfinity) {
  HyperJacobian J(X18, 17);
  auto D = hj_decode_mumford(J, parse_triple("(1,x^3+x^2,2)", 17));
  ASSERT_EQ(D.support.size(), 1u);
  EXPECT_EQ(D.support[0].kind, Place::Kind::InfinityPlus);
  EXPECT_EQ(D.support[0].mult, 2);
  auto E = hj_decode_mumford(J, parse_triple("(1,-x^3-x^2,2)", 17));
  ASSERT_EQ(E.support.size(), 1u);
  EXPECT_EQ(E.support[0].kind, Place::Kind::InfinityMinus);
  EXPECT_TRUE(J.arith().is_zero(J.from_triple(parse_triple("(1,0,0)", 17))));
}

TEST(HyperJac, EncodeDecodeRoundTrip) {
  for (const auto* C : {&X16, &X18}) {
    HyperJacobian J(*C, 17);
    for (const auto& [x, y] : hj_point_search(*C, 17, 3)) {
      Place P;
      P.x = x;
      P.y = y;
      std::vector<Place> pts{P};
      if (C->even()) pts.push_back(P);
      MumfordTriple t = hj_encode(J, pts);
      DivisorClass D = hj_decode_mumford(J, t);
      ASSERT_EQ(D.support.size(), 1u) << t.str();
      EXPECT_EQ(D.support[0].kind, Place::Kind::Affine);
      EXPECT_EQ(D.support[0].x, x);
      EXPECT_EQ(D.support[0].y, y);
      EXPECT_EQ(D.support[0].mult, static_cast<int>(pts.size()));
      EXPECT_EQ(J.normalize(t), t);
    }
  }
}

TEST(HyperJac, NormalizationReducesB) {
  HyperJacobian J(X16, 0);
  MumfordTriple t = parse_triple("(x+1, x^2+2x+3, 1)");
  EXPECT_EQ(J.normalize(t), parse_triple("(x+1, 2, 1)"));
  EXPECT_THROW(J.from_triple(parse_triple("(x+1, 3, 1)")), std::invalid_argument);
  EXPECT_THROW(parse_triple("(x+1, 2)"), std::invalid_argument);
}

TEST(HyperJac, EnumerationMatchesCountsQuintic) {
  HyperCurve C(poly_q({1, 1, 0, 0, 0, 1}));
  for (uint32_t p : {5u, 11u, 13u}) {
    ASSERT_TRUE(hj_good_prime(C, p));
    const FiniteField& F = FiniteField::get(p, 1);
    JacobianArith<FqElem> ar(poly_f(C.f(), ResidueMap::rational(p)));
    auto elems = enumerate_jacobian(ar, elements_of(F));
    EXPECT_EQ(elems.size(), hj_count_jacobian_fp(C, p)) << p;
    std::set<JacElemF> uniq(elems.begin(), elems.end());
    EXPECT_EQ(uniq.size(), elems.size());
    for (const auto& D : elems) EXPECT_TRUE(ar.is_valid(D));
  }
}

TEST(HyperJac, EnumerationMatchesCountsSextic) {
  for (uint32_t p : {5u, 7u, 11u}) {
    const FiniteField& F = FiniteField::get(p, 1);
    JacobianArith<FqElem> ar(poly_f(X18.f(), ResidueMap::rational(p)));
    auto elems = enumerate_jacobian(ar, elements_of(F));
    EXPECT_EQ(elems.size(), hj_count_jacobian_fp(X18, p)) << p;
    std::set<JacElemF> uniq(elems.begin(), elems.end());
    EXPECT_EQ(uniq.size(), elems.size());
    // closed under the group law
    for (size_t i = 0; i < elems.size(); i += 7) EXPECT_TRUE(uniq.count(ar.add(elems[i], elems[elems.size() - 1 - i])));
  }
}

TEST(HyperJac, JacobianCountsWithinWeilBounds) {
  for (const auto* C : {&X16, &X18, &X13})
    for (uint32_t p : {5u, 7u, 11u, 13u, 19u, 23u}) {
      if (!hj_good_prime(*C, p)) continue;
      double s = std::sqrt(static_cast<double>(p));
      double n = static_cast<double>(hj_count_jacobian_fp(*C, p));
      EXPECT_GE(n, std::pow(s - 1, 4));
      EXPECT_LE(n, std::pow(s + 1, 4));
    }
}

TEST(HyperJac, TorsionBounds) {
  QuadField K(17);
  EXPECT_EQ(hj_torsion_bound_over_Q(X16), 20);
  EXPECT_EQ(hj_torsion_bound_over_K(X16, K), 40);
  EXPECT_EQ(hj_torsion_bound_over_Q(X18), 21);
  EXPECT_EQ(hj_torsion_bound_over_K(X18, K), 63);
  EXPECT_EQ(hj_torsion_bound_over_K(X13, K), 19);
  EXPECT_EQ(hj_count_jacobian_fp(X16, 3) % 20, 0u);
}

TEST(HyperJac, TwoTorsionFromWeierstrassOrbits) {
  QuadField K(17);
  EXPECT_EQ(hj_two_torsion_over_K(X16, K).rank, 2);
  EXPECT_EQ(hj_two_torsion_over_K(X18, K).rank, 0);
  HyperCurve split(poly_q({0, 4, 0, -5, 0, 1}));  // x(x^2-1)(x^2-4)
  auto T = hj_two_torsion_over_K(split, K);
  EXPECT_EQ(T.rank, 4);
  EXPECT_EQ(T.elements.size(), 16u);
  EXPECT_EQ(T.generators.size(), 4u);
}

TEST(HyperJac, AbelianInvariants) {
  EXPECT_EQ(abelian_invariants({1}), std::vector<long>{});
  EXPECT_EQ(abelian_invariants({1, 2, 2, 2}), (std::vector<long>{2, 2}));
  EXPECT_EQ(abelian_invariants({1, 2, 4, 4}), (std::vector<long>{4}));
  EXPECT_EQ(abelian_invariants({1, 2, 3, 3, 6, 6}), (std::vector<long>{6}));
}

TEST(HyperJac, TorsionOverQsqrt17) {
  QuadField K(17);
  auto T16 = hj_torsion_over_K(X16, K);
  ASSERT_TRUE(T16.exact);
  EXPECT_EQ(T16.invariants, (std::vector<long>{2, 10}));
  EXPECT_EQ(T16.elements.size(), 20u);
  EXPECT_FALSE(T16.two_primary_places.empty());
  auto T18 = hj_torsion_over_K(X18, K);
  ASSERT_TRUE(T18.exact);
  EXPECT_EQ(T18.invariants, std::vector<long>{21});
  auto T13 = hj_torsion_over_K(X13, K);
  ASSERT_TRUE(T13.exact);
  EXPECT_EQ(T13.invariants, std::vector<long>{19});
  EXPECT_TRUE(HyperJacobian(X13, 17).arith().is_zero(T13.elements.front()));
}

TEST(HyperJac, TorsionElementsFormAGroup) {
  QuadField K(17);
  auto T = hj_torsion_over_K(X16, K);
  HyperJacobian J(X16, 17);
  std::set<JacElemK> S(T.elements.begin(), T.elements.end());
  for (const auto& A : T.elements)
    for (const auto& B : T.elements) EXPECT_TRUE(S.count(J.arith().add(A, B)));
}
