#include <gtest/gtest.h>

#include <random>
#include <set>

#include "quadtor/polyarith.hpp"

using namespace quadtor;

namespace {

std::set<QuadElem> root_set(const std::vector<std::pair<QuadElem, int>>& v) {
  std::set<QuadElem> s;
  for (const auto& [r, m] : v) s.insert(r);
  return s;
}

}  // namespace

TEST(RootsInK, CuspPolynomialOfX15) {
  QuadField K(17);
  PolyQ f = poly_q({0, 1}) * poly_q({1, 1}) * poly_q({1, 2, 4, 3, 1}) * poly_q({1, 2, -6, -7, 1});
  auto roots = root_set(poly_roots_in_K(f, K));
  EXPECT_EQ(roots, (std::set<QuadElem>{QuadElem(0), QuadElem(-1)}));
}

TEST(RootsInK, DefiningPolynomial) {
  QuadField K(17);
  auto roots = root_set(poly_roots_in_K(poly_q({-17, 0, 1}), K));
  EXPECT_EQ(roots, (std::set<QuadElem>{QuadElem(0, 1, K), QuadElem(0, -1, K)}));
}

TEST(RootsInK, IrreducibleCubic) {
  EXPECT_TRUE(poly_roots_in_K(poly_q({1, 1, -4, 1}), QuadField(17)).empty());
}

TEST(RootsInK, ZeroPolynomialRejected) {
  EXPECT_THROW(poly_roots_in_K(PolyQ(Rational(0)), QuadField(17)), std::invalid_argument);
}

TEST(RootsInK, Multiplicities) {
  QuadField K(5);
  PolyQ g = poly_q({-1, -1, 1});  // x^2 - x - 1
  PolyQ f = g.pow(3) * poly_q({Rational(1, 3), Rational(1)}).pow(2);
  auto roots = poly_roots_in_K(f, K);
  ASSERT_EQ(roots.size(), 3u);
  for (const auto& [r, m] : roots) EXPECT_EQ(m, r.is_rational() ? 2 : 3);
}

TEST(RootsInK, PolynomialOverK) {
  QuadField K(17);
  QuadElem s = QuadElem::sqrt_d(K);
  PolyK f(std::vector<QuadElem>{QuadElem(-1) - s, QuadElem(1)}, QuadElem(0, 0, 17));
  f = f * PolyK(std::vector<QuadElem>{QuadElem(3), QuadElem(1)}, QuadElem(0, 0, 17));
  auto roots = root_set(poly_roots_in_K(f, K));
  EXPECT_EQ(roots, (std::set<QuadElem>{QuadElem(1) + s, QuadElem(-3)}));
}

TEST(RootsInK, AgreesWithBruteForce) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-6, 6);
  for (long d : {2, 3, 5, 13, 17}) {
    QuadField K(d);
    for (int trial = 0; trial < 24; ++trial) {
      // random product of small factors so roots actually occur
      PolyQ f = poly_q({coef(rng), 1 + static_cast<long>(rng() % 4)});
      if (trial % 2) f = f * poly_q({coef(rng), coef(rng), 1});
      long k = static_cast<long>(rng() % 4);
      if (trial % 3 == 0) f = f * poly_q({-d * k * k, 0, 1});
      if (f.degree() > 4) continue;
      std::set<QuadElem> brute;
      // brute force over (u + v sqrt d) / w; the random factors are monic so w stays small
      for (long w = 1; w <= 4; ++w)
        for (long u = -50; u <= 50; ++u)
          for (long v = -6; v <= 6; ++v) {
            QuadElem x(make_rational(u, w), make_rational(v, w), d);
            if (is_zero(f.eval(x))) brute.insert(x);
          }
      auto got = root_set(poly_roots_in_K(f, K));
      for (const auto& r : got) EXPECT_TRUE(is_zero(f.eval(r)));
      EXPECT_EQ(got, brute) << f.str();
    }
  }
}

TEST(RootsModQ, Examples) {
  const FiniteField& F5 = FiniteField::get(5, 1);
  auto r5 = poly_roots_mod_q(poly_f({1, 0, 1}, F5));
  ASSERT_EQ(r5.size(), 2u);
  EXPECT_EQ(r5[0], F5.from_int(2));
  EXPECT_EQ(r5[1], F5.from_int(3));
  const FiniteField& F3 = FiniteField::get(3, 1);
  EXPECT_TRUE(poly_roots_mod_q(poly_f({1, 0, 1}, F3)).empty());
  PolyQ x16 = poly_q({0, 1}) * poly_q({1, 0, 1}) * poly_q({-1, 2, 1});
  std::vector<long> c;
  for (const auto& v : x16.coeffs()) c.push_back(v.get_num().get_si());
  auto r3 = poly_roots_mod_q(poly_f(c, F3));
  ASSERT_EQ(r3.size(), 1u);
  EXPECT_TRUE(r3[0].is_zero());
  auto rep = poly_roots_mod_q(poly_f({0, 0, 1}, F5));
  EXPECT_EQ(rep.size(), 2u);
}

TEST(RootsModQ, CardinalityAtMostDegree) {
  std::mt19937_64 rng(9);
  const FiniteField& F = FiniteField::get(7, 2);
  for (int i = 0; i < 50; ++i) {
    std::vector<FqElem> c;
    for (int j = 0; j < 6; ++j) c.push_back(F.from_index(rng() % F.q()));
    c.push_back(F.one());
    PolyF f(c, F.zero());
    EXPECT_LE(static_cast<int>(poly_roots_mod_q(f).size()), f.degree());
  }
}

TEST(FactorOverK, X16Model) {
  QuadField K(17);
  PolyQ f = poly_q({0, 1}) * poly_q({1, 0, 1}) * poly_q({-1, 2, 1});
  FactorListK fl = poly_factor_over_K(f, K);
  EXPECT_EQ(fl.degrees(), (std::vector<int>{1, 2, 2}));
  EXPECT_EQ(fl.product(), poly_k(f, 17));
}

TEST(FactorOverK, DefiningPolynomialSplits) {
  QuadField K(17);
  FactorListK fl = poly_factor_over_K(poly_q({-17, 0, 1}), K);
  ASSERT_EQ(fl.degrees(), (std::vector<int>{1, 1}));
  EXPECT_EQ(fl.product(), poly_k(poly_q({-17, 0, 1}), 17));
}

TEST(FactorOverK, X18SexticHasNoLinearFactor) {
  QuadField K(17);
  PolyQ f = poly_q({1, 4, 10, 10, 5, 2, 1});
  FactorListK fl = poly_factor_over_K(f, K);
  for (int deg : fl.degrees()) EXPECT_GT(deg, 1);
  EXPECT_EQ(fl.product(), poly_k(f, 17));
}

TEST(FactorOverK, QuarticSplitsIntoConjugates) {
  // (x^2 + sqrt2 x + 1)(x^2 - sqrt2 x + 1) = x^4 + 1
  FactorListK fl = poly_factor_over_K(poly_q({1, 0, 0, 0, 1}), QuadField(2));
  EXPECT_EQ(fl.degrees(), (std::vector<int>{2, 2}));
  EXPECT_EQ(fl.product(), poly_k(poly_q({1, 0, 0, 0, 1}), 2));
  FactorListK irr = poly_factor_over_K(poly_q({1, 0, 0, 0, 1}), QuadField(3));
  EXPECT_EQ(irr.degrees(), (std::vector<int>{4}));
}

TEST(FactorOverK, SexticSplitsIntoConjugateCubics) {
  // (x^3 + x^2 + 2)^2 - 5x^2 = (x^3 + x^2 + 2 - sqrt5 x)(x^3 + x^2 + 2 + sqrt5 x)
  PolyQ c = poly_q({2, 0, 1, 1});
  PolyQ f = c * c - poly_q({0, 0, 5});
  FactorListK fl = poly_factor_over_K(f, QuadField(5));
  EXPECT_EQ(fl.degrees(), (std::vector<int>{3, 3}));
  EXPECT_EQ(fl.product(), poly_k(f, 5));
}

TEST(FactorOverQ, QuadraticAndCubicFactors) {
  PolyQ a = poly_q({3, 1, 1}), b = poly_q({2, 0, 1, 1}), c = poly_q({5, 0, 0, 1});
  FactorListQ fl = factor_over_Q(a * b * Rational(3));
  EXPECT_EQ(fl.degrees(), (std::vector<int>{2, 3}));
  EXPECT_EQ(fl.product(), a * b * Rational(3));
  FactorListQ g = factor_over_Q(b * c);
  EXPECT_EQ(g.degrees(), (std::vector<int>{3, 3}));
  EXPECT_EQ(g.product(), b * c);
  FactorListQ h = factor_over_Q(a.pow(2) * poly_q({1, 2}));
  EXPECT_EQ(h.product(), a.pow(2) * poly_q({1, 2}));
}

TEST(FactorOverK, RandomReconstruction) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> coef(-4, 4);
  for (int i = 0; i < 60; ++i) {
    PolyQ f = poly_q({coef(rng), coef(rng), 1});
    f = f * poly_q({coef(rng), coef(rng), coef(rng), 1});
    if (i % 2) f = f * poly_q({coef(rng), 1});
    long d = std::vector<long>{2, 3, 5, 17}[i % 4];
    FactorListK fl = poly_factor_over_K(f, QuadField(d));
    EXPECT_EQ(fl.product(), poly_k(f, d)) << f.str();
  }
}

TEST(Discriminant, Examples) {
  EXPECT_EQ(discriminant(poly_q({1, 0, 1})), -4);
  EXPECT_EQ(discriminant(poly_q({-1, 2, 1})), 8);
  EXPECT_EQ(discriminant(poly_q({0, -1, 0, 1})), 4);
}
