#include <gtest/gtest.h>

#include <random>

#include "quadtor/qfield.hpp"

using namespace quadtor;

namespace {

QuadElem q(long a, long b, long d, long den = 1) { return QuadElem(make_rational(a, den), make_rational(b, den), d); }

QuadElem random_elem(std::mt19937_64& rng, long d) {
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  Rational a(num(rng), den(rng)), b(num(rng), den(rng));
  a.canonicalize();
  b.canonicalize();
  return QuadElem(a, b, d);
}

}  // namespace

TEST(QuadField, RejectsBadRadicands) {
  EXPECT_THROW(QuadField(0), std::invalid_argument);
  EXPECT_THROW(QuadField(1), std::invalid_argument);
  EXPECT_THROW(QuadField(12), std::invalid_argument);
  EXPECT_THROW(QuadField(-5), std::invalid_argument);
  EXPECT_NO_THROW(QuadField(17));
}

TEST(QuadElem, Identities) {
  QuadField K(17);
  QuadElem x = q(3, -2, 17, 5);
  EXPECT_EQ(QuadElem(1) * x, x);
  EXPECT_EQ(QuadElem::sqrt_d(K) * QuadElem::sqrt_d(K), QuadElem(17));
}

TEST(QuadElem, NormOfGeneratorAbscissa) {
  QuadElem x(Rational(1, 8), Rational(-1, 8), 17);
  EXPECT_EQ(x * x.conj(), QuadElem(Rational(-1, 4)));
  EXPECT_EQ(x.norm(), Rational(-1, 4));
}

TEST(QuadElem, MixedFieldsAndZeroDivision) {
  EXPECT_THROW(q(1, 1, 17) + q(1, 1, 2), std::domain_error);
  EXPECT_THROW(q(1, 1, 17) / QuadElem(0), std::domain_error);
  EXPECT_EQ(q(1, 1, 17) + QuadElem(2), q(3, 1, 17));
}

TEST(QuadElem, CanonicalRationals) {
  QuadElem x(make_rational(2, 4), make_rational(-3, -6), 5);
  x += QuadElem(0);
  EXPECT_EQ(x.a().get_den(), 2);
  EXPECT_EQ(x.b().get_num(), 1);
  EXPECT_EQ(x.str(), "1/2 + sqrt(5)/2");
}

TEST(SqrtInK, Examples) {
  QuadField K(17);
  auto s = qf_sqrt_in_K(QuadElem(Rational(17, 64)), K);
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, QuadElem(0, Rational(1, 8), K));
  auto z = qf_sqrt_in_K(QuadElem(0), K);
  ASSERT_TRUE(z);
  EXPECT_TRUE(z->is_zero());
  EXPECT_FALSE(qf_sqrt_in_K(QuadElem(-1), K));
  EXPECT_FALSE(qf_sqrt_in_K(QuadElem(2), K));
  auto t = qf_sqrt_in_K(q(18, 2, 17), K);  // (1 + sqrt17)^2
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, q(1, 1, 17));
}

TEST(SqrtInK, SquaresRoundTrip) {
  std::mt19937_64 rng(7);
  for (long d : {2, 3, 5, 17, 26, 97}) {
    for (int i = 0; i < 300; ++i) {
      QuadElem s = random_elem(rng, d);
      QuadElem x = s * s;
      auto r = sqrt_in_field(x);
      ASSERT_TRUE(r) << x.str();
      EXPECT_EQ(*r * *r, x);
      EXPECT_TRUE(r->a() > 0 || (r->a() == 0 && r->b() >= 0));
    }
  }
}

TEST(FieldAxioms, RandomTriples) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    long d = std::vector<long>{2, 3, 5, 17, 89}[i % 5];
    QuadElem x = random_elem(rng, d), y = random_elem(rng, d), z = random_elem(rng, d);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
    EXPECT_EQ((x + y).conj(), x.conj() + y.conj());
    EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
    if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), QuadElem(1));
  }
}

TEST(ResidueMap, SplitAtTwo) {
  QuadField K(17);
  ResidueMap r(K, 2);
  EXPECT_EQ(r.splitting(), Splitting::Split);
  EXPECT_TRUE(qf_reduce_at_prime(q(1, 1, 17), r).is_zero());
}

TEST(ResidueMap, RationalReduction) {
  QuadField K(17);
  for (uint32_t p : {3u, 7u, 13u, 19u}) {
    ResidueMap r(K, p);
    EXPECT_EQ(qf_reduce_at_prime(QuadElem(5), r), r.field().from_int(5));
  }
}

TEST(ResidueMap, InertAtThree) {
  QuadField K(17);
  ResidueMap r(K, 3);
  EXPECT_EQ(r.splitting(), Splitting::Inert);
  EXPECT_EQ(r.q(), 9u);
  FqElem t = qf_reduce_at_prime(QuadElem::sqrt_d(K), r);
  EXPECT_EQ(t * t, r.field().from_int(2));
  EXPECT_EQ(t, r.field().gen());
}

TEST(ResidueMap, RamifiedAndBadInput) {
  QuadField K(15);
  ResidueMap r(K, 5);
  EXPECT_EQ(r.splitting(), Splitting::Ramified);
  EXPECT_TRUE(qf_reduce_at_prime(QuadElem::sqrt_d(K), r).is_zero());
  EXPECT_THROW(qf_reduce_at_prime(QuadElem(Rational(1, 5)), r), std::domain_error);
}

TEST(ResidueMap, Homomorphism) {
  std::mt19937_64 rng(3);
  for (long d : {2, 5, 17, 26}) {
    QuadField K(d);
    for (uint32_t p : {3u, 7u, 11u, 13u, 17u, 23u}) {
      ResidueMap r(K, p);
      for (int i = 0; i < 50; ++i) {
        QuadElem x = random_elem(rng, d), y = random_elem(rng, d);
        if (!r.can_reduce(x) || !r.can_reduce(y)) continue;
        EXPECT_EQ(r.reduce(x * y), r.reduce(x) * r.reduce(y));
        EXPECT_EQ(r.reduce(x + y), r.reduce(x) + r.reduce(y));
      }
    }
  }
}

TEST(FiniteField, QuarticFieldArithmetic) {
  const FiniteField& F = FiniteField::get(3, 4);
  EXPECT_EQ(F.q(), 81u);
  FqElem g = F.gen();
  EXPECT_EQ(F.pow(g, 80), F.one());
  int squares = 0;
  for (uint64_t i = 1; i < F.q(); ++i) {
    FqElem x = F.from_index(i);
    EXPECT_EQ(x * F.inv(x), F.one());
    if (F.legendre(x) == 1) {
      ++squares;
      auto s = F.sqrt(x);
      ASSERT_TRUE(s);
      EXPECT_EQ(*s * *s, x);
    }
  }
  EXPECT_EQ(squares, 40);
}
