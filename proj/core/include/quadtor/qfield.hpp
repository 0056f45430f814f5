#pragma once

#include <optional>
#include <string>

#include "quadtor/finite_field.hpp"
#include "quadtor/rational.hpp"

namespace quadtor {

class QuadField {
 public:
  explicit QuadField(long d);
  long d() const { return d_; }
  bool operator==(const QuadField& o) const { return d_ == o.d_; }
  bool operator!=(const QuadField& o) const { return d_ != o.d_; }

 private:
  long d_;
};

// a + b*sqrt(d). A field tag of 0 marks a rational that combines with any field.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(long a) : a_(a) {}
  QuadElem(const Rational& a) : a_(a) {}
  QuadElem(const Rational& a, const Rational& b, const QuadField& K);
  QuadElem(const Rational& a, const Rational& b, long d);

  static QuadElem sqrt_d(const QuadField& K) { return QuadElem(0, 1, K); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long field_d() const { return d_; }
  QuadElem in_field(long d) const;

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QuadElem conj() const;
  Rational norm() const;
  Rational trace() const;
  QuadElem inverse() const;

  QuadElem operator-() const;
  QuadElem& operator+=(const QuadElem& y);
  QuadElem& operator-=(const QuadElem& y);
  QuadElem& operator*=(const QuadElem& y);
  QuadElem& operator/=(const QuadElem& y);

  bool operator==(const QuadElem& y) const;
  bool operator!=(const QuadElem& y) const { return !(*this == y); }
  // Lexicographic on (a, b); only used for deterministic ordering.
  bool operator<(const QuadElem& y) const;

  std::string str() const;
  double approx() const;

 private:
  Rational a_{0};
  Rational b_{0};
  long d_ = 0;
};

QuadElem operator+(QuadElem x, const QuadElem& y);
QuadElem operator-(QuadElem x, const QuadElem& y);
QuadElem operator*(QuadElem x, const QuadElem& y);
QuadElem operator*(QuadElem x, long n);
QuadElem operator/(QuadElem x, const QuadElem& y);

bool is_zero(const QuadElem& x);
QuadElem zero_like(const QuadElem& x);
QuadElem one_like(const QuadElem& x);
std::string to_string(const QuadElem& x);

// Square root inside the element's own field (Q when the tag is 0).
// Among the two roots, returns the one with a > 0, or a == 0 and b >= 0.
std::optional<QuadElem> sqrt_in_field(const QuadElem& x);
std::optional<QuadElem> qf_sqrt_in_K(const QuadElem& x, const QuadField& K);

long common_field(long d1, long d2);

enum class Splitting { Split, Inert, Ramified };
std::string to_string(Splitting s);

class ResidueMap {
 public:
  ResidueMap(const QuadField& K, uint32_t p);
  // Reduction Q -> F_p; d() is 0 and the splitting reads as Split.
  static ResidueMap rational(uint32_t p);

  uint32_t p() const { return p_; }
  long d() const { return d_; }
  Splitting splitting() const { return splitting_; }
  const FiniteField& field() const { return *field_; }
  uint64_t q() const { return field_->q(); }
  const FqElem& sqrt_image() const { return sqrt_image_; }

  bool can_reduce(const QuadElem& x) const;
  FqElem reduce(const Rational& x) const;
  FqElem reduce(const QuadElem& x) const;

 private:
  ResidueMap() = default;
  uint32_t p_;
  long d_;
  Splitting splitting_;
  const FiniteField* field_;
  FqElem sqrt_image_;
};

FqElem qf_reduce_at_prime(const QuadElem& x, const ResidueMap& r);

}  // namespace quadtor
