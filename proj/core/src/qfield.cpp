#include "quadtor/qfield.hpp"

#include <cmath>
#include <stdexcept>

namespace quadtor {

QuadField::QuadField(long d) : d_(d) {
  if (d <= 1 || !is_squarefree(d)) throw std::invalid_argument("QuadField requires squarefree d > 1, got " + std::to_string(d));
}

long common_field(long d1, long d2) {
  if (d1 == 0) return d2;
  if (d2 == 0 || d1 == d2) return d1;
  throw std::domain_error("mixed quadratic fields " + std::to_string(d1) + " and " + std::to_string(d2));
}

QuadElem::QuadElem(const Rational& a, const Rational& b, const QuadField& K) : a_(a), b_(b), d_(K.d()) {}

QuadElem::QuadElem(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
  if (d != 0) QuadField check(d);
  if (d == 0 && b != 0) throw std::domain_error("irrational part without a field");
}

QuadElem QuadElem::in_field(long d) const {
  QuadElem r = *this;
  r.d_ = common_field(d_, d);
  return r;
}

QuadElem QuadElem::conj() const {
  QuadElem r = *this;
  r.b_ = -b_;
  return r;
}

Rational QuadElem::norm() const { return a_ * a_ - b_ * b_ * d_; }

Rational QuadElem::trace() const { return 2 * a_; }

QuadElem QuadElem::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in quadratic field");
  Rational n = norm();
  QuadElem r = *this;
  r.a_ = a_ / n;
  r.b_ = -b_ / n;
  return r;
}

QuadElem QuadElem::operator-() const {
  QuadElem r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

QuadElem& QuadElem::operator+=(const QuadElem& y) {
  d_ = common_field(d_, y.d_);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& y) {
  d_ = common_field(d_, y.d_);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& y) {
  d_ = common_field(d_, y.d_);
  if (b_ == 0 && y.b_ == 0) {
    a_ *= y.a_;
  } else if (y.b_ == 0) {
    a_ *= y.a_;
    b_ *= y.a_;
  } else if (b_ == 0) {
    b_ = a_ * y.b_;
    a_ *= y.a_;
  } else {
    Rational na = a_ * y.a_ + b_ * y.b_ * d_;
    b_ = a_ * y.b_ + b_ * y.a_;
    a_ = na;
  }
  return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& y) {
  if (y.is_zero()) throw std::domain_error("division by zero in quadratic field");
  d_ = common_field(d_, y.d_);
  if (y.b_ == 0) {
    a_ /= y.a_;
    b_ /= y.a_;
    return *this;
  }
  return *this *= y.inverse();
}

bool QuadElem::operator==(const QuadElem& y) const {
  if (a_ != y.a_ || b_ != y.b_) return false;
  return b_ == 0 || d_ == y.d_;
}

bool QuadElem::operator<(const QuadElem& y) const {
  if (a_ != y.a_) return a_ < y.a_;
  return b_ < y.b_;
}

std::string QuadElem::str() const {
  if (b_ == 0) return a_.get_str();
  std::string root = "sqrt(" + std::to_string(d_) + ")";
  std::string bpart;
  Rational ab = abs(b_);
  if (ab == 1) {
    bpart = root;
  } else if (ab.get_den() == 1) {
    bpart = ab.get_num().get_str() + "*" + root;
  } else {
    bpart = (ab.get_num() == 1 ? root : ab.get_num().get_str() + "*" + root) + "/" + ab.get_den().get_str();
  }
  if (a_ == 0) return (b_ < 0 ? "-" : "") + bpart;
  return a_.get_str() + (b_ < 0 ? " - " : " + ") + bpart;
}

double QuadElem::approx() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_)); }

QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }
QuadElem operator*(QuadElem x, long n) { return x *= QuadElem(n); }
QuadElem operator/(QuadElem x, const QuadElem& y) { return x /= y; }

bool is_zero(const QuadElem& x) { return x.is_zero(); }
QuadElem zero_like(const QuadElem& x) { return QuadElem(0, 0, x.field_d()); }
QuadElem one_like(const QuadElem& x) { return QuadElem(1, 0, x.field_d()); }
std::string to_string(const QuadElem& x) { return x.str(); }

std::optional<QuadElem> sqrt_in_field(const QuadElem& x) {
  const long d = x.field_d();
  if (x.is_zero()) return x;
  const Rational& u = x.a();
  const Rational& v = x.b();
  if (v == 0) {
    if (auto r = rational_sqrt(u)) return QuadElem(*r, 0, d);
    if (d == 0) return std::nullopt;
    if (auto r = rational_sqrt(u / d)) return QuadElem(0, *r, d);
    return std::nullopt;
  }
  // (p + q sqrt d)^2 = u + v sqrt d  =>  p^2 = (u +- sqrt(norm)) / 2, q = v / (2p)
  auto s = rational_sqrt(x.norm());
  if (!s) return std::nullopt;
  for (const Rational& P : {Rational((u + *s) / 2), Rational((u - *s) / 2)}) {
    if (P <= 0) continue;
    auto p = rational_sqrt(P);
    if (!p) continue;
    QuadElem r(*p, v / (2 * *p), d);
    if (r * r == x) return r;
  }
  return std::nullopt;
}

std::optional<QuadElem> qf_sqrt_in_K(const QuadElem& x, const QuadField& K) { return sqrt_in_field(x.in_field(K.d())); }

std::string to_string(Splitting s) {
  switch (s) {
    case Splitting::Split:
      return "split";
    case Splitting::Inert:
      return "inert";
    case Splitting::Ramified:
      return "ramified";
  }
  return "?";
}

ResidueMap::ResidueMap(const QuadField& K, uint32_t p) : p_(p), d_(K.d()) {
  if (!is_prime(p)) throw std::invalid_argument("residue map needs a prime");
  long dm = static_cast<long>(mod_floor(Integer(d_), Integer(p)).get_si());
  if (p == 2) {
    const FiniteField& F = FiniteField::get(2, 1);
    field_ = &F;
    splitting_ = (d_ % 8 == 1) ? Splitting::Split : Splitting::Ramified;
    sqrt_image_ = F.from_int(dm);
    return;
  }
  if (dm == 0) {
    const FiniteField& F = FiniteField::get(p, 1);
    field_ = &F;
    splitting_ = Splitting::Ramified;
    sqrt_image_ = F.zero();
    return;
  }
  const FiniteField& Fp = FiniteField::get(p, 1);
  if (Fp.legendre(Fp.from_int(dm)) == 1) {
    field_ = &Fp;
    splitting_ = Splitting::Split;
    sqrt_image_ = *Fp.sqrt(Fp.from_int(dm));
    return;
  }
  // F_{p^2} = F_p[t] / (t^2 - d)
  const FiniteField& F = FiniteField::get(p, std::vector<uint32_t>{static_cast<uint32_t>(p - dm), 0});
  field_ = &F;
  splitting_ = Splitting::Inert;
  sqrt_image_ = F.gen();
}

ResidueMap ResidueMap::rational(uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("residue map needs a prime");
  ResidueMap r;
  r.p_ = p;
  r.d_ = 0;
  r.splitting_ = Splitting::Split;
  r.field_ = &FiniteField::get(p, 1);
  r.sqrt_image_ = r.field_->zero();
  return r;
}

bool ResidueMap::can_reduce(const QuadElem& x) const {
  return x.a().get_den() % p_ != 0 && x.b().get_den() % p_ != 0;
}

FqElem ResidueMap::reduce(const Rational& x) const {
  Integer den = mod_floor(x.get_den(), Integer(p_));
  if (den == 0) throw std::domain_error("bad reduction input");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(p_).get_mpz_t());
  Integer r = mod_floor(x.get_num() * inv, Integer(p_));
  return field_->from_int(r.get_si());
}

FqElem ResidueMap::reduce(const QuadElem& x) const {
  if (x.field_d() != 0 && x.field_d() != d_) throw std::domain_error("mixed quadratic fields in reduction");
  FqElem a = reduce(x.a());
  if (x.b() == 0) return a;
  if (d_ == 0) throw std::domain_error("irrational element reduced through a map on Q");
  return a + reduce(x.b()) * sqrt_image_;
}

FqElem qf_reduce_at_prime(const QuadElem& x, const ResidueMap& r) { return r.reduce(x); }

}  // namespace quadtor
