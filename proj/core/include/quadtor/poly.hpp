#pragma once

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quadtor/finite_field.hpp"
#include "quadtor/qfield.hpp"
#include "quadtor/rational.hpp"

namespace quadtor {

inline bool is_zero(const Rational& x) { return x == 0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }

// Dense univariate polynomial, coefficients in ascending order. The prototype
// zero carries the coefficient context (quadratic field tag, finite field).
template <class R>
class Poly {
 public:
  Poly() : zero_() {}
  explicit Poly(const R& zero) : zero_(zero_like(zero)) {}
  Poly(std::vector<R> coeffs, const R& zero) : c_(std::move(coeffs)), zero_(zero_like(zero)) { trim(); }

  static Poly constant(const R& c) { return Poly(std::vector<R>{c}, c); }
  static Poly monomial(const R& c, int deg) {
    std::vector<R> v(deg + 1, zero_like(c));
    v[deg] = c;
    return Poly(std::move(v), c);
  }
  static Poly x(const R& proto) { return monomial(one_like(proto), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const R& zero() const { return zero_; }
  const std::vector<R>& coeffs() const { return c_; }
  const R& operator[](int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero_; }
  const R& lead() const { return c_.empty() ? zero_ : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == one_like(zero_); }

  template <class X>
  X eval(const X& x) const {
    X acc = zero_like(x);
    for (int i = degree(); i >= 0; --i) acc = acc * x + X(c_[i]);
    return acc;
  }
  R operator()(const R& x) const { return eval<R>(x); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(zero_);
    std::vector<R> v;
    v.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<long>(i));
    return Poly(std::move(v), zero_);
  }

  Poly monic() const {
    if (c_.empty()) return *this;
    R inv = one_like(zero_) / lead();
    return *this * inv;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
    std::vector<R> v(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (quadtor::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v), a.zero_);
  }
  friend Poly operator*(Poly a, const R& s) {
    for (auto& x : a.c_) x *= s;
    a.trim();
    return a;
  }
  friend Poly operator*(const R& s, Poly a) { return std::move(a) * s; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Euclidean division over a field.
  std::pair<Poly, Poly> divmod(const Poly& b) const {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = *this;
    if (r.degree() < b.degree()) return {Poly(zero_), r};
    std::vector<R> q(r.degree() - b.degree() + 1, zero_);
    R inv = one_like(zero_) / b.lead();
    const int db = b.degree();
    for (int i = r.degree(); i >= db; --i) {
      if (quadtor::is_zero(r.c_[i])) continue;
      R t = r.c_[i] * inv;
      q[i - db] = t;
      for (int j = 0; j <= db; ++j) r.c_[i - db + j] -= t * b.c_[j];
    }
    r.trim();
    return {Poly(std::move(q), zero_), r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  // Exact quotient; throws when b does not divide.
  Poly exact_div(const Poly& b) const {
    auto [q, r] = divmod(b);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
  }
  bool divisible_by(const Poly& b) const { return divmod(b).second.is_zero(); }

  Poly pow(unsigned e) const {
    Poly r = constant(one_like(zero_));
    Poly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Coefficients of degree < n.
  Poly truncate(int n) const {
    std::vector<R> v(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), std::max(n, 0)));
    return Poly(std::move(v), zero_);
  }
  Poly shift(int n) const {
    if (is_zero()) return *this;
    std::vector<R> v(n, zero_);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v), zero_);
  }

  template <class S, class F>
  Poly<S> map(F f, const S& zero) const {
    std::vector<S> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(f(x));
    return Poly<S>(std::move(v), zero);
  }

  std::string str(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      if (quadtor::is_zero(c_[i])) continue;
      std::string s = to_string(c_[i]);
      bool compound = s.find_first_of("+-", 1) != std::string::npos;
      bool neg = !compound && s[0] == '-';
      if (neg) s = s.substr(1);
      if (compound) s = "(" + s + ")";
      if (!first) os << (neg ? " - " : " + ");
      else if (neg) os << "-";
      first = false;
      if (i == 0) {
        os << s;
      } else {
        if (s != "1") os << s << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && quadtor::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<R> c_;
  R zero_;
};

template <class R>
Poly<R> poly_gcd(Poly<R> a, Poly<R> b) {
  while (!b.is_zero()) {
    Poly<R> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// g = s*a + t*b with g monic.
template <class R>
struct XGcd {
  Poly<R> g, s, t;
};

template <class R>
XGcd<R> poly_xgcd(const Poly<R>& a, const Poly<R>& b) {
  const R& z = a.zero();
  Poly<R> r0 = a, r1 = b;
  Poly<R> s0 = Poly<R>::constant(one_like(z)), s1(z);
  Poly<R> t0(z), t1 = Poly<R>::constant(one_like(z));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<R> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<R> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  R inv = one_like(z) / r0.lead();
  return {r0 * inv, s0 * inv, t0 * inv};
}

using PolyQ = Poly<Rational>;
using PolyK = Poly<QuadElem>;
using PolyF = Poly<FqElem>;

PolyQ poly_q(const std::vector<long>& coeffs);
PolyQ poly_q(std::initializer_list<long> coeffs);
PolyQ poly_q(const std::vector<Rational>& coeffs);
PolyK poly_k(const PolyQ& f, long d = 0);
PolyK poly_k(const std::vector<QuadElem>& coeffs, long d = 0);
PolyF poly_f(const PolyQ& f, const ResidueMap& r);
PolyF poly_f(const PolyK& f, const ResidueMap& r);
PolyF poly_f(const std::vector<long>& coeffs, const FiniteField& F);

// Parses expressions such as "x^2 + 2x - 1/3" or "-(x)" with rational coefficients.
PolyQ parse_poly(const std::string& text);

}  // namespace quadtor
