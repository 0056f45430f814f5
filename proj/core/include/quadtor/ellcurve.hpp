#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadtor/poly.hpp"
#include "quadtor/qfield.hpp"

namespace quadtor {

template <class R>
struct ECPoint {
  bool inf = true;
  R x{}, y{};

  static ECPoint infinity() { return ECPoint{}; }
  static ECPoint affine(R x, R y) { return ECPoint{false, std::move(x), std::move(y)}; }
  bool operator==(const ECPoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
  bool operator!=(const ECPoint& o) const { return !(*this == o); }
  bool operator<(const ECPoint& o) const {
    if (inf != o.inf) return inf;
    if (inf) return false;
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
template <class R>
struct Weierstrass {
  R a1, a2, a3, a4, a6;

  R b2() const { return a1 * a1 + a2 * 4L; }
  R b4() const { return a1 * a3 + a4 * 2L; }
  R b6() const { return a3 * a3 + a6 * 4L; }
  R b8() const { return a1 * a1 * a6 + a2 * a6 * 4L - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  R c4() const { return b2() * b2() - b4() * 24L; }
  R c6() const { return -(b2() * b2() * b2()) + b2() * b4() * 36L - b6() * 216L; }
  R disc() const {
    R B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -(B2 * B2 * B8) - B4 * B4 * B4 * 8L - B6 * B6 * 27L + B2 * B4 * B6 * 9L;
  }

  bool on_curve(const ECPoint<R>& P) const {
    if (P.inf) return true;
    const R& x = P.x;
    const R& y = P.y;
    return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6;
  }

  // Discriminant of the y-quadratic at x: (a1 x + a3)^2 + 4 (x^3 + a2 x^2 + a4 x + a6).
  R y_discriminant(const R& x) const {
    R t = a1 * x + a3;
    return t * t + (x * x * x + a2 * x * x + a4 * x + a6) * 4L;
  }

  ECPoint<R> neg(const ECPoint<R>& P) const {
    if (P.inf) return P;
    return ECPoint<R>::affine(P.x, -P.y - a1 * P.x - a3);
  }

  ECPoint<R> add(const ECPoint<R>& P, const ECPoint<R>& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    R lambda, nu;
    if (P.x == Q.x) {
      R den = P.y + Q.y + a1 * Q.x + a3;
      if (quadtor::is_zero(den)) return ECPoint<R>::infinity();
      R d2 = P.y * 2L + a1 * P.x + a3;
      lambda = (P.x * P.x * 3L + a2 * P.x * 2L + a4 - a1 * P.y) / d2;
      nu = (-(P.x * P.x * P.x) + a4 * P.x + a6 * 2L - a3 * P.y) / d2;
    } else {
      R dx = Q.x - P.x;
      lambda = (Q.y - P.y) / dx;
      nu = (P.y * Q.x - Q.y * P.x) / dx;
    }
    R x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
    R y3 = -(lambda + a1) * x3 - nu - a3;
    return ECPoint<R>::affine(x3, y3);
  }

  ECPoint<R> mul(long n, const ECPoint<R>& P) const {
    ECPoint<R> base = n < 0 ? neg(P) : P;
    unsigned long m = n < 0 ? -static_cast<unsigned long>(n) : n;
    ECPoint<R> acc = ECPoint<R>::infinity();
    while (m) {
      if (m & 1) acc = add(acc, base);
      m >>= 1;
      if (m) base = add(base, base);
    }
    return acc;
  }
};

using ECPointK = ECPoint<QuadElem>;
using ECPointF = ECPoint<FqElem>;

// Curve over Q (field tag 0) or over Q(sqrt d).
class EllipticCurveK : public Weierstrass<QuadElem> {
 public:
  EllipticCurveK(const std::array<QuadElem, 5>& a, long d = 0);
  static EllipticCurveK from_ints(const std::array<long, 5>& a, long d = 0);

  long field_d() const { return d_; }
  bool is_rational() const;
  EllipticCurveK base_change(long d) const;
  Rational j_invariant() const;
  std::string str() const;

  ECPointK point(const QuadElem& x, const QuadElem& y) const;

 private:
  long d_;
};

bool ec_on_curve(const EllipticCurveK& E, const ECPointK& P);
ECPointK ec_add(const EllipticCurveK& E, const ECPointK& P, const ECPointK& Q);
ECPointK ec_neg(const EllipticCurveK& E, const ECPointK& P);
ECPointK ec_mul(const EllipticCurveK& E, long n, const ECPointK& P);

EllipticCurveK ec_quadratic_twist(const EllipticCurveK& E, long d);
// Carries a point of the twist by d onto the original curve over Q(sqrt d).
ECPointK ec_twist_point_to_K(const EllipticCurveK& E, long d, const ECPointK& P);

Weierstrass<FqElem> ec_reduce(const EllipticCurveK& E, const ResidueMap& r);
ECPointF ec_reduce_point(const ECPointK& P, const ResidueMap& r);
bool ec_good_reduction(const EllipticCurveK& E, const ResidueMap& r);
uint64_t ec_count_points(const Weierstrass<FqElem>& E);

// The polynomial g_n: psi_n for odd n, psi_n / psi_2 for even n.
class DivisionPolynomials {
 public:
  explicit DivisionPolynomials(const EllipticCurveK& E);
  const PolyK& g(int n);
  // x-coordinates of the nonzero points killed by n are the roots of this polynomial.
  PolyK torsion_x_poly(int n);

 private:
  PolyK F_, F2_;
  std::map<int, PolyK> memo_;
};

struct TorsionDesc {
  long m = 1, n = 1;
  std::vector<ECPointK> generators;
  std::vector<ECPointK> points;
  long bound = 0;
  std::vector<std::pair<uint32_t, uint64_t>> place_counts;
  long order() const { return m * n; }
  std::string structure() const;
};

struct TorsionOptions {
  int places = 5;
  int power_cap = 24;
};

// Group of points killed by n over the curve's field (tag 0: Q).
std::vector<ECPointK> ec_torsion_points(const EllipticCurveK& E, int n);
long ec_torsion_bound(const EllipticCurveK& E, long d, int places, std::vector<std::pair<uint32_t, uint64_t>>* counts = nullptr);
TorsionDesc ec_torsion_over_K(const EllipticCurveK& E, const QuadField& K, const TorsionOptions& opt = {});
TorsionDesc ec_torsion_over_Q(const EllipticCurveK& E, const TorsionOptions& opt = {});

std::optional<long> ec_point_order(const EllipticCurveK& E, const ECPointK& P, long bound);

// Visits each abscissa (u + v sqrt d) / w with gcd(u, v, w) = 1 and |u|, |v|, w <= height once,
// by increasing max(|u|, |v|, w), then lexicographically in (u, v, w). d = 0 restricts to v = 0.
void enumerate_abscissae(long d, long height, const std::function<void(const QuadElem&)>& visit);
std::vector<ECPointK> ec_point_search(const EllipticCurveK& E, const QuadField& K, long height);

std::string to_string(const ECPointK& P);

}  // namespace quadtor
