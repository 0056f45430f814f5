#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "quadtor/poly.hpp"
#include "quadtor/polyarith.hpp"
#include "quadtor/qfield.hpp"

namespace quadtor {

// Reduced Jacobian element of y^2 = f(x), genus 2.
// Quintic f: class of div(u, v) - deg(u) inf, n = 0.
// Sextic f with square leading coefficient: class of
// div(u, v) + n inf+ + (2 - deg u - n) inf- - (inf+ + inf-), the identity being (1, 0, 1).
template <class R>
struct JacElem {
  Poly<R> u, v;
  int n = 0;

  bool operator==(const JacElem& o) const { return n == o.n && u == o.u && v == o.v; }
  bool operator!=(const JacElem& o) const { return !(*this == o); }
  bool operator<(const JacElem& o) const {
    if (n != o.n) return n < o.n;
    if (u.degree() != o.u.degree()) return u.degree() < o.u.degree();
    if (u.coeffs() != o.u.coeffs()) return u.coeffs() < o.u.coeffs();
    if (v.degree() != o.v.degree()) return v.degree() < o.v.degree();
    return v.coeffs() < o.v.coeffs();
  }
};

template <class R>
class JacobianArith {
 public:
  explicit JacobianArith(Poly<R> f) : f_(std::move(f)) {
    const int deg = f_.degree();
    if (deg != 5 && deg != 6) throw std::invalid_argument("genus 2 needs deg f in {5, 6}");
    const R& z = f_.zero();
    if (deg == 6) {
      auto c = sqrt_in_field(f_.lead());
      if (!c) throw std::invalid_argument("sextic model needs a square leading coefficient");
      // V = polynomial part of sqrt(f) at the plus branch
      std::vector<R> w(4, z);
      w[3] = *c;
      R two_c = *c * 2L;
      w[2] = f_[5] / two_c;
      w[1] = (f_[4] - w[2] * w[2]) / two_c;
      w[0] = (f_[3] - w[1] * w[2] * 2L) / two_c;
      vplus_ = Poly<R>(std::move(w), z);
      tail_deg_ = (f_ - vplus_ * vplus_).degree();
    }
  }

  const Poly<R>& f() const { return f_; }
  bool even() const { return f_.degree() == 6; }
  const Poly<R>& vplus() const { return vplus_; }
  const R& zero_coeff() const { return f_.zero(); }

  JacElem<R> zero() const {
    return {Poly<R>::constant(one_like(f_.zero())), Poly<R>(f_.zero()), even() ? 1 : 0};
  }

  bool is_zero(const JacElem<R>& D) const { return D == zero(); }

  bool is_valid(const JacElem<R>& D) const {
    if (!D.u.is_monic() || D.u.degree() > 2) return false;
    if (D.v.degree() >= D.u.degree()) return false;
    if (!(f_ - D.v * D.v).divisible_by(D.u)) return false;
    if (!even()) return D.n == 0;
    return D.n >= 0 && D.n <= 2 - D.u.degree();
  }

  // Class of P - inf (quintic) or P + inf+ - (inf+ + inf-) (sextic).
  JacElem<R> point_class(const R& x, const R& y) const {
    if (!(f_.eval(x) == y * y)) throw std::invalid_argument("point not on curve");
    const R one = one_like(f_.zero());
    return {Poly<R>(std::vector<R>{-x, one}, f_.zero()), Poly<R>::constant(y), even() ? 1 : 0};
  }

  JacElem<R> neg(const JacElem<R>& D) const {
    JacElem<R> r{D.u, (-D.v) % D.u, D.n};
    if (even()) r.n = 2 - D.u.degree() - D.n;
    return r;
  }

  JacElem<R> add(const JacElem<R>& A, const JacElem<R>& B) const {
    auto [u, v, dd] = compose(A.u, A.v, B.u, B.v);
    if (!even()) {
      while (u.degree() > 2) {
        Poly<R> u2 = ((f_ - v * v) / u).monic();
        v = (-v) % u2;
        u = std::move(u2);
      }
      return {u, v, 0};
    }
    const int ma = 2 - A.u.degree() - A.n, mb = 2 - B.u.degree() - B.n;
    int N = A.n + B.n + dd - 1, M = ma + mb + dd - 1;
    while (u.degree() > 2) step(u, v, N, M, N >= M ? 1 : -1);
    while (N < 0) step(u, v, N, M, -1);
    while (M < 0) step(u, v, N, M, 1);
    if (u.degree() + N + M != 2) throw std::logic_error("balanced reduction lost weight");
    if (u.degree() == 0 && N == 1) return zero();
    return {u, v, N};
  }

  JacElem<R> sub(const JacElem<R>& A, const JacElem<R>& B) const { return add(A, neg(B)); }

  JacElem<R> mul(long k, const JacElem<R>& D) const {
    JacElem<R> base = k < 0 ? neg(D) : D;
    unsigned long m = k < 0 ? -static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
    JacElem<R> acc = zero();
    while (m) {
      if (m & 1) acc = add(acc, base);
      m >>= 1;
      if (m) base = add(base, base);
    }
    return acc;
  }

  std::optional<long> order(const JacElem<R>& D, long bound) const {
    JacElem<R> acc = D;
    for (long k = 1; k <= bound; ++k) {
      if (is_zero(acc)) return k;
      acc = add(acc, D);
    }
    return std::nullopt;
  }

  // Semi-reduced sum of div(u1, v1) and div(u2, v2); the third value is the degree
  // of the removed principal part.
  std::tuple<Poly<R>, Poly<R>, int> compose(const Poly<R>& u1, const Poly<R>& v1, const Poly<R>& u2,
                                            const Poly<R>& v2) const {
    auto g1 = poly_xgcd(u1, u2);
    auto g2 = poly_xgcd(g1.g, v1 + v2);
    const Poly<R>& d = g2.g;
    Poly<R> s1 = g2.s * g1.s, s2 = g2.s * g1.t, s3 = g2.t;
    Poly<R> u = (u1 * u2).exact_div(d * d);
    Poly<R> v = (s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + f_)).exact_div(d) % u;
    return {u, v, d.degree()};
  }

 private:
  // Pole order at inf+ of y - w, given P = V - w (negative means a zero).
  int pole_order(const Poly<R>& P) const { return P.is_zero() ? tail_deg_ - 3 : P.degree(); }

  // Replaces div(u, v) by the residual divisor of y - w, w = sign*V + ((v - sign*V) mod u).
  void step(Poly<R>& u, Poly<R>& v, int& N, int& M, int sign) const {
    Poly<R> sv = sign > 0 ? vplus_ : -vplus_;
    Poly<R> w = sv + (v - sv) % u;
    Poly<R> u2 = (f_ - w * w).exact_div(u).monic();
    const int a = pole_order(vplus_ - w);
    const int b = pole_order(vplus_ + w);
    if (a + b != u.degree() + u2.degree()) throw std::logic_error("balanced reduction degree mismatch");
    N += a - u2.degree();
    M += b - u2.degree();
    v = (-w) % u2;
    u = std::move(u2);
  }

  Poly<R> f_;
  Poly<R> vplus_;
  int tail_deg_ = 0;
};

// All reduced elements of J over a finite field whose elements are listed in `field`.
template <class R>
std::vector<JacElem<R>> enumerate_jacobian(const JacobianArith<R>& ar, const std::vector<R>& field) {
  const R z = ar.zero_coeff();
  const R one = one_like(z);
  const Poly<R>& f = ar.f();
  const Poly<R> df = f.derivative();
  auto lin = [&](const R& c0, const R& c1) { return Poly<R>(std::vector<R>{c0, c1}, z); };
  auto roots_of = [&](const R& a) {
    std::vector<R> out;
    if (auto s = sqrt_in_field(a)) {
      out.push_back(*s);
      if (!quadtor::is_zero(*s)) out.push_back(-*s);
    }
    return out;
  };
  std::vector<JacElem<R>> out;
  const Poly<R> unit = Poly<R>::constant(one);
  if (ar.even()) {
    for (int n = 0; n <= 2; ++n) out.push_back({unit, Poly<R>(z), n});
  } else {
    out.push_back(ar.zero());
  }
  for (const R& r : field)
    for (const R& s : roots_of(f.eval(r))) {
      Poly<R> u = lin(-r, one), v = Poly<R>::constant(s);
      out.push_back({u, v, 0});
      if (ar.even()) out.push_back({u, v, 1});
    }
  for (const R& c1 : field)
    for (const R& c0 : field) {
      Poly<R> u(std::vector<R>{c0, c1, one}, z);
      // roots of u by scan
      std::vector<R> rs;
      for (const R& r : field)
        if (quadtor::is_zero(u.eval(r))) rs.push_back(r);
      if (rs.size() == 1 || (rs.size() == 2 && rs[0] == rs[1])) {
        const R& r = rs[0];
        for (const R& s : roots_of(f.eval(r))) {
          if (quadtor::is_zero(s)) continue;
          R slope = df.eval(r) / (s * 2L);
          out.push_back({u, lin(s - slope * r, slope), 0});
        }
      } else if (rs.size() == 2) {
        for (const R& s1 : roots_of(f.eval(rs[0])))
          for (const R& s2 : roots_of(f.eval(rs[1]))) {
            R slope = (s1 - s2) / (rs[0] - rs[1]);
            out.push_back({u, lin(s1 - slope * rs[0], slope), 0});
          }
      } else {
        // F[x]/(u) is a field: square roots via norm and trace
        Poly<R> g = f % u;
        const R g0 = g[0], g1 = g[1];
        if (quadtor::is_zero(g0) && quadtor::is_zero(g1)) {
          out.push_back({u, Poly<R>(z), 0});
          continue;
        }
        const R norm = g0 * g0 - c1 * g0 * g1 + c0 * g1 * g1;
        const R trace = g0 * 2L - c1 * g1;
        std::vector<Poly<R>> sols;
        for (const R& n : roots_of(norm))
          for (const R& t : roots_of(trace + n * 2L)) {
            if (quadtor::is_zero(t)) continue;
            Poly<R> v = lin((g0 + n) / t, g1 / t);
            if ((v * v - f) % u == Poly<R>(z) && std::find(sols.begin(), sols.end(), v) == sols.end()) sols.push_back(v);
          }
        if (sols.empty()) {
          for (const R& b1 : field) {
            Poly<R> v = lin(b1 * c1 / (one * 2L), b1);
            if (!quadtor::is_zero(b1) && (v * v - f) % u == Poly<R>(z) &&
                std::find(sols.begin(), sols.end(), v) == sols.end())
              sols.push_back(v);
          }
        }
        for (auto& v : sols) out.push_back({u, v, 0});
      }
    }
  return out;
}

using JacElemK = JacElem<QuadElem>;
using JacElemF = JacElem<FqElem>;

class HyperCurve {
 public:
  // f over Q, degree 5 or 6, squarefree; sextic models need a square leading coefficient
  // for Jacobian arithmetic but not for point counting.
  explicit HyperCurve(PolyQ f);

  const PolyQ& f() const { return f_; }
  int degree() const { return f_.degree(); }
  bool even() const { return f_.degree() == 6; }
  int genus() const { return 2; }
  // Number of rational points at infinity: 1 (quintic), 2 or 0 (sextic).
  int infinity_points() const;
  HyperCurve twist(long d) const;
  bool on_curve(const QuadElem& x, const QuadElem& y) const;
  std::string str() const;

 private:
  PolyQ f_;
};

// Triple (a(x), b(x), d) in the (a|b|d) notation.
struct MumfordTriple {
  PolyK a, b;
  int d = 0;
  bool operator==(const MumfordTriple& o) const { return d == o.d && a == o.a && b == o.b; }
  std::string str() const;
};

MumfordTriple parse_triple(const std::string& text, long field_d = 0);

struct Place {
  enum class Kind { Affine, Conjugate, Infinity, InfinityPlus, InfinityMinus };
  Kind kind = Kind::Affine;
  QuadElem x, y;       // Affine
  PolyK minpoly, ypoly;  // Conjugate: x a root of minpoly (irreducible quadratic), y = ypoly(x)
  int mult = 1;

  bool operator==(const Place& o) const;
  bool operator<(const Place& o) const;
  std::string str() const;
};

struct DivisorClass {
  std::vector<Place> support;  // sorted, with multiplicities
  int weight = 0;              // d
  bool two_infinities = false;
  std::string str() const;
};

// Jacobian of a catalog-style curve over Q, working over Q (d = 0) or Q(sqrt d).
class HyperJacobian {
 public:
  HyperJacobian(const HyperCurve& C, long d);

  const HyperCurve& curve() const { return C_; }
  long field_d() const { return d_; }
  const JacobianArith<QuadElem>& arith() const { return ar_; }

  // Validates and normalizes a triple (b reduced mod a).
  JacElemK from_triple(const MumfordTriple& t) const;
  MumfordTriple to_triple(const JacElemK& D) const;
  MumfordTriple normalize(const MumfordTriple& t) const { return to_triple(from_triple(t)); }

 private:
  HyperCurve C_;
  long d_;
  JacobianArith<QuadElem> ar_;
};

JacElemK hj_cantor(const HyperJacobian& J, const JacElemK& A, const JacElemK& B);
DivisorClass hj_decode_mumford(const HyperJacobian& J, const MumfordTriple& t);
// Effective divisor of K-points (affine, or infinity) to a triple of weight = number of points.
MumfordTriple hj_encode(const HyperJacobian& J, const std::vector<Place>& points);

// #C(F_{p^k}) including points at infinity.
uint64_t hj_count_curve_points(const PolyQ& f, uint32_t p, int k);
// #J(F_p), or #J(F_{p^2}) when k = 2.
uint64_t hj_count_jacobian_fp(const HyperCurve& C, uint32_t p, int k = 1);
bool hj_good_prime(const HyperCurve& C, uint32_t p);

struct PlaceCount {
  uint32_t p;
  Splitting splitting;
  uint64_t q;
  uint64_t count;
};

long hj_torsion_bound_over_Q(const HyperCurve& C, int places = 8, std::vector<PlaceCount>* counts = nullptr);
long hj_torsion_bound_over_K(const HyperCurve& C, const QuadField& K, int places = 6,
                             std::vector<PlaceCount>* counts = nullptr);

struct TwoTorsion {
  int rank = 0;
  std::vector<int> orbit_sizes;  // including inf for quintic models
  std::vector<JacElemK> elements;  // all of J(K)[2]
  std::vector<MumfordTriple> generators;
};

TwoTorsion hj_two_torsion_over_K(const HyperCurve& C, const QuadField& K);

// Invariant factors d1 | d2 | ... of a finite abelian group from its element orders.
std::vector<long> abelian_invariants(const std::vector<long>& element_orders);

struct JacTorsion {
  bool exact = false;
  long order_lo = 1, order_hi = 0;
  std::vector<long> invariants;
  long bound = 0;
  std::vector<PlaceCount> place_counts;
  long odd_base = 1, odd_twist = 1;  // realized odd parts over Q of the curve and of its twist
  long odd_base_bound = 0, odd_twist_bound = 0;
  int two_rank = 0;
  std::vector<uint32_t> two_primary_places;  // places certifying that no 2-torsion class halves
  std::vector<JacElemK> generators;
  std::vector<JacElemK> elements;  // sorted, identity first; filled when exact

  std::string structure() const;
};

struct JacTorsionOptions {
  int height = 10;
  int places = 6;
  long max_group = 4096;
};

JacTorsion hj_torsion_over_K(const HyperCurve& C, const QuadField& K, const JacTorsionOptions& opt = {});

// Affine K-points (x, y) with x of height <= height, in enumeration order.
std::vector<std::pair<QuadElem, QuadElem>> hj_point_search(const HyperCurve& C, long d, long height);

}  // namespace quadtor
