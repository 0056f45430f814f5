#include "quadtor/hyperjac.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "quadtor/ellcurve.hpp"
#include "quadtor/finite_field.hpp"

namespace quadtor {

namespace {

long rat_mod_p(const Rational& c, uint32_t p) {
  Integer P(p);
  Integer den = mod_floor(c.get_den(), P);
  if (den == 0) throw std::domain_error("denominator divisible by p");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
  return mod_floor(c.get_num() * inv, P).get_si();
}

PolyF reduce_poly(const PolyQ& f, const FiniteField& F) {
  std::vector<FqElem> v;
  for (const auto& c : f.coeffs()) v.push_back(F.from_int(rat_mod_p(c, F.p())));
  return PolyF(std::move(v), F.zero());
}

bool denominators_prime_to(const PolyQ& f, uint32_t p) {
  for (const auto& c : f.coeffs())
    if (c.get_den() % p == 0) return false;
  return true;
}

PolyQ rational_part(const PolyK& f) {
  return f.map<Rational>(
      [](const QuadElem& c) {
        if (!c.is_rational()) throw std::invalid_argument("polynomial has irrational coefficients");
        return c.a();
      },
      Rational(0));
}

int v2(long n) {
  int e = 0;
  while (n > 0 && n % 2 == 0) {
    n /= 2;
    ++e;
  }
  return e;
}

long odd_part(long n) { return n >> v2(n); }

}  // namespace

HyperCurve::HyperCurve(PolyQ f) : f_(std::move(f)) {
  if (f_.degree() != 5 && f_.degree() != 6) throw std::invalid_argument("genus 2 curve needs deg f in {5, 6}");
  if (poly_gcd(f_, f_.derivative()).degree() > 0) throw std::invalid_argument("f is not squarefree");
}

int HyperCurve::infinity_points() const {
  if (!even()) return 1;
  return rational_sqrt(f_.lead()) ? 2 : 0;
}

HyperCurve HyperCurve::twist(long d) const {
  if (d == 0 || d == 1 || !is_squarefree(d)) throw std::invalid_argument("twist parameter must be squarefree and not 0 or 1");
  return HyperCurve(f_ * Rational(d));
}

bool HyperCurve::on_curve(const QuadElem& x, const QuadElem& y) const {
  QuadElem fx(0);
  for (int i = f_.degree(); i >= 0; --i) fx = fx * x + QuadElem(f_[i]);
  return fx == y * y;
}

std::string HyperCurve::str() const { return "y^2 = " + f_.str(); }

std::string MumfordTriple::str() const { return "(" + a.str() + ", " + b.str() + ", " + std::to_string(d) + ")"; }

MumfordTriple parse_triple(const std::string& text, long field_d) {
  std::string s = text;
  auto l = s.find_first_not_of(" \t");
  auto r = s.find_last_not_of(" \t");
  if (l == std::string::npos) throw std::invalid_argument("empty triple");
  s = s.substr(l, r - l + 1);
  if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  const char sep = s.find('|') != std::string::npos ? '|' : ',';
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("triple needs three fields: " + text);
  MumfordTriple t;
  t.a = poly_k(parse_poly(parts[0]), field_d);
  t.b = poly_k(parse_poly(parts[1]), field_d);
  Rational dd = parse_rational(parts[2]);
  if (dd.get_den() != 1 || dd < 0 || dd > 2) throw std::invalid_argument("triple weight must be 0, 1 or 2");
  t.d = static_cast<int>(dd.get_num().get_si());
  return t;
}

bool Place::operator==(const Place& o) const {
  if (kind != o.kind || mult != o.mult) return false;
  if (kind == Kind::Affine) return x == o.x && y == o.y;
  if (kind == Kind::Conjugate) return minpoly == o.minpoly && ypoly == o.ypoly;
  return true;
}

bool Place::operator<(const Place& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (kind == Kind::Affine) {
    if (x != o.x) return x < o.x;
    if (y != o.y) return y < o.y;
  } else if (kind == Kind::Conjugate) {
    if (minpoly.coeffs() != o.minpoly.coeffs()) return minpoly.coeffs() < o.minpoly.coeffs();
    if (ypoly.coeffs() != o.ypoly.coeffs()) return ypoly.coeffs() < o.ypoly.coeffs();
  }
  return mult < o.mult;
}

std::string Place::str() const {
  switch (kind) {
    case Kind::Affine:
      return "(" + x.str() + " : " + y.str() + " : 1)";
    case Kind::Conjugate:
      return "{" + minpoly.str() + " = 0, y = " + ypoly.str() + "}";
    case Kind::Infinity:
      return "inf";
    case Kind::InfinityPlus:
      return "inf+";
    case Kind::InfinityMinus:
      return "inf-";
  }
  return "?";
}

std::string DivisorClass::str() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& P : support)
    for (int i = 0; i < P.mult; ++i) {
      if (!first) os << " + ";
      os << P.str();
      first = false;
    }
  if (weight > 0) {
    if (first) os << "0";
    if (two_infinities) {
      os << " - ";
      if (weight != 2) os << weight << "/2*";
      os << "(inf+ + inf-)";
    } else {
      os << " - " << weight << "*inf";
    }
  } else {
    os << "0";
  }
  os << "]";
  return os.str();
}

HyperJacobian::HyperJacobian(const HyperCurve& C, long d) : C_(C), d_(d), ar_(poly_k(C.f(), d)) {
  if (d != 0) QuadField K(d);
}

JacElemK HyperJacobian::from_triple(const MumfordTriple& t) const {
  if (t.a.is_zero()) throw std::invalid_argument("invalid Mumford triple: a = 0");
  const long fd = d_;
  PolyK a = poly_k(t.a.coeffs(), fd).monic();
  PolyK b = poly_k(t.b.coeffs(), fd);
  if (t.d < a.degree()) throw std::invalid_argument("invalid Mumford triple: weight below deg a");
  JacElemK D{a, b % a, 0};
  if (!(ar_.f() - D.v * D.v).divisible_by(a))
    throw std::invalid_argument("invalid Mumford triple: b^2 != f mod a in " + t.str());
  if (!ar_.even()) {
    if (a.degree() > 2) return ar_.add(D, ar_.zero());
    return D;
  }
  if (t.d == 0) {
    if (a.degree() != 0 || !b.is_zero()) throw std::invalid_argument("invalid Mumford triple: weight 0 must be (1, 0, 0)");
    return ar_.zero();
  }
  if (t.d != 2) throw std::invalid_argument("invalid Mumford triple: sextic models use weight 0 or 2");
  const int k = 2 - a.degree();
  if (k < 0) throw std::invalid_argument("invalid Mumford triple: deg a exceeds weight");
  if (k > 0) {
    if (b.degree() > 3) throw std::invalid_argument("invalid Mumford triple: deg b > 3");
    const PolyK& V = ar_.vplus();
    int sign = 0;
    if (b[3] == V[3]) sign = 1;
    else if (b[3] == -V[3]) sign = -1;
    if (sign == 0) throw std::invalid_argument("invalid Mumford triple: leading term of b selects no infinity branch");
    if (k == 2 && !(b[2] == V[2] * QuadElem(sign)))
      throw std::invalid_argument("invalid Mumford triple: b does not follow one infinity branch");
    D.n = sign > 0 ? k : 0;
  }
  if (!ar_.is_valid(D)) throw std::invalid_argument("invalid Mumford triple: " + t.str());
  return D;
}

MumfordTriple HyperJacobian::to_triple(const JacElemK& D) const {
  if (!ar_.even()) return {D.u, D.v, D.u.degree()};
  if (ar_.is_zero(D)) return {D.u, D.v, 0};
  const int k = 2 - D.u.degree();
  if (k == 0) return {D.u, D.v, 2};
  const QuadElem sign(D.n > 0 ? 1 : -1);
  const PolyK& V = ar_.vplus();
  std::vector<QuadElem> top(4, QuadElem(0, 0, d_));
  for (int i = 4 - k; i <= 3; ++i) top[i] = V[i] * sign;
  PolyK T(std::move(top), QuadElem(0, 0, d_));
  return {D.u, T + (D.v - T) % D.u, 2};
}

JacElemK hj_cantor(const HyperJacobian& J, const JacElemK& A, const JacElemK& B) {
  if (!J.arith().is_valid(A) || !J.arith().is_valid(B)) throw std::invalid_argument("invalid Jacobian element");
  return J.arith().add(A, B);
}

DivisorClass hj_decode_mumford(const HyperJacobian& J, const MumfordTriple& t) {
  J.from_triple(t);
  const long d = J.field_d();
  PolyK a = poly_k(t.a.coeffs(), d).monic();
  PolyK b = poly_k(t.b.coeffs(), d);
  DivisorClass out;
  out.weight = t.d;
  out.two_infinities = J.curve().even();
  const int k = t.d - a.degree();
  if (k > 0) {
    Place P;
    P.mult = k;
    if (!J.curve().even()) {
      P.kind = Place::Kind::Infinity;
    } else {
      // B(1, 0) is the x^3 coefficient of b
      P.kind = b[3] == J.arith().vplus()[3] ? Place::Kind::InfinityPlus : Place::Kind::InfinityMinus;
    }
    out.support.push_back(P);
  }
  if (a.degree() > 2) throw std::invalid_argument("decode requires larger field");
  if (a.degree() > 0) {
    std::vector<std::pair<QuadElem, int>> roots;
    if (d == 0) {
      for (const auto& [r, m] : rational_roots(rational_part(a))) roots.emplace_back(QuadElem(r), m);
    } else {
      roots = poly_roots_in_K(a, QuadField(d));
    }
    int found = 0;
    for (const auto& [r, m] : roots) {
      Place P;
      P.kind = Place::Kind::Affine;
      P.x = r.in_field(d);
      P.y = b.eval(P.x).in_field(d);
      P.mult = m;
      if (!J.curve().on_curve(P.x, P.y)) throw std::logic_error("decoded point off curve");
      out.support.push_back(P);
      found += m;
    }
    if (found == 0 && a.degree() == 2) {
      Place P;
      P.kind = Place::Kind::Conjugate;
      P.minpoly = a;
      P.ypoly = b % a;
      out.support.push_back(P);
    } else if (found != a.degree()) {
      throw std::logic_error("root multiplicities do not add up");
    }
  }
  std::sort(out.support.begin(), out.support.end());
  return out;
}

MumfordTriple hj_encode(const HyperJacobian& J, const std::vector<Place>& points) {
  const auto& ar = J.arith();
  const long d = J.field_d();
  PolyK u = PolyK::constant(QuadElem(1, 0, d)), v(QuadElem(0, 0, d));
  int weight = 0, plus = 0, minus = 0;
  for (const auto& P : points) {
    weight += P.mult;
    switch (P.kind) {
      case Place::Kind::Affine: {
        if (!J.curve().on_curve(P.x, P.y)) throw std::invalid_argument("point not on curve: " + P.str());
        JacElemK Q = ar.point_class(P.x.in_field(d), P.y.in_field(d));
        for (int i = 0; i < P.mult; ++i) {
          auto [u2, v2, dd] = ar.compose(u, v, Q.u, Q.v);
          if (dd > 0) throw std::invalid_argument("divisor contains a point and its conjugate");
          u = u2;
          v = v2;
        }
        break;
      }
      case Place::Kind::Infinity:
        if (J.curve().even()) throw std::invalid_argument("sextic model has two points at infinity");
        break;
      case Place::Kind::InfinityPlus:
        plus += P.mult;
        break;
      case Place::Kind::InfinityMinus:
        minus += P.mult;
        break;
      case Place::Kind::Conjugate:
        throw std::invalid_argument("encode takes K-points only");
    }
  }
  if (!J.curve().even()) {
    if (plus || minus) throw std::invalid_argument("quintic model has a single point at infinity");
    if (u.degree() > 2) throw std::invalid_argument("encode supports weight at most 2");
    return {u, v, weight};
  }
  if (weight != 2 && weight != 0) throw std::invalid_argument("sextic divisors must have weight 2");
  if (plus && minus) throw std::invalid_argument("divisor contains inf+ + inf-");
  return J.to_triple({u, v, plus});
}

uint64_t hj_count_curve_points(const PolyQ& f, uint32_t p, int k) {
  const FiniteField& F = FiniteField::get(p, k);
  PolyF fp = reduce_poly(f, F);
  const auto& sq = F.sqrt_counts();
  uint64_t n = 0;
  for (uint64_t i = 0; i < F.q(); ++i) n += sq[F.index(fp.eval(F.from_index(i)))];
  if (f.degree() % 2 == 1)
    n += 1;
  else
    n += sq[F.index(fp.lead())];
  return n;
}

bool hj_good_prime(const HyperCurve& C, uint32_t p) {
  if (p == 2 || !is_prime(p)) return false;
  if (!denominators_prime_to(C.f(), p)) return false;
  const FiniteField& F = FiniteField::get(p, 1);
  PolyF fp = reduce_poly(C.f(), F);
  if (fp.degree() != C.degree()) return false;
  return poly_gcd(fp, fp.derivative()).degree() == 0;
}

uint64_t hj_count_jacobian_fp(const HyperCurve& C, uint32_t p, int k) {
  if (!hj_good_prime(C, p)) throw std::invalid_argument("bad reduction at p = " + std::to_string(p));
  uint64_t q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  const uint64_t n1 = hj_count_curve_points(C.f(), p, k);
  const uint64_t n2 = hj_count_curve_points(C.f(), p, 2 * k);
  return (n1 * n1 + n2) / 2 - q;
}

long hj_torsion_bound_over_Q(const HyperCurve& C, int places, std::vector<PlaceCount>* counts) {
  long g = 0;
  int used = 0;
  for (uint32_t p = 3; used < places; p = static_cast<uint32_t>(next_prime(p))) {
    if (p > 2000) throw std::runtime_error("no usable primes within scan bound");
    if (!hj_good_prime(C, p)) continue;
    uint64_t n = hj_count_jacobian_fp(C, p, 1);
    if (counts) counts->push_back({p, Splitting::Split, p, n});
    g = std::gcd(g, static_cast<long>(n));
    ++used;
  }
  return g;
}

long hj_torsion_bound_over_K(const HyperCurve& C, const QuadField& K, int places, std::vector<PlaceCount>* counts) {
  long g = 0;
  int used = 0;
  for (uint32_t p = 3; used < places; p = static_cast<uint32_t>(next_prime(p))) {
    if (p > 2000) throw std::runtime_error("no usable primes within scan bound");
    if (!hj_good_prime(C, p)) continue;
    ResidueMap r(K, p);
    int k = 1;
    if (r.splitting() == Splitting::Inert) {
      if (p > 31) continue;
      k = 2;
    }
    uint64_t n = hj_count_jacobian_fp(C, p, k);
    if (counts) counts->push_back({p, r.splitting(), r.q(), n});
    g = std::gcd(g, static_cast<long>(n));
    ++used;
  }
  return g;
}

namespace {

// Subgroup generated by the subgroup S and g, as the union of the cosets S + k g.
std::set<JacElemK> closure(const JacobianArith<QuadElem>& ar, const std::set<JacElemK>& S, const JacElemK& g, long cap) {
  std::set<JacElemK> out = S;
  for (JacElemK step = g; !S.count(step); step = ar.add(step, g)) {
    for (const auto& s : S) out.insert(ar.add(s, step));
    if (static_cast<long>(out.size()) > cap) throw std::runtime_error("torsion group exceeds enumeration cap");
  }
  return out;
}

}  // namespace

TwoTorsion hj_two_torsion_over_K(const HyperCurve& C, const QuadField& K) {
  const long d = K.d();
  HyperJacobian J(C, d);
  const auto& ar = J.arith();
  std::vector<PolyK> orbits;
  FactorListK fl = poly_factor_over_K(C.f(), K);
  for (const auto& [g, e] : fl.factors) {
    if (e != 1) throw std::invalid_argument("f is not squarefree");
    orbits.push_back(g.monic());
  }
  TwoTorsion T;
  for (const auto& g : orbits) T.orbit_sizes.push_back(g.degree());
  const bool has_inf = !C.even();
  if (has_inf) T.orbit_sizes.push_back(1);
  const size_t m = T.orbit_sizes.size();
  std::set<JacElemK> elems{ar.zero()};
  for (size_t mask = 1; mask < (size_t{1} << m); ++mask) {
    int total = 0;
    for (size_t i = 0; i < m; ++i)
      if (mask >> i & 1) total += T.orbit_sizes[i];
    if (total != 2) continue;
    PolyK u = PolyK::constant(QuadElem(1, 0, d));
    for (size_t i = 0; i < orbits.size(); ++i)
      if (mask >> i & 1) u = u * orbits[i];
    JacElemK D{u, PolyK(QuadElem(0, 0, d)), 0};
    if (!ar.is_zero(ar.add(D, D))) throw std::logic_error("Weierstrass class is not 2-torsion");
    elems.insert(D);
  }
  T.elements.assign(elems.begin(), elems.end());
  std::stable_partition(T.elements.begin(), T.elements.end(), [&](const JacElemK& D) { return ar.is_zero(D); });
  size_t n = T.elements.size();
  while (n > 1) {
    if (n % 2) throw std::logic_error("2-torsion count is not a power of 2");
    n /= 2;
    ++T.rank;
  }
  std::set<JacElemK> span{ar.zero()};
  for (const auto& D : T.elements) {
    if (span.count(D)) continue;
    span = closure(ar, span, D, 64);
    T.generators.push_back(J.to_triple(D));
  }
  return T;
}

std::vector<long> abelian_invariants(const std::vector<long>& element_orders) {
  const long n = static_cast<long>(element_orders.size());
  std::vector<std::vector<int>> per_prime;
  std::vector<long> primes;
  long rest = n;
  for (long l = 2; rest > 1; ++l) {
    if (rest % l) continue;
    int e = 0;
    while (rest % l == 0) {
      rest /= l;
      ++e;
    }
    // s_k = log_l #G[l^k]
    std::vector<int> s{0};
    long pk = 1;
    for (int k = 1; s.back() < e; ++k) {
      pk *= l;
      long c = 0;
      for (long o : element_orders)
        if (pk % o == 0) ++c;
      int sk = 0;
      while (c > 1) {
        if (c % l) throw std::invalid_argument("element orders do not form a group");
        c /= l;
        ++sk;
      }
      if (sk == s.back() && k > 1) throw std::invalid_argument("element orders do not form a group");
      s.push_back(sk);
    }
    // t_k = number of cyclic factors of exponent >= k
    std::vector<int> exps;
    const int K = static_cast<int>(s.size()) - 1;
    for (int k = 1; k <= K; ++k) {
      int tk = s[k] - s[k - 1];
      int tk1 = k < K ? s[k + 1] - s[k] : 0;
      for (int i = 0; i < tk - tk1; ++i) exps.push_back(k);
    }
    std::sort(exps.rbegin(), exps.rend());
    primes.push_back(l);
    per_prime.push_back(exps);
  }
  size_t width = 0;
  for (const auto& e : per_prime) width = std::max(width, e.size());
  std::vector<long> inv(width, 1);
  for (size_t i = 0; i < primes.size(); ++i)
    for (size_t j = 0; j < per_prime[i].size(); ++j)
      for (int k = 0; k < per_prime[i][j]; ++k) inv[j] *= primes[i];
  std::reverse(inv.begin(), inv.end());
  return inv;
}

std::string JacTorsion::structure() const {
  if (!exact) return "order in [" + std::to_string(order_lo) + ", " + std::to_string(order_hi) + "]";
  if (invariants.empty()) return "trivial";
  std::string s;
  for (long n : invariants) {
    if (!s.empty()) s += " + ";
    s += "Z/" + std::to_string(n);
  }
  return s;
}

namespace {

// Square root of c0 + c1 x in Q[x]/(x^2 + p x + q), a field.
std::optional<std::pair<Rational, Rational>> sqrt_mod_quadratic(const Rational& c0, const Rational& c1, const Rational& p,
                                                                 const Rational& q) {
  Rational norm = c0 * c0 - p * c0 * c1 + q * c1 * c1;
  auto rn = rational_sqrt(norm);
  if (!rn) return std::nullopt;
  Rational trace = 2 * c0 - p * c1;
  for (const Rational& n : {*rn, Rational(-*rn)}) {
    auto t = rational_sqrt(Rational(trace + 2 * n));
    if (!t || *t == 0) continue;
    Rational s0 = (c0 + n) / *t, s1 = c1 / *t;
    // check (s0 + s1 x)^2 mod the quadratic
    Rational x2c0 = -q, x2c1 = -p;
    Rational r0 = s0 * s0 + s1 * s1 * x2c0, r1 = 2 * s0 * s1 + s1 * s1 * x2c1;
    if (r0 == c0 && r1 == c1) return std::make_pair(s0, s1);
  }
  if (c1 == 0) {
    Rational delta = p * p / 4 - q;
    auto b = rational_sqrt(Rational(c0 / delta));
    if (b) return std::make_pair(Rational(*b * p / 2), *b);
  }
  return std::nullopt;
}

// Classes (a, b) with a monic integral of height <= H, deg a in {1, 2}, b rational with
// b^2 = scale * f mod a; returned inside J(K) as (a, b / sqrt(scale)).
std::vector<JacElemK> small_classes(const HyperJacobian& J, long scale, int H) {
  const auto& ar = J.arith();
  const long d = J.field_d();
  const PolyQ g = J.curve().f() * Rational(scale);
  QuadElem unit = scale == 1 ? QuadElem(1, 0, d) : QuadElem(0, 1, d) / QuadElem(scale);
  auto lift = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<QuadElem> av, bv;
    for (const auto& c : a) av.push_back(QuadElem(c, 0, d));
    for (const auto& c : b) bv.push_back(QuadElem(c, 0, d) * unit);
    JacElemK D{PolyK(av, QuadElem(0, 0, d)), PolyK(bv, QuadElem(0, 0, d)), ar.even() ? 1 : 0};
    if (D.u.degree() == 2) D.n = 0;
    if (!ar.is_valid(D)) throw std::logic_error("search produced an invalid class");
    return D;
  };
  std::vector<JacElemK> out;
  if (ar.even() && scale == 1) {
    out.push_back({PolyK::constant(QuadElem(1, 0, d)), PolyK(QuadElem(0, 0, d)), 2});
  }
  for (long h = 0; h <= H; ++h) {
    for (long r = -h; r <= h; ++r) {
      if (std::labs(r) != h) continue;
      auto y = rational_sqrt(g.eval(Rational(r)));
      if (!y) continue;
      out.push_back(lift({Rational(-r), Rational(1)}, {*y}));
      if (*y != 0) out.push_back(lift({Rational(-r), Rational(1)}, {Rational(-*y)}));
    }
    for (long p = -h; p <= h; ++p)
      for (long q = -h; q <= h; ++q) {
        if (std::max(std::labs(p), std::labs(q)) != h) continue;
        PolyQ a = poly_q({q, p, 1});
        if (!rational_roots(a).empty()) continue;
        PolyQ gm = g % a;
        auto s = sqrt_mod_quadratic(gm[0], gm[1], Rational(p), Rational(q));
        if (!s) continue;
        out.push_back(lift({Rational(q), Rational(p), Rational(1)}, {s->first, s->second}));
        out.push_back(lift({Rational(q), Rational(p), Rational(1)}, {Rational(-s->first), Rational(-s->second)}));
      }
  }
  return out;
}

struct Realized {
  std::set<JacElemK> group;
  std::vector<JacElemK> generators;
};

// Certifies J(K)[2^oo] = J(K)[2]: every nonzero 2-torsion class must fail to be a double
// in J(F_p) at some good place of degree 1.
bool certify_two_primary(const HyperCurve& C, const QuadField& K, const TwoTorsion& two, std::vector<uint32_t>* used) {
  std::vector<JacElemK> open;
  for (const auto& T : two.elements)
    if (T.u.degree() > 0 || T.n != (C.even() ? 1 : 0)) open.push_back(T);
  for (uint32_t p = 3; p <= 60 && !open.empty(); p = static_cast<uint32_t>(next_prime(p))) {
    if (!hj_good_prime(C, p)) continue;
    ResidueMap r(K, p);
    if (r.splitting() == Splitting::Inert) continue;
    const FiniteField& F = r.field();
    JacobianArith<FqElem> ar(reduce_poly(C.f(), F));
    std::vector<FqElem> field;
    for (uint64_t i = 0; i < F.q(); ++i) field.push_back(F.from_index(i));
    auto elems = enumerate_jacobian(ar, field);
    if (elems.size() != hj_count_jacobian_fp(C, p)) throw std::logic_error("Jacobian enumeration disagrees with point counts");
    std::set<JacElemF> doubles;
    for (const auto& x : elems) doubles.insert(ar.add(x, x));
    std::vector<JacElemK> still;
    for (const auto& T : open) {
      bool reducible = true;
      for (const auto& c : T.u.coeffs()) reducible = reducible && r.can_reduce(c);
      for (const auto& c : T.v.coeffs()) reducible = reducible && r.can_reduce(c);
      if (reducible) {
        JacElemF Tf{poly_f(T.u, r), poly_f(T.v, r), T.n};
        if (ar.is_valid(Tf) && Tf.u.degree() == T.u.degree() && !doubles.count(Tf)) {
          if (used && (used->empty() || used->back() != p)) used->push_back(p);
          continue;
        }
      }
      still.push_back(T);
    }
    open = std::move(still);
  }
  return open.empty();
}

Realized realize(const JacobianArith<QuadElem>& ar, const std::vector<JacElemK>& cands, long multiplier, long target,
                 long cap) {
  Realized R;
  R.group.insert(ar.zero());
  for (const auto& c : cands) {
    if (static_cast<long>(R.group.size()) >= target) break;
    JacElemK g = ar.mul(multiplier, c);
    if (R.group.count(g)) continue;
    R.group = closure(ar, R.group, g, cap);
    R.generators.push_back(g);
  }
  return R;
}

}  // namespace

std::vector<std::pair<QuadElem, QuadElem>> hj_point_search(const HyperCurve& C, long d, long height) {
  std::vector<std::pair<QuadElem, QuadElem>> out;
  PolyK f = poly_k(C.f(), d);
  enumerate_abscissae(d, height, [&](const QuadElem& x) {
    auto s = sqrt_in_field(f.eval(x).in_field(d));
    if (!s) return;
    out.emplace_back(x, s->in_field(d));
    if (!s->is_zero()) out.emplace_back(x, (-*s).in_field(d));
  });
  return out;
}

JacTorsion hj_torsion_over_K(const HyperCurve& C, const QuadField& K, const JacTorsionOptions& opt) {
  const long d = K.d();
  HyperJacobian J(C, d);
  const auto& ar = J.arith();
  JacTorsion T;
  T.bound = hj_torsion_bound_over_K(C, K, opt.places, &T.place_counts);
  const long base_bound = hj_torsion_bound_over_Q(C);
  const long twist_bound = hj_torsion_bound_over_Q(C.twist(d));
  T.odd_base_bound = odd_part(base_bound);
  T.odd_twist_bound = odd_part(twist_bound);

  TwoTorsion two = hj_two_torsion_over_K(C, K);
  T.two_rank = two.rank;

  auto base_c = small_classes(J, 1, opt.height);
  auto twist_c = small_classes(J, d, opt.height);
  Realized ob = realize(ar, base_c, 1L << v2(base_bound), T.odd_base_bound, opt.max_group);
  Realized ot = realize(ar, twist_c, 1L << v2(twist_bound), T.odd_twist_bound, opt.max_group);
  T.odd_base = static_cast<long>(ob.group.size());
  T.odd_twist = static_cast<long>(ot.group.size());

  std::set<JacElemK> odd = ob.group;
  for (const auto& g : ot.generators) odd = closure(ar, odd, g, opt.max_group);
  const long odd_hi = std::min(odd_part(T.bound), T.odd_base_bound * T.odd_twist_bound);
  const bool odd_exact = static_cast<long>(odd.size()) == odd_hi;

  int e2 = v2(T.bound);
  std::set<JacElemK> two_group(two.elements.begin(), two.elements.end());
  std::vector<JacElemK> two_gens;
  for (const auto& g : two.generators) two_gens.push_back(J.from_triple(g));
  if (static_cast<int>(two_gens.size()) < e2 && certify_two_primary(C, K, two, &T.two_primary_places)) {
    e2 = static_cast<int>(two_gens.size());
  }
  if (static_cast<int>(two_gens.size()) < e2) {
    std::vector<JacElemK> cands = base_c;
    cands.insert(cands.end(), twist_c.begin(), twist_c.end());
    for (const auto& [x, y] : hj_point_search(C, d, 3)) cands.push_back(ar.point_class(x, y));
    const long m = odd_part(T.bound);
    for (const auto& c : cands) {
      if (static_cast<long>(two_group.size()) >= (1L << e2)) break;
      JacElemK g = ar.mul(m, c);
      if (two_group.count(g)) continue;
      two_group = closure(ar, two_group, g, opt.max_group);
      two_gens.push_back(g);
    }
  }
  const bool two_exact = static_cast<long>(two_group.size()) == (1L << e2);

  T.order_lo = static_cast<long>(odd.size() * two_group.size());
  T.order_hi = odd_hi << e2;
  T.exact = odd_exact && two_exact;
  for (const auto& g : ob.generators) T.generators.push_back(g);
  for (const auto& g : ot.generators) T.generators.push_back(g);
  for (const auto& g : two_gens) T.generators.push_back(g);
  if (!T.exact) return T;

  std::set<JacElemK> all;
  for (const auto& a : odd)
    for (const auto& b : two_group) all.insert(ar.add(a, b));
  if (static_cast<long>(all.size()) != T.order_lo) throw std::logic_error("odd and 2-primary parts overlap");
  T.elements.push_back(ar.zero());
  for (const auto& D : all)
    if (!ar.is_zero(D)) T.elements.push_back(D);
  std::vector<long> orders;
  for (const auto& D : T.elements) {
    auto o = ar.order(D, T.order_lo);
    if (!o) throw std::logic_error("element order exceeds group order");
    orders.push_back(*o);
  }
  T.invariants = abelian_invariants(orders);
  return T;
}

}  // namespace quadtor
