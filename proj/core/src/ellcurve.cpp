#include "quadtor/ellcurve.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "quadtor/polyarith.hpp"

namespace quadtor {

EllipticCurveK::EllipticCurveK(const std::array<QuadElem, 5>& a, long d) : d_(d) {
  for (const auto& c : a) d_ = common_field(d_, c.field_d());
  a1 = a[0].in_field(d_);
  a2 = a[1].in_field(d_);
  a3 = a[2].in_field(d_);
  a4 = a[3].in_field(d_);
  a6 = a[4].in_field(d_);
  if (disc().is_zero()) throw std::invalid_argument("singular Weierstrass model");
}

EllipticCurveK EllipticCurveK::from_ints(const std::array<long, 5>& a, long d) {
  return EllipticCurveK({QuadElem(a[0]), QuadElem(a[1]), QuadElem(a[2]), QuadElem(a[3]), QuadElem(a[4])}, d);
}

bool EllipticCurveK::is_rational() const {
  return a1.is_rational() && a2.is_rational() && a3.is_rational() && a4.is_rational() && a6.is_rational();
}

EllipticCurveK EllipticCurveK::base_change(long d) const { return EllipticCurveK({a1, a2, a3, a4, a6}, d); }

Rational EllipticCurveK::j_invariant() const {
  QuadElem j = c4() * c4() * c4() / disc();
  if (!j.is_rational()) throw std::domain_error("j-invariant is not rational");
  return j.a();
}

std::string EllipticCurveK::str() const {
  std::ostringstream os;
  os << "[" << a1.str() << ", " << a2.str() << ", " << a3.str() << ", " << a4.str() << ", " << a6.str() << "]";
  return os.str();
}

ECPointK EllipticCurveK::point(const QuadElem& x, const QuadElem& y) const {
  ECPointK P = ECPointK::affine(x.in_field(d_), y.in_field(d_));
  if (!on_curve(P)) throw std::invalid_argument("point not on curve: " + to_string(P));
  return P;
}

bool ec_on_curve(const EllipticCurveK& E, const ECPointK& P) { return E.on_curve(P); }

namespace {
void require_on(const EllipticCurveK& E, const ECPointK& P) {
  if (!E.on_curve(P)) throw std::invalid_argument("point not on curve: " + to_string(P));
}
}  // namespace

ECPointK ec_add(const EllipticCurveK& E, const ECPointK& P, const ECPointK& Q) {
  require_on(E, P);
  require_on(E, Q);
  return E.add(P, Q);
}

ECPointK ec_neg(const EllipticCurveK& E, const ECPointK& P) {
  require_on(E, P);
  return E.neg(P);
}

ECPointK ec_mul(const EllipticCurveK& E, long n, const ECPointK& P) {
  require_on(E, P);
  return E.mul(n, P);
}

namespace {
struct ShortForm {
  Rational A, B, C;
};

ShortForm short_form(const EllipticCurveK& E) {
  if (!E.is_rational()) throw std::invalid_argument("twisting needs a curve over Q");
  const Rational a1 = E.a1.a(), a2 = E.a2.a(), a3 = E.a3.a(), a4 = E.a4.a(), a6 = E.a6.a();
  return {a2 + a1 * a1 / 4, a4 + a1 * a3 / 2, a6 + a3 * a3 / 4};
}
}  // namespace

EllipticCurveK ec_quadratic_twist(const EllipticCurveK& E, long d) {
  if (d == 0 || d == 1 || !is_squarefree(d)) throw std::invalid_argument("twist parameter must be squarefree and not 0 or 1");
  ShortForm s = short_form(E);
  Rational D(d);
  return EllipticCurveK({QuadElem(0), QuadElem(s.A * D), QuadElem(0), QuadElem(s.B * D * D), QuadElem(s.C * D * D * D)}, 0);
}

ECPointK ec_twist_point_to_K(const EllipticCurveK& E, long d, const ECPointK& P) {
  if (P.inf) return P;
  QuadField K(d);
  QuadElem sd = QuadElem::sqrt_d(K);
  QuadElem x = P.x / QuadElem(d);
  QuadElem yshort = P.y / (QuadElem(d) * sd);
  QuadElem y = yshort - (E.a1 * x + E.a3) * QuadElem(Rational(1, 2));
  ECPointK Q = ECPointK::affine(x.in_field(d), y.in_field(d));
  if (!E.base_change(d).on_curve(Q)) throw std::logic_error("twist map failed");
  return Q;
}

bool ec_good_reduction(const EllipticCurveK& E, const ResidueMap& r) {
  for (const QuadElem* c : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
    if (!r.can_reduce(*c)) return false;
  if (r.p() == 2) return false;
  return !r.reduce(E.disc()).is_zero();
}

Weierstrass<FqElem> ec_reduce(const EllipticCurveK& E, const ResidueMap& r) {
  return {r.reduce(E.a1), r.reduce(E.a2), r.reduce(E.a3), r.reduce(E.a4), r.reduce(E.a6)};
}

ECPointF ec_reduce_point(const ECPointK& P, const ResidueMap& r) {
  if (P.inf) return ECPointF::infinity();
  if (!r.can_reduce(P.x) || !r.can_reduce(P.y)) return ECPointF::infinity();
  return ECPointF::affine(r.reduce(P.x), r.reduce(P.y));
}

uint64_t ec_count_points(const Weierstrass<FqElem>& E) {
  const FiniteField& F = *E.a1.field;
  if (F.p() == 2) throw std::invalid_argument("point counting needs odd characteristic");
  const auto& sq = F.sqrt_counts();
  uint64_t n = 1;
  for (uint64_t i = 0; i < F.q(); ++i) n += sq[F.index(E.y_discriminant(F.from_index(i)))];
  return n;
}

DivisionPolynomials::DivisionPolynomials(const EllipticCurveK& E) {
  const long d = E.field_d();
  const QuadElem z(0, 0, d);
  const QuadElem b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();
  auto P = [&](std::vector<QuadElem> c) { return PolyK(std::move(c), z); };
  F_ = P({b6, b4 * 2L, b2, QuadElem(4)});
  F2_ = F_ * F_;
  memo_[0] = PolyK(z);
  memo_[1] = PolyK::constant(QuadElem(1, 0, d));
  memo_[2] = PolyK::constant(QuadElem(1, 0, d));
  memo_[3] = P({b8, b6 * 3L, b4 * 3L, b2, QuadElem(3)});
  memo_[4] = P({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, b8 * 10L, b6 * 10L, b4 * 5L, b2, QuadElem(2)});
}

const PolyK& DivisionPolynomials::g(int n) {
  if (n < 0) throw std::invalid_argument("negative division polynomial index");
  auto it = memo_.find(n);
  if (it != memo_.end()) return it->second;
  PolyK r(memo_[0]);
  const int m = n / 2;
  if (n % 2 == 1) {
    PolyK a = g(m + 2) * g(m).pow(3);
    PolyK b = g(m - 1) * g(m + 1).pow(3);
    if (m % 2 == 0)
      r = F2_ * a - b;
    else
      r = a - F2_ * b;
  } else {
    PolyK gm2 = g(m + 2), gm1 = g(m - 1), gmm2 = g(m - 2), gp1 = g(m + 1);
    r = g(m) * (gm2 * gm1 * gm1 - gmm2 * gp1 * gp1);
  }
  return memo_[n] = r;
}

PolyK DivisionPolynomials::torsion_x_poly(int n) {
  if (n < 2) throw std::invalid_argument("torsion polynomial needs n >= 2");
  return n % 2 == 1 ? g(n) : F_ * g(n);
}

std::string TorsionDesc::structure() const {
  if (m == 1) return "Z/" + std::to_string(n);
  return "Z/" + std::to_string(m) + " + Z/" + std::to_string(n);
}

std::vector<ECPointK> ec_torsion_points(const EllipticCurveK& E, int n) {
  const long d = E.field_d();
  std::set<ECPointK> pts{ECPointK::infinity()};
  if (n == 1) return {pts.begin(), pts.end()};
  DivisionPolynomials dp(E);
  PolyK f = dp.torsion_x_poly(n);
  std::vector<QuadElem> xs;
  if (d == 0) {
    for (const auto& [r, m] : rational_roots(f.map<Rational>([](const QuadElem& c) { return c.a(); }, Rational(0))))
      xs.emplace_back(r);
  } else {
    for (const auto& [r, m] : poly_roots_in_K(f, QuadField(d))) xs.push_back(r);
  }
  for (const auto& x : xs) {
    QuadElem disc = E.y_discriminant(x).in_field(d);
    auto s = sqrt_in_field(disc);
    if (!s) continue;
    QuadElem t = E.a1 * x + E.a3;
    for (const QuadElem& root : {*s, -*s}) {
      ECPointK P = ECPointK::affine((x).in_field(d), ((root - t) * QuadElem(Rational(1, 2))).in_field(d));
      if (!E.on_curve(P)) throw std::logic_error("torsion point off curve");
      if (E.mul(n, P).inf) pts.insert(P);
    }
  }
  return {pts.begin(), pts.end()};
}

long ec_torsion_bound(const EllipticCurveK& E, long d, int places, std::vector<std::pair<uint32_t, uint64_t>>* counts) {
  long g = 0;
  int used = 0;
  for (uint32_t p = 3; used < places; p = static_cast<uint32_t>(next_prime(p))) {
    if (p > 1000) throw std::runtime_error("no usable primes within scan bound");
    if (d != 0 && d % static_cast<long>(p) == 0) continue;
    std::optional<ResidueMap> r;
    if (d == 0)
      r.emplace(ResidueMap::rational(p));
    else
      r.emplace(QuadField(d), p);
    if (!ec_good_reduction(E, *r)) continue;
    uint64_t n = ec_count_points(ec_reduce(E, *r));
    if (counts) counts->emplace_back(p, n);
    g = std::gcd(g, static_cast<long>(n));
    ++used;
  }
  return g;
}

namespace {

struct Primary {
  long l = 1;
  int a = 0, b = 0;
  ECPointK g1, g2;
};

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int log_order(const EllipticCurveK& E, const ECPointK& P, long l) {
  int e = 0;
  ECPointK Q = P;
  while (!Q.inf) {
    Q = E.mul(l, Q);
    ++e;
    if (e > 64) throw std::logic_error("point is not l-primary torsion");
  }
  return e;
}

Primary assemble(const EllipticCurveK& E, long l, const std::vector<ECPointK>& pts) {
  Primary pr;
  pr.l = l;
  int t = 0;
  for (size_t s = pts.size(); s > 1; s /= l) ++t;
  if (ipow(l, t) != static_cast<long>(pts.size())) throw std::logic_error("primary part has non prime-power size");
  std::vector<int> ord;
  for (const auto& P : pts) ord.push_back(log_order(E, P, l));
  pr.b = *std::max_element(ord.begin(), ord.end());
  pr.a = t - pr.b;
  for (size_t i = 0; i < pts.size(); ++i)
    if (ord[i] == pr.b) {
      pr.g2 = pts[i];
      break;
    }
  if (pr.a > 0) {
    std::set<ECPointK> H;
    ECPointK Q = ECPointK::infinity();
    for (long i = 0; i < ipow(l, pr.b); ++i) {
      H.insert(Q);
      Q = E.add(Q, pr.g2);
    }
    bool found = false;
    for (size_t i = 0; i < pts.size() && !found; ++i) {
      if (ord[i] != pr.a) continue;
      if (!H.count(E.mul(ipow(l, pr.a - 1), pts[i]))) {
        pr.g1 = pts[i];
        found = true;
      }
    }
    if (!found) throw std::logic_error("no complement generator");
  }
  return pr;
}

TorsionDesc torsion_impl(const EllipticCurveK& E, const TorsionOptions& opt) {
  TorsionDesc td;
  const long d = E.field_d();
  td.bound = ec_torsion_bound(E, d, opt.places, &td.place_counts);
  long rest = td.bound;
  std::vector<Primary> parts;
  for (long l = 2; rest > 1; ++l) {
    if (rest % l) continue;
    int k = 0;
    while (rest % l == 0) {
      rest /= l;
      ++k;
    }
    if (l > opt.power_cap) continue;
    while (ipow(l, k) > opt.power_cap) --k;
    auto pts = ec_torsion_points(E, static_cast<int>(ipow(l, k)));
    if (pts.size() > 1) parts.push_back(assemble(E, l, pts));
  }
  ECPointK gm = ECPointK::infinity(), gn = ECPointK::infinity();
  for (const auto& pr : parts) {
    td.n *= ipow(pr.l, pr.b);
    td.m *= ipow(pr.l, pr.a);
    gn = E.add(gn, pr.g2);
    if (pr.a > 0) gm = E.add(gm, pr.g1);
  }
  if (td.m > 1) td.generators.push_back(gm);
  if (td.n > 1) td.generators.push_back(gn);
  std::set<ECPointK> all;
  ECPointK row = ECPointK::infinity();
  for (long i = 0; i < td.m; ++i) {
    ECPointK P = row;
    for (long j = 0; j < td.n; ++j) {
      all.insert(P);
      P = E.add(P, gn);
    }
    row = E.add(row, gm);
  }
  if (static_cast<long>(all.size()) != td.order()) throw std::logic_error("torsion generators are dependent");
  td.points.assign(all.begin(), all.end());
  return td;
}

}  // namespace

TorsionDesc ec_torsion_over_K(const EllipticCurveK& E, const QuadField& K, const TorsionOptions& opt) {
  return torsion_impl(E.base_change(K.d()), opt);
}

TorsionDesc ec_torsion_over_Q(const EllipticCurveK& E, const TorsionOptions& opt) {
  if (!E.is_rational()) throw std::invalid_argument("curve is not defined over Q");
  return torsion_impl(E, opt);
}

std::optional<long> ec_point_order(const EllipticCurveK& E, const ECPointK& P, long bound) {
  require_on(E, P);
  if (bound < 1) throw std::invalid_argument("order bound must be positive");
  ECPointK Q = P;
  for (long k = 1; k <= bound; ++k) {
    if (Q.inf) return k;
    Q = E.add(Q, P);
  }
  return std::nullopt;
}

void enumerate_abscissae(long d, long height, const std::function<void(const QuadElem&)>& visit) {
  for (long m = 1; m <= height; ++m) {
    const long vmax = d == 0 ? 0 : m;
    for (long u = -m; u <= m; ++u)
      for (long v = -vmax; v <= vmax; ++v)
        for (long w = 1; w <= m; ++w) {
          if (std::max({std::labs(u), std::labs(v), w}) != m) continue;
          if (std::gcd(std::gcd(u, v), w) != 1) continue;
          visit(QuadElem(make_rational(u, w), make_rational(v, w), d));
        }
  }
  // u = v = 0 has gcd w, so x = 0 appears only via w = 1 at m = 1
}

std::vector<ECPointK> ec_point_search(const EllipticCurveK& E0, const QuadField& K, long height) {
  if (height < 1) throw std::invalid_argument("search height must be positive");
  const EllipticCurveK E = E0.base_change(K.d());
  std::vector<ECPointK> out;
  enumerate_abscissae(K.d(), height, [&](const QuadElem& x) {
    auto s = sqrt_in_field(E.y_discriminant(x));
    if (!s) return;
    QuadElem t = E.a1 * x + E.a3;
    ECPointK P = ECPointK::affine(x, (*s - t) * QuadElem(Rational(1, 2)));
    out.push_back(P);
    if (!s->is_zero()) out.push_back(ECPointK::affine(x, (-*s - t) * QuadElem(Rational(1, 2))));
  });
  return out;
}

std::string to_string(const ECPointK& P) {
  if (P.inf) return "O";
  return "(" + P.x.str() + ", " + P.y.str() + ")";
}

}  // namespace quadtor
