#include "quadtor/polyarith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace quadtor {

PolyQ poly_q(const std::vector<long>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return PolyQ(std::move(v), Rational(0));
}

PolyQ poly_q(std::initializer_list<long> coeffs) { return poly_q(std::vector<long>(coeffs)); }

PolyQ poly_q(const std::vector<Rational>& coeffs) { return PolyQ(coeffs, Rational(0)); }

PolyK poly_k(const PolyQ& f, long d) {
  return f.map<QuadElem>([d](const Rational& c) { return QuadElem(c, 0, d); }, QuadElem(0, 0, d));
}

PolyK poly_k(const std::vector<QuadElem>& coeffs, long d) {
  std::vector<QuadElem> v;
  for (const auto& c : coeffs) v.push_back(c.in_field(d));
  return PolyK(std::move(v), QuadElem(0, 0, d));
}

PolyF poly_f(const PolyQ& f, const ResidueMap& r) {
  return f.map<FqElem>([&r](const Rational& c) { return r.reduce(c); }, r.field().zero());
}

PolyF poly_f(const PolyK& f, const ResidueMap& r) {
  return f.map<FqElem>([&r](const QuadElem& c) { return r.reduce(c); }, r.field().zero());
}

PolyF poly_f(const std::vector<long>& coeffs, const FiniteField& F) {
  std::vector<FqElem> v;
  for (long c : coeffs) v.push_back(F.from_int(c));
  return PolyF(std::move(v), F.zero());
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  PolyQ parse() {
    PolyQ r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("cannot parse polynomial '" + s_ + "': " + what + " at offset " + std::to_string(i_));
  }
  Integer integer() {
    skip();
    size_t j = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (j == i_) fail("expected a number");
    return Integer(s_.substr(j, i_ - j));
  }
  PolyQ expr() {
    PolyQ r = poly_q({});
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = s_[i_++] == '-';
    PolyQ t = term();
    r = neg ? r - t : r + t;
    while (peek() == '+' || peek() == '-') {
      neg = s_[i_++] == '-';
      t = term();
      r = neg ? r - t : r + t;
    }
    return r;
  }
  PolyQ term() {
    PolyQ r = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++i_;
        r = r * power();
      } else if (c == '/') {
        ++i_;
        Integer den = integer();
        if (den == 0) fail("division by zero");
        r = r * Rational(make_rational(Integer(1), den));
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == '(') {
        r = r * power();
      } else {
        return r;
      }
    }
  }
  PolyQ power() {
    PolyQ b = atom();
    if (peek() == '^') {
      ++i_;
      Integer e = integer();
      if (e > 64) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }
  PolyQ atom() {
    char c = peek();
    if (c == 'x') {
      ++i_;
      return PolyQ::x(Rational(0));
    }
    if (c == '(') {
      ++i_;
      PolyQ r = expr();
      if (peek() != ')') fail("expected ')'");
      ++i_;
      return r;
    }
    return PolyQ::constant(Rational(integer()));
  }

  const std::string& s_;
  size_t i_ = 0;
};

}  // namespace

PolyQ parse_poly(const std::string& text) { return PolyParser(text).parse(); }

namespace {

// ---- dense polynomials mod a word-size prime ----
using Vec = std::vector<int64_t>;

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int64_t inv_mod(int64_t a, int64_t p) {
  int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr) {
    int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("non-invertible residue");
  return (t % p + p) % p;
}

Vec to_mod(const std::vector<Integer>& F, int64_t p) {
  Vec v(F.size());
  for (size_t i = 0; i < F.size(); ++i) v[i] = mod_floor(F[i], Integer(static_cast<long>(p))).get_si();
  trim(v);
  return v;
}

int64_t eval_mod(const Vec& a, int64_t x, int64_t p) {
  int64_t acc = 0;
  for (size_t i = a.size(); i-- > 0;) acc = (acc * x + a[i]) % p;
  return acc;
}

Vec deriv_mod(const Vec& a, int64_t p) {
  Vec v;
  for (size_t i = 1; i < a.size(); ++i) v.push_back(a[i] * static_cast<int64_t>(i % p) % p);
  trim(v);
  return v;
}

Vec mul_mod(const Vec& a, const Vec& b, int64_t p) {
  if (a.empty() || b.empty()) return {};
  Vec v(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) v[i + j] = (v[i + j] + a[i] * b[j]) % p;
  trim(v);
  return v;
}

Vec rem_mod(Vec a, const Vec& b, int64_t p, Vec* quot = nullptr) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  int64_t inv = inv_mod(b.back(), p);
  int db = static_cast<int>(b.size()) - 1;
  if (quot) quot->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    int64_t t = a[i] * inv % p;
    if (t == 0) continue;
    if (quot) (*quot)[i - db] = t;
    for (int j = 0; j <= db; ++j) a[i - db + j] = ((a[i - db + j] - t * b[j]) % p + p) % p;
  }
  trim(a);
  if (quot) trim(*quot);
  return a;
}

Vec gcd_mod(Vec a, Vec b, int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vec r = rem_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    int64_t inv = inv_mod(a.back(), p);
    for (auto& x : a) x = x * inv % p;
  }
  return a;
}

Vec sub_mod(Vec a, const Vec& b, int64_t p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  trim(a);
  return a;
}

bool squarefree_mod(const Vec& a, int64_t p) {
  Vec g = gcd_mod(a, deriv_mod(a, p), p);
  return g.size() == 1;
}

// ---- integer helpers ----
Integer eval_int_mod(const std::vector<Integer>& F, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (size_t i = F.size(); i-- > 0;) acc = mod_floor(acc * x + F[i], m);
  return acc;
}

Integer inv_int_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), Integer(mod_floor(a, m)).get_mpz_t(), m.get_mpz_t()))
    throw std::domain_error("non-invertible during lifting");
  return r;
}

std::vector<Integer> derivative_int(const std::vector<Integer>& F) {
  std::vector<Integer> v;
  for (size_t i = 1; i < F.size(); ++i) v.push_back(F[i] * static_cast<unsigned long>(i));
  return v;
}

// Newton lift of a simple root r mod p to modulus >= target. Returns (root, modulus).
Integer hensel_lift(const std::vector<Integer>& F, Integer r, int64_t p, const Integer& target, Integer& modulus) {
  std::vector<Integer> dF = derivative_int(F);
  Integer m = p;
  while (m <= target) {
    Integer m2 = m * m;
    Integer fx = eval_int_mod(F, r, m2);
    Integer dfx = eval_int_mod(dF, r, m2);
    r = mod_floor(r - fx * inv_int_mod(dfx, m2), m2);
    m = m2;
  }
  modulus = m;
  return r;
}

Rational cauchy_bound(const std::vector<Integer>& F) {
  Rational mx = 0;
  Integer lc = abs(F.back());
  for (size_t i = 0; i + 1 < F.size(); ++i) {
    Rational t = make_rational(abs(F[i]), lc);
    if (t > mx) mx = t;
  }
  return 1 + mx;
}

template <class X>
X eval_integer_poly(const std::vector<Integer>& F, const X& x) {
  X acc = zero_like(x);
  for (size_t i = F.size(); i-- > 0;) acc = acc * x + X(Rational(F[i]));
  return acc;
}

// Roots in Q(sqrt d) (d = 0: Q) of a squarefree primitive integer polynomial.
// Returns nullopt if no prime with squarefree reduction was found quickly.
std::optional<std::vector<QuadElem>> roots_squarefree(const std::vector<Integer>& F, long d, int prime_attempts) {
  const int n = static_cast<int>(F.size()) - 1;
  std::vector<QuadElem> out;
  if (n <= 0) return out;
  if (n == 1) {
    out.emplace_back(make_rational(-F[0], F[1]), 0, d);
    return out;
  }
  const Integer lc = F.back();
  int64_t p = 2;
  Vec Fp;
  int attempts = 0;
  while (true) {
    p = static_cast<int64_t>(next_prime(static_cast<uint64_t>(p)));
    if (p > 200000) return std::nullopt;
    if (lc % p == 0) continue;
    if (d != 0) {
      if (d % p == 0) continue;
      int64_t dm = ((d % p) + p) % p;
      // Euler criterion for the split condition
      int64_t e = (p - 1) / 2, b = dm, r = 1;
      while (e) {
        if (e & 1) r = static_cast<int64_t>(static_cast<__int128>(r) * b % p);
        b = static_cast<int64_t>(static_cast<__int128>(b) * b % p);
        e >>= 1;
      }
      if (r != 1) continue;
    }
    Fp = to_mod(F, p);
    if (static_cast<int>(Fp.size()) - 1 != n) continue;
    if (squarefree_mod(Fp, p)) break;
    if (++attempts >= prime_attempts) return std::nullopt;
  }
  std::vector<int64_t> roots_p;
  for (int64_t x = 0; x < p; ++x)
    if (eval_mod(Fp, x, p) == 0) roots_p.push_back(x);
  if (roots_p.empty()) return out;

  const Integer B = ceil_of(2 * Rational(abs(lc)) * cauchy_bound(F));
  const Integer target = (2 * B + 1) * (Integer(1) << 40);
  Integer modulus;
  std::vector<Integer> lifted;
  for (int64_t r : roots_p) lifted.push_back(hensel_lift(F, Integer(static_cast<long>(r)), p, target, modulus));

  std::set<QuadElem> found;
  auto accept = [&](const QuadElem& a) {
    if (is_zero(eval_integer_poly(F, a))) found.insert(a);
  };
  for (const Integer& r : lifted) {
    Integer A = mod_symmetric(lc * r, modulus);
    if (abs(A) <= B) accept(QuadElem(make_rational(A, lc), 0, d));
  }
  if (d != 0) {
    std::vector<Integer> dpoly{Integer(-d), 0, 1};
    int64_t s0 = 0;
    for (int64_t x = 1; x < p; ++x)
      if ((x * x - d) % p == 0) {
        s0 = x;
        break;
      }
    Integer smod;
    Integer s = hensel_lift(dpoly, Integer(static_cast<long>(s0)), p, target, smod);
    if (smod != modulus) throw std::logic_error("lifting moduli disagree");
    Integer sinv = inv_int_mod(s, modulus);
    for (size_t i = 0; i < lifted.size(); ++i) {
      for (size_t j = i + 1; j < lifted.size(); ++j) {
        Integer A = mod_symmetric(lc * (lifted[i] + lifted[j]), modulus);
        if (abs(A) > B) continue;
        Integer Bq = mod_symmetric(lc * (lifted[i] - lifted[j]) * sinv, modulus);
        if (Bq == 0 || abs(Bq) > B) continue;
        QuadElem a(make_rational(A, 2 * lc), make_rational(Bq, 2 * lc), d);
        if (is_zero(eval_integer_poly(F, a))) {
          found.insert(a);
          found.insert(a.conj());
        }
      }
    }
  }
  out.assign(found.begin(), found.end());
  return out;
}

int multiplicity(PolyK f, const QuadElem& a) {
  int m = 0;
  PolyK lin(std::vector<QuadElem>{-a, one_like(f.zero())}, f.zero());
  while (!f.is_zero() && is_zero(f.eval(a))) {
    f = f.exact_div(lin);
    ++m;
  }
  return m;
}

// gcd over Q via primitive remainder sequences.
PolyQ gcd_q(PolyQ a, PolyQ b) {
  if (a.is_zero()) return b.is_zero() ? b : b.monic();
  a = primitive_part(a);
  b = b.is_zero() ? b : primitive_part(b);
  while (!b.is_zero()) {
    PolyQ r = a % b;
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(r);
  }
  return a.monic();
}

std::vector<Integer> to_integer_vector(const PolyQ& f) {
  std::vector<Integer> out = primitive_integer_coeffs(f);
  return out;
}

std::vector<std::pair<QuadElem, int>> roots_with_multiplicity(const PolyQ& f, long d) {
  if (f.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  std::vector<std::pair<QuadElem, int>> out;
  if (f.degree() == 0) return out;
  auto F = to_integer_vector(f);
  auto roots = roots_squarefree(F, d, 25);
  if (!roots) {
    PolyQ g = squarefree_part(f);
    roots = roots_squarefree(to_integer_vector(g), d, 1000);
    if (!roots) throw std::runtime_error("no prime with squarefree reduction");
  }
  PolyK fk = poly_k(f, d);
  for (const auto& r : *roots) out.emplace_back(r, multiplicity(fk, r));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> ps;
  std::vector<int> es;
  Integer m = n;
  for (Integer p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      ps.push_back(p);
      es.push_back(e);
    }
  }
  if (m > 1) {
    ps.push_back(m);
    es.push_back(1);
  }
  std::vector<Integer> out{1};
  for (size_t i = 0; i < ps.size(); ++i) {
    size_t sz = out.size();
    Integer pw = 1;
    for (int e = 1; e <= es[i]; ++e) {
      pw *= ps[i];
      for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer binom(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Candidate factor degrees consistent with factorization patterns modulo several primes.
std::set<int> admissible_degrees(const std::vector<Integer>& H) {
  const int n = static_cast<int>(H.size()) - 1;
  std::set<int> possible;
  for (int k = 1; k < n; ++k) possible.insert(k);
  int used = 0;
  for (uint64_t p = 3; used < 6 && p < 400; p = next_prime(p)) {
    Vec Hp = to_mod(H, static_cast<int64_t>(p));
    if (static_cast<int>(Hp.size()) - 1 != n || !squarefree_mod(Hp, static_cast<int64_t>(p))) continue;
    ++used;
    std::vector<int> pattern = factor_pattern_mod_p(poly_q(std::vector<Rational>(H.begin(), H.end())), static_cast<uint32_t>(p));
    std::set<int> sums{0};
    for (int deg : pattern) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + deg);
      sums = std::move(next);
    }
    std::set<int> keep;
    for (int k : possible)
      if (sums.count(k)) keep.insert(k);
    possible = std::move(keep);
  }
  return possible;
}


// Search for a monic integer factor of degree k (2 or 3) of monic integer H without rational roots.
std::optional<std::vector<Integer>> search_factor(const std::vector<Integer>& H, int k) {
  const int n = static_cast<int>(H.size()) - 1;
  Integer norm2 = 0;
  for (const auto& c : H) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  // documented constant: twice the Mignotte coefficient bound
  constexpr int kBoundFactor = 2;
  auto bound = [&](int j) { return Integer(kBoundFactor * binom(k, j) * norm); };
  auto evalH = [&](long x) {
    Integer acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * x + H[i];
    return acc;
  };
  const Integer H1 = evalH(1), Hm1 = evalH(-1), H2 = evalH(2);
  const PolyQ Hq = poly_q(std::vector<Rational>(H.begin(), H.end()));
  auto try_candidate = [&](const std::vector<Integer>& g) -> bool {
    auto evalg = [&](long x) {
      Integer acc = 0;
      for (int i = k; i >= 0; --i) acc = acc * x + g[i];
      return acc;
    };
    for (auto [x, hx] : {std::pair<long, const Integer*>{1, &H1}, {-1, &Hm1}, {2, &H2}}) {
      Integer gx = evalg(x);
      if (gx == 0 || *hx % gx != 0) return false;
    }
    return Hq.divisible_by(poly_q(std::vector<Rational>(g.begin(), g.end())));
  };
  std::vector<Integer> tvals;
  for (const auto& dv : divisors(H[0])) {
    tvals.push_back(dv);
    tvals.push_back(-dv);
  }
  if (k == 2) {
    Integer sb = bound(1);
    for (const auto& t : tvals)
      for (Integer s = -sb; s <= sb; ++s) {
        std::vector<Integer> g{t, s, 1};
        if (try_candidate(g)) return g;
      }
  } else if (k == 3) {
    Integer ab = bound(2), bb = bound(1);
    for (const auto& t : tvals)
      for (Integer a = -ab; a <= ab; ++a)
        for (Integer b = -bb; b <= bb; ++b) {
          std::vector<Integer> g{t, b, a, 1};
          if (try_candidate(g)) return g;
        }
  } else {
    throw std::runtime_error("factor search supports degree 2 and 3 factors only");
  }
  return std::nullopt;
}

// Irreducible factors over Q of a squarefree polynomial, all monic.
std::vector<PolyQ> factor_squarefree_Q(const PolyQ& g) {
  std::vector<PolyQ> out;
  PolyQ h = g.monic();
  for (const auto& [r, m] : rational_roots(h)) {
    PolyQ lin = poly_q(std::vector<Rational>{Rational(-r), Rational(1)});
    out.push_back(lin);
    h = h.exact_div(lin);
  }
  std::vector<PolyQ> work{h};
  while (!work.empty()) {
    PolyQ cur = work.back();
    work.pop_back();
    const int n = cur.degree();
    if (n <= 0) continue;
    if (n <= 3) {
      out.push_back(cur.monic());
      continue;
    }
    if (n > 7) throw std::runtime_error("factorization over Q supports irreducible parts of degree <= 7");
    // monic integral transform H(y) = c^(n-1) h(y / c)
    std::vector<Integer> P = primitive_integer_coeffs(cur);
    const Integer c = P.back();
    std::vector<Integer> H(n + 1);
    // H_i = P_i * c^(n-1-i)
    Integer pw = 1;
    for (int i = n - 1; i >= 0; --i) {
      H[i] = P[i] * pw;
      pw *= c;
    }
    H[n] = 1;
    std::set<int> degs = admissible_degrees(H);
    std::optional<std::vector<Integer>> fac;
    for (int k : {2, 3}) {
      if (2 * k > n || !degs.count(k)) continue;
      fac = search_factor(H, k);
      if (fac) break;
    }
    if (!fac) {
      out.push_back(cur.monic());
      continue;
    }
    // back-substitute y = c x
    std::vector<Rational> gx;
    Rational cpow = 1;
    for (const auto& coef : *fac) {
      gx.push_back(Rational(coef) * cpow);
      cpow *= c;
    }
    PolyQ gfac = poly_q(gx).monic();
    work.push_back(gfac);
    work.push_back(cur.exact_div(gfac));
  }
  return out;
}

bool poly_less(const PolyK& a, const PolyK& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// Splits an irreducible monic quartic over Q into conjugate quadratics over K when possible.
std::optional<PolyK> split_quartic(const PolyQ& g, long d) {
  const Rational a3 = g[3];
  const Rational sh = a3 / 4;
  // depressed: g(y - a3/4)
  PolyQ ylin = poly_q(std::vector<Rational>{Rational(-sh), Rational(1)});
  PolyQ dep(Rational(0));
  PolyQ pw = poly_q(std::vector<long>{1});
  for (int i = 0; i <= 4; ++i) {
    dep += pw * g[i];
    pw = pw * ylin;
  }
  const Rational P = dep[2], Q = dep[1], R = dep[0];
  PolyQ resolvent = poly_q(std::vector<Rational>{Rational(-Q * Q), Rational(P * P - 4 * R), Rational(2 * P), Rational(1)});
  std::vector<PolyK> candidates;
  const QuadElem sd(0, 1, d);
  for (const auto& [z, m] : rational_roots(resolvent)) {
    const Rational zr = z;
    if (zr == 0) continue;
    auto c = rational_sqrt(zr / d);
    if (!c) continue;
    QuadElem u = sd * QuadElem(*c);
    QuadElem qu = QuadElem(Q) / u;
    QuadElem v = (QuadElem(P + zr) - qu) * QuadElem(Rational(1, 2));
    candidates.push_back(PolyK(std::vector<QuadElem>{v, u, QuadElem(1, 0, d)}, QuadElem(0, 0, d)));
  }
  if (Q == 0) {
    Rational disc = P * P - 4 * R;
    if (auto c = rational_sqrt(disc / d)) {
      QuadElem v = (QuadElem(P) - sd * QuadElem(*c)) * QuadElem(Rational(1, 2));
      candidates.push_back(PolyK(std::vector<QuadElem>{v, QuadElem(0, 0, d), QuadElem(1, 0, d)}, QuadElem(0, 0, d)));
    }
  }
  PolyK gk = poly_k(g, d);
  PolyK back = poly_k(poly_q(std::vector<Rational>{sh, Rational(1)}), d);
  for (const auto& hy : candidates) {
    // h(x) = hy(x + a3/4)
    PolyK hx(QuadElem(0, 0, d));
    PolyK pk = PolyK::constant(QuadElem(1, 0, d));
    for (int i = 0; i <= hy.degree(); ++i) {
      hx += pk * hy[i];
      pk = pk * back;
    }
    if (gk.divisible_by(hx)) return hx;
  }
  return std::nullopt;
}

// Splits an irreducible monic sextic over Q into conjugate cubics over K when possible.
std::optional<PolyK> split_sextic(const PolyQ& g, long d) {
  std::vector<Integer> P = primitive_integer_coeffs(g);
  const Integer c = P.back();
  const int n = 6;
  std::vector<Integer> G(n + 1);
  Integer pw = 1;
  for (int i = n - 1; i >= 0; --i) {
    G[i] = P[i] * pw;
    pw *= c;
  }
  G[n] = 1;
  const Rational M = cauchy_bound(G);
  const double sqd = std::sqrt(static_cast<double>(d));
  const long a1max = static_cast<long>(std::floor(6 * M.get_d() / sqd)) + 1;
  const long b1max = static_cast<long>(std::floor(6 * M.get_d() * M.get_d() / sqd)) + 1;
  const Rational g5(G[5]), g4(G[4]), g3(G[3]), g2(G[2]), g1(G[1]), g0(G[0]);
  const Rational dd(d);
  auto build = [&](const QuadElem& al, const QuadElem& be, const QuadElem& ga) {
    return PolyK(std::vector<QuadElem>{ga, be, al, QuadElem(1, 0, d)}, QuadElem(0, 0, d));
  };
  PolyK Gk = poly_k(poly_q(std::vector<Rational>(G.begin(), G.end())), d);
  for (long A1 = -a1max; A1 <= a1max; ++A1) {
    const Rational a = g5 / 2, ap = make_rational(A1, 2);
    const Rational Na = a * a - ap * ap * dd;
    const Rational b = (g4 - Na) / 2;
    if (Rational(2 * b).get_den() != 1) continue;
    for (long B1 = -b1max; B1 <= b1max; ++B1) {
      const Rational bp = make_rational(B1, 2);
      const QuadElem al(a, ap, d), be(b, bp, d);
      // Tr(alpha conj(beta)) = 2 (a b - a' b' d)
      const Rational cc = (g3 - 2 * (a * b - ap * bp * dd)) / 2;
      const Rational Nb = b * b - bp * bp * dd;
      std::vector<Rational> cps;
      if (ap != 0) {
        cps.push_back((a * cc - (g2 - Nb) / 2) / (ap * dd));
      } else if (bp != 0) {
        cps.push_back((b * cc - g1 / 2) / (bp * dd));
      } else {
        if (auto r = rational_sqrt((cc * cc - g0) / dd)) {
          cps.push_back(*r);
          cps.push_back(-*r);
        }
      }
      for (const auto& cp : cps) {
        const QuadElem ga(cc, cp, d);
        if ((ga * ga.conj()).a() != g0) continue;
        PolyK h = build(al, be, ga);
        PolyK hb = build(al.conj(), be.conj(), ga.conj());
        if (h * hb == Gk) {
          // back to x: h(c x) / c^3
          std::vector<QuadElem> v;
          Rational cp2 = 1;
          for (int i = 0; i <= 3; ++i) {
            v.push_back(h[i] * QuadElem(cp2 / Rational(c * c * c)));
            cp2 *= c;
          }
          return PolyK(v, QuadElem(0, 0, d));
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Integer> primitive_integer_coeffs(const PolyQ& f) {
  if (f.is_zero()) throw std::invalid_argument("primitive part of the zero polynomial");
  Integer l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> v;
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    Integer t = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    v.push_back(t);
  }
  if (f.lead() < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

PolyQ primitive_part(const PolyQ& f) {
  auto v = primitive_integer_coeffs(f);
  return poly_q(std::vector<Rational>(v.begin(), v.end()));
}

std::vector<std::pair<Rational, int>> rational_roots(const PolyQ& f) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& [r, m] : roots_with_multiplicity(f, 0)) out.emplace_back(r.a(), m);
  return out;
}

std::vector<std::pair<QuadElem, int>> poly_roots_in_K(const PolyQ& f, const QuadField& K) {
  return roots_with_multiplicity(f, K.d());
}

std::vector<std::pair<QuadElem, int>> poly_roots_in_K(const PolyK& f, const QuadField& K) {
  if (f.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  const long d = K.d();
  PolyK fk = f.map<QuadElem>([d](const QuadElem& c) { return c.in_field(d); }, QuadElem(0, 0, d));
  bool rational = std::all_of(fk.coeffs().begin(), fk.coeffs().end(), [](const QuadElem& c) { return c.is_rational(); });
  if (rational) return poly_roots_in_K(fk.map<Rational>([](const QuadElem& c) { return c.a(); }, Rational(0)), K);
  PolyK fbar = fk.map<QuadElem>([](const QuadElem& c) { return c.conj(); }, fk.zero());
  PolyQ N = (fk * fbar).map<Rational>([](const QuadElem& c) { return c.a(); }, Rational(0));
  std::vector<std::pair<QuadElem, int>> out;
  for (const auto& [r, m] : poly_roots_in_K(N, K)) {
    if (!is_zero(fk.eval(r))) continue;
    out.emplace_back(r, multiplicity(fk, r));
  }
  return out;
}

std::vector<FqElem> poly_roots_mod_q(const PolyF& f, uint64_t scan_limit) {
  if (f.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  const FiniteField& F = *f.zero().field;
  if (F.q() > scan_limit) throw std::invalid_argument("field too large for exhaustive root scan");
  std::vector<FqElem> out;
  for (uint64_t i = 0; i < F.q(); ++i) {
    FqElem x = F.from_index(i);
    PolyF g = f;
    PolyF lin(std::vector<FqElem>{F.neg(x), F.one()}, F.zero());
    while (g.degree() >= 1 && g.eval(x).is_zero()) {
      out.push_back(x);
      g = g.exact_div(lin);
    }
  }
  return out;
}

std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
  std::vector<std::pair<PolyQ, int>> out;
  PolyQ a = f.monic();
  if (a.degree() <= 0) return out;
  PolyQ da = a.derivative();
  PolyQ b = gcd_q(a, da);
  PolyQ c = a.exact_div(b);
  PolyQ dd = da.exact_div(b) - c.derivative();
  int i = 1;
  while (c.degree() > 0) {
    PolyQ g = gcd_q(c, dd);
    if (g.degree() > 0) out.emplace_back(g, i);
    c = c.exact_div(g);
    dd = dd.exact_div(g) - c.derivative();
    ++i;
  }
  return out;
}

PolyQ squarefree_part(const PolyQ& f) {
  PolyQ out = poly_q(std::vector<long>{1});
  for (const auto& [g, e] : squarefree_decomposition(f)) out = out * g;
  return out;
}

Rational resultant(const PolyQ& f, const PolyQ& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const int m = f.degree(), n = g.degree();
  if (n == 0) {
    Rational r = 1;
    for (int i = 0; i < m; ++i) r *= g[0];
    return r;
  }
  if (m == 0) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= f[0];
    return r;
  }
  PolyQ r = f % g;
  if (r.is_zero()) return 0;
  Rational lcp = 1;
  for (int i = 0; i < m - r.degree(); ++i) lcp *= g.lead();
  Rational sign = ((m * n) % 2 == 1) ? -1 : 1;
  return sign * lcp * resultant(g, r);
}

Rational discriminant(const PolyQ& f) {
  const int n = f.degree();
  if (n < 1) throw std::invalid_argument("discriminant needs positive degree");
  Rational r = resultant(f, f.derivative()) / f.lead();
  return ((n * (n - 1) / 2) % 2 == 1) ? Rational(-r) : r;
}

std::vector<int> factor_pattern_mod_p(const PolyQ& f, uint32_t p) {
  Vec F = to_mod(primitive_integer_coeffs(f), p);
  if (F.empty()) throw std::invalid_argument("polynomial vanishes mod p");
  if (!squarefree_mod(F, p)) throw std::invalid_argument("reduction is not squarefree");
  {
    int64_t inv = inv_mod(F.back(), p);
    for (auto& x : F) x = x * inv % p;
  }
  std::vector<int> pattern;
  Vec h{0, 1};
  for (int i = 1; 2 * i <= static_cast<int>(F.size()) - 1; ++i) {
    // h = x^(p^i) mod F
    Vec hh = h;
    Vec acc{1};
    uint64_t e = p;
    Vec base = rem_mod(hh, F, p);
    while (e) {
      if (e & 1) acc = rem_mod(mul_mod(acc, base, p), F, p);
      e >>= 1;
      if (e) base = rem_mod(mul_mod(base, base, p), F, p);
    }
    h = acc;
    Vec g = gcd_mod(F, sub_mod(h, Vec{0, 1}, p), p);
    int deg = static_cast<int>(g.size()) - 1;
    for (int j = 0; j < deg / i; ++j) pattern.push_back(i);
    if (deg > 0) {
      Vec q;
      rem_mod(F, g, p, &q);
      F = q;
      h = rem_mod(h, F, p);
    }
  }
  if (F.size() > 1) pattern.push_back(static_cast<int>(F.size()) - 1);
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

FactorListQ factor_over_Q(const PolyQ& f) {
  if (f.is_zero()) throw std::invalid_argument("factorization of the zero polynomial");
  FactorListQ out{f.lead(), {}};
  for (const auto& [g, e] : squarefree_decomposition(f))
    for (const auto& h : factor_squarefree_Q(g)) out.factors.emplace_back(h, e);
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
    for (int i = x.first.degree(); i >= 0; --i)
      if (x.first[i] != y.first[i]) return x.first[i] < y.first[i];
    return x.second < y.second;
  });
  return out;
}

FactorListK poly_factor_over_K(const PolyQ& f, const QuadField& K) {
  if (f.is_zero()) throw std::invalid_argument("factorization of the zero polynomial");
  if (f.degree() > 6) throw std::invalid_argument("factorization over K supports degree <= 6");
  const long d = K.d();
  FactorListK out{QuadElem(f.lead(), 0, d), {}};
  const QuadElem zero(0, 0, d), one(1, 0, d);
  for (const auto& [g, e] : factor_over_Q(f).factors) {
    const int n = g.degree();
    if (n == 2) {
      Rational disc = g[1] * g[1] - 4 * g[0];
      if (auto r = rational_sqrt(disc / d)) {
        QuadElem root1(-g[1] / 2, *r / 2, d);
        for (const QuadElem& root : {root1, root1.conj()})
          out.factors.emplace_back(PolyK(std::vector<QuadElem>{-root, one}, zero), e);
        continue;
      }
    } else if (n == 4) {
      if (auto h = split_quartic(g, d)) {
        PolyK hb = h->map<QuadElem>([](const QuadElem& c) { return c.conj(); }, zero);
        out.factors.emplace_back(*h, e);
        out.factors.emplace_back(hb, e);
        continue;
      }
    } else if (n == 6) {
      if (auto h = split_sextic(g, d)) {
        PolyK hb = h->map<QuadElem>([](const QuadElem& c) { return c.conj(); }, zero);
        out.factors.emplace_back(*h, e);
        out.factors.emplace_back(hb, e);
        continue;
      }
    }
    out.factors.emplace_back(poly_k(g, d), e);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (poly_less(x.first, y.first)) return true;
    if (poly_less(y.first, x.first)) return false;
    return x.second < y.second;
  });
  return out;
}

}  // namespace quadtor
