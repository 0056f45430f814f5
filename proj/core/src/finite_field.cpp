#include "quadtor/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace quadtor {

namespace {

uint64_t powmod(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<unsigned __int128>(r) * b % m;
    b = static_cast<unsigned __int128>(b) * b % m;
    e >>= 1;
  }
  return r;
}

// Monic degree-k polynomial over F_p given by its low coefficients.
bool irreducible(uint32_t p, int k, const std::array<uint32_t, 4>& low) {
  auto eval = [&](uint64_t x) {
    uint64_t acc = 1;
    for (int i = k - 1; i >= 0; --i) acc = (acc * x + low[i]) % p;
    return acc;
  };
  for (uint64_t x = 0; x < p; ++x)
    if (eval(x) == 0) return false;
  if (k <= 3) return true;
  // quartic without roots: reducible iff it has a monic quadratic factor
  for (uint64_t b = 0; b < p; ++b) {
    for (uint64_t c = 0; c < p; ++c) {
      // long division of x^4 + low3 x^3 + ... by x^2 + b x + c
      int64_t r[5] = {low[0], low[1], low[2], low[3], 1};
      for (int i = 4; i >= 2; --i) {
        int64_t q = r[i] % p;
        if (q == 0) continue;
        r[i] = 0;
        r[i - 1] = ((r[i - 1] - q * static_cast<int64_t>(b)) % p + p) % p;
        r[i - 2] = ((r[i - 2] - q * static_cast<int64_t>(c)) % p + p) % p;
      }
      if (r[0] % p == 0 && r[1] % p == 0) return false;
    }
  }
  return true;
}

std::mutex cache_mutex;
using CacheKey = std::tuple<uint32_t, int, std::array<uint32_t, 4>>;
std::map<CacheKey, std::unique_ptr<FiniteField>>& cache() {
  static std::map<CacheKey, std::unique_ptr<FiniteField>> c;
  return c;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<unsigned __int128>(x) * x % n;
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

uint64_t next_prime(uint64_t n) {
  uint64_t m = n + 1;
  while (!is_prime(m)) ++m;
  return m;
}

FiniteField::FiniteField(uint32_t p, int k, std::array<uint32_t, 4> mod) : p_(p), k_(k), mod_(mod) {
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
}

const FiniteField& FiniteField::get(uint32_t p, int k) {
  if (k < 1 || k > kMaxDegree) throw std::invalid_argument("extension degree must be 1..4");
  if (!is_prime(p) || p >= (1u << 31)) throw std::invalid_argument("characteristic must be a prime below 2^31");
  if (k == 1) return get(p, std::vector<uint32_t>{0});
  std::array<uint32_t, 4> low{};
  // lexicographic search for the first irreducible monic polynomial
  uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= p;
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t t = idx;
    for (int i = 0; i < k; ++i) {
      low[i] = t % p;
      t /= p;
    }
    if (irreducible(p, k, low)) return get(p, std::vector<uint32_t>(low.begin(), low.begin() + k));
  }
  throw std::logic_error("no irreducible polynomial found");
}

const FiniteField& FiniteField::get(uint32_t p, const std::vector<uint32_t>& modulus_low) {
  int k = static_cast<int>(modulus_low.size());
  if (k < 1 || k > kMaxDegree) throw std::invalid_argument("extension degree must be 1..4");
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  std::array<uint32_t, 4> low{};
  for (int i = 0; i < k; ++i) low[i] = modulus_low[i] % p;
  if (k == 1) low[0] = 0;
  if (k > 1 && !irreducible(p, k, low)) throw std::invalid_argument("modulus is reducible");
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& c = cache();
  auto full_key = std::make_tuple(p, k, low);
  auto it = c.find(full_key);
  if (it == c.end()) {
    it = c.emplace(full_key, std::unique_ptr<FiniteField>(new FiniteField(p, k, low))).first;
  }
  return *it->second;
}

FqElem FiniteField::zero() const { return FqElem{this, {}}; }

FqElem FiniteField::one() const {
  FqElem r{this, {}};
  r.c[0] = 1 % p_;
  return r;
}

FqElem FiniteField::gen() const {
  FqElem r{this, {}};
  if (k_ == 1) return r;
  r.c[1] = 1;
  return r;
}

FqElem FiniteField::from_int(long long n) const {
  FqElem r{this, {}};
  long long m = n % static_cast<long long>(p_);
  if (m < 0) m += p_;
  r.c[0] = static_cast<uint32_t>(m);
  return r;
}

FqElem FiniteField::from_index(uint64_t idx) const {
  FqElem r{this, {}};
  for (int i = 0; i < k_; ++i) {
    r.c[i] = idx % p_;
    idx /= p_;
  }
  return r;
}

uint64_t FiniteField::index(const FqElem& x) const {
  uint64_t idx = 0;
  for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + x.c[i];
  return idx;
}

FqElem FiniteField::add(const FqElem& x, const FqElem& y) const {
  FqElem r{this, {}};
  for (int i = 0; i < k_; ++i) {
    uint32_t s = x.c[i] + y.c[i];
    r.c[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

FqElem FiniteField::sub(const FqElem& x, const FqElem& y) const {
  FqElem r{this, {}};
  for (int i = 0; i < k_; ++i) r.c[i] = x.c[i] >= y.c[i] ? x.c[i] - y.c[i] : x.c[i] + p_ - y.c[i];
  return r;
}

FqElem FiniteField::neg(const FqElem& x) const {
  FqElem r{this, {}};
  for (int i = 0; i < k_; ++i) r.c[i] = x.c[i] ? p_ - x.c[i] : 0;
  return r;
}

FqElem FiniteField::mul(const FqElem& x, const FqElem& y) const {
  FqElem r{this, {}};
  if (k_ == 1) {
    r.c[0] = static_cast<uint64_t>(x.c[0]) * y.c[0] % p_;
    return r;
  }
  uint64_t t[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int i = 0; i < k_; ++i) {
    if (!x.c[i]) continue;
    for (int j = 0; j < k_; ++j) t[i + j] = (t[i + j] + static_cast<uint64_t>(x.c[i]) * y.c[j]) % p_;
  }
  for (int i = 2 * k_ - 2; i >= k_; --i) {
    uint64_t q = t[i];
    if (!q) continue;
    t[i] = 0;
    for (int j = 0; j < k_; ++j) t[i - k_ + j] = (t[i - k_ + j] + (p_ - mod_[j]) * q) % p_;
  }
  for (int i = 0; i < k_; ++i) r.c[i] = static_cast<uint32_t>(t[i]);
  return r;
}

FqElem FiniteField::scale(const FqElem& x, long long n) const { return mul(x, from_int(n)); }

FqElem FiniteField::pow(FqElem x, uint64_t e) const {
  FqElem r = one();
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

FqElem FiniteField::inv(const FqElem& x) const {
  if (x.is_zero()) throw std::domain_error("division by zero in finite field");
  return pow(x, q_ - 2);
}

int FiniteField::legendre(const FqElem& x) const {
  if (x.is_zero()) return 0;
  if (p_ == 2) return 1;
  FqElem r = pow(x, (q_ - 1) / 2);
  return r == one() ? 1 : -1;
}

std::optional<FqElem> FiniteField::sqrt(const FqElem& x) const {
  if (x.is_zero()) return x;
  if (p_ == 2) return pow(x, q_ / 2);
  if (legendre(x) != 1) return std::nullopt;
  if (!nonresidue_) {
    for (uint64_t i = 1; i < q_; ++i) {
      FqElem z = from_index(i);
      if (legendre(z) == -1) {
        nonresidue_ = z;
        break;
      }
    }
  }
  // Tonelli-Shanks in the cyclic group of order q - 1
  uint64_t qm = q_ - 1;
  int s = 0;
  while (qm % 2 == 0) {
    qm /= 2;
    ++s;
  }
  FqElem z = pow(*nonresidue_, qm);
  FqElem r = pow(x, (qm + 1) / 2);
  FqElem t = pow(x, qm);
  int m = s;
  while (t != one()) {
    int i = 0;
    FqElem t2 = t;
    while (t2 != one()) {
      t2 = mul(t2, t2);
      ++i;
    }
    FqElem b = z;
    for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
    r = mul(r, b);
    z = mul(b, b);
    t = mul(t, z);
    m = i;
  }
  // deterministic choice: smaller index of the two roots
  FqElem other = neg(r);
  return index(other) < index(r) ? other : r;
}

std::string FiniteField::str(const FqElem& x) const {
  if (k_ == 1) return std::to_string(x.c[0]);
  std::ostringstream os;
  bool first = true;
  for (int i = k_ - 1; i >= 0; --i) {
    if (!x.c[i]) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || x.c[i] != 1) os << x.c[i];
    if (i >= 1) os << (i == 0 || x.c[i] != 1 ? "*t" : "t");
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

const std::vector<uint8_t>& FiniteField::sqrt_counts() const {
  std::call_once(table_once_, [this] {
    if (q_ > 50000000) throw std::invalid_argument("field too large for a square table");
    sqrt_counts_.assign(q_, 0);
    for (uint64_t i = 0; i < q_; ++i) {
      FqElem x = from_index(i);
      ++sqrt_counts_[index(mul(x, x))];
    }
  });
  return sqrt_counts_;
}

namespace {
const FiniteField& field_of(const FqElem& x, const FqElem& y) {
  if (x.field == nullptr || y.field == nullptr) throw std::domain_error("uninitialized finite-field element");
  if (x.field != y.field) throw std::domain_error("mixed finite fields");
  return *x.field;
}
}  // namespace

FqElem operator+(const FqElem& x, const FqElem& y) { return field_of(x, y).add(x, y); }
FqElem operator-(const FqElem& x, const FqElem& y) { return field_of(x, y).sub(x, y); }
FqElem operator-(const FqElem& x) { return x.field->neg(x); }
FqElem operator*(const FqElem& x, const FqElem& y) { return field_of(x, y).mul(x, y); }
FqElem operator*(const FqElem& x, long n) { return x.field->scale(x, n); }
FqElem operator/(const FqElem& x, const FqElem& y) {
  const FiniteField& F = field_of(x, y);
  return F.mul(x, F.inv(y));
}
FqElem& operator+=(FqElem& x, const FqElem& y) { return x = x + y; }
FqElem& operator-=(FqElem& x, const FqElem& y) { return x = x - y; }
FqElem& operator*=(FqElem& x, const FqElem& y) { return x = x * y; }

bool is_zero(const FqElem& x) { return x.is_zero(); }
FqElem zero_like(const FqElem& x) { return x.field->zero(); }
FqElem one_like(const FqElem& x) { return x.field->one(); }
std::optional<FqElem> sqrt_in_field(const FqElem& x) { return x.field->sqrt(x); }
std::string to_string(const FqElem& x) { return x.field->str(x); }

}  // namespace quadtor
