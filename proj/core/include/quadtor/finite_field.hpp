#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace quadtor {

class FiniteField;

// Element of GF(p^k), k <= 4, as coefficients of a polynomial in the generator t.
struct FqElem {
  const FiniteField* field = nullptr;
  std::array<uint32_t, 4> c{};

  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
  bool operator==(const FqElem& o) const { return c == o.c; }
  bool operator!=(const FqElem& o) const { return c != o.c; }
  bool operator<(const FqElem& o) const { return c < o.c; }
};

class FiniteField {
 public:
  static constexpr int kMaxDegree = 4;

  // Cached fields live for the whole process, so element back-pointers stay valid.
  static const FiniteField& get(uint32_t p, int k);
  // Field with a prescribed monic modulus, given by its k low coefficients.
  static const FiniteField& get(uint32_t p, const std::vector<uint32_t>& modulus_low);

  uint32_t p() const { return p_; }
  int k() const { return k_; }
  uint64_t q() const { return q_; }
  const std::array<uint32_t, 4>& modulus() const { return mod_; }

  FqElem zero() const;
  FqElem one() const;
  FqElem gen() const;
  FqElem from_int(long long n) const;
  FqElem from_index(uint64_t idx) const;
  uint64_t index(const FqElem& x) const;

  FqElem add(const FqElem& x, const FqElem& y) const;
  FqElem sub(const FqElem& x, const FqElem& y) const;
  FqElem neg(const FqElem& x) const;
  FqElem mul(const FqElem& x, const FqElem& y) const;
  FqElem scale(const FqElem& x, long long n) const;
  FqElem pow(FqElem x, uint64_t e) const;
  FqElem inv(const FqElem& x) const;

  // 1 for nonzero squares, -1 for non-squares, 0 for zero.
  int legendre(const FqElem& x) const;
  std::optional<FqElem> sqrt(const FqElem& x) const;

  std::string str(const FqElem& x) const;

  // Number of square roots (0, 1 or 2) of the element with each index.
  const std::vector<uint8_t>& sqrt_counts() const;

 private:
  FiniteField(uint32_t p, int k, std::array<uint32_t, 4> mod);
  uint32_t p_;
  int k_;
  uint64_t q_;
  std::array<uint32_t, 4> mod_{};
  mutable std::optional<FqElem> nonresidue_;
  mutable std::once_flag table_once_;
  mutable std::vector<uint8_t> sqrt_counts_;
};

FqElem operator+(const FqElem& x, const FqElem& y);
FqElem operator-(const FqElem& x, const FqElem& y);
FqElem operator-(const FqElem& x);
FqElem operator*(const FqElem& x, const FqElem& y);
FqElem operator*(const FqElem& x, long n);
FqElem operator/(const FqElem& x, const FqElem& y);
FqElem& operator+=(FqElem& x, const FqElem& y);
FqElem& operator-=(FqElem& x, const FqElem& y);
FqElem& operator*=(FqElem& x, const FqElem& y);

bool is_zero(const FqElem& x);
FqElem zero_like(const FqElem& x);
FqElem one_like(const FqElem& x);
std::optional<FqElem> sqrt_in_field(const FqElem& x);
std::string to_string(const FqElem& x);

bool is_prime(uint64_t n);
uint64_t next_prime(uint64_t n);

}  // namespace quadtor
