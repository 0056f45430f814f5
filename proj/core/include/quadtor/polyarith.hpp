#pragma once

#include <utility>
#include <vector>

#include "quadtor/poly.hpp"

namespace quadtor {

template <class R>
struct FactorList {
  R constant;
  std::vector<std::pair<Poly<R>, int>> factors;

  Poly<R> product() const {
    Poly<R> p = Poly<R>::constant(constant);
    for (const auto& [f, e] : factors) p = p * f.pow(e);
    return p;
  }
  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [f, e] : factors)
      for (int i = 0; i < e; ++i) out.push_back(f.degree());
    return out;
  }
};

using FactorListQ = FactorList<Rational>;
using FactorListK = FactorList<QuadElem>;

// Integer coefficients with content 1 and positive leading coefficient.
std::vector<Integer> primitive_integer_coeffs(const PolyQ& f);
PolyQ primitive_part(const PolyQ& f);

std::vector<std::pair<Rational, int>> rational_roots(const PolyQ& f);
std::vector<std::pair<QuadElem, int>> poly_roots_in_K(const PolyQ& f, const QuadField& K);
std::vector<std::pair<QuadElem, int>> poly_roots_in_K(const PolyK& f, const QuadField& K);

constexpr uint64_t kRootScanLimit = 1000000;
std::vector<FqElem> poly_roots_mod_q(const PolyF& f, uint64_t scan_limit = kRootScanLimit);

// f = c * prod g_i^i with g_i squarefree, coprime, monic.
std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& f);
PolyQ squarefree_part(const PolyQ& f);

Rational resultant(const PolyQ& f, const PolyQ& g);
Rational discriminant(const PolyQ& f);

FactorListQ factor_over_Q(const PolyQ& f);
FactorListK poly_factor_over_K(const PolyQ& f, const QuadField& K);

// Degrees of the irreducible factors of a squarefree f mod p, ascending.
std::vector<int> factor_pattern_mod_p(const PolyQ& f, uint32_t p);

}  // namespace quadtor
