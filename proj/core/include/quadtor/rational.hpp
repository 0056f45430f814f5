#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace quadtor {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den = 1);

std::optional<Integer> integer_sqrt_exact(const Integer& n);
std::optional<Rational> rational_sqrt(const Rational& x);

bool is_squarefree(long n);
Integer squarefree_part(const Integer& n);

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);

// Residue in [0, m).
Integer mod_floor(const Integer& a, const Integer& m);
// Residue in (-m/2, m/2].
Integer mod_symmetric(const Integer& a, const Integer& m);

std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

}  // namespace quadtor
