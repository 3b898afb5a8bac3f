#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace wzeta {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p/q" or a plain integer, with optional sign. Canonicalizes.
Rational rational_from_string(std::string_view text);

// "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rational& r);

Integer binomial(unsigned long n, unsigned long k);

// p-adic valuation of a nonzero rational. Throws on zero.
long padic_valuation(const Rational& r, const Integer& p);

// Valuation of a nonzero integer.
long padic_valuation(const Integer& x, const Integer& p);

Integer pow_integer(const Integer& base, unsigned long exp);

}  // namespace wzeta
