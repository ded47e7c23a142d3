#pragma once

#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "boxplus/errors.hpp"

namespace boxplus {

// Exact scalar: arbitrary-precision rational, always canonical (lowest terms,
// positive denominator). gmp guarantees canonical form for all arithmetic.
using Rat = mpq_class;
using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row-major square matrix

// num/den in canonical form (the two-argument mpq_class constructor does not
// canonicalize on its own).
Rat make_rat(long num, long den);

// Parses "p/q" or an integer string. Throws ParseError on anything else.
Rat parse_rat(const std::string& text);

// "p/q" when the denominator is not 1, plain integer string otherwise.
std::string format_rat(const Rat& value);

double to_double(const Rat& value);

Rat rat_abs(const Rat& value);
Rat rat_pow(const Rat& base, unsigned long exponent);

Rat linf_norm(const Vec& x);
bool copositive(const Vec& u, const Vec& v);
Vec scaled(const Rat& factor, const Vec& x);
Vec negated(const Vec& x);

std::string format_vec(const Vec& x);

// Nearest rational with denominator <= max_denominator (continued-fraction
// convergents/semiconvergents). Used to lift stabilized numeric limits back
// into exact arithmetic before verification.
Rat round_to_rational(double value, long max_denominator);

// Sign-preserving q-th root of |num/den|, q odd, computed with mpfr at the
// requested precision and returned as double (callers only compare against
// tolerances far above double resolution).
double rootn_signed(const Rat& power_value, unsigned long q, unsigned precision_bits);

}  // namespace boxplus
