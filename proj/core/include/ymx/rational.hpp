// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <string>

namespace ymx {

using Rational = mpq_class;
using BigInt = mpz_class;

// Always "p/q" with q >= 1, e.g. "2/1", "-1/6".
std::string rational_string(const Rational& q);

// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);

Rational rational_pow(const Rational& base, int exponent);

BigInt factorial(int n);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace ymx
