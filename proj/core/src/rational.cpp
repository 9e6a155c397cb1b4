// SPDX-License-Identifier: MIT
#include "ymx/rational.hpp"

#include "ymx/errors.hpp"

namespace ymx {

std::string rational_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw ValidationError("not a rational number: " + text);
  }
  q.canonicalize();
  return q;
}

Rational rational_pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw ValidationError("zero to a negative power");
    return rational_pow(Rational(1) / base, -exponent);
  }
  Rational out = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1) out *= b;
    b *= b;
    exponent >>= 1;
  }
  return out;
}

BigInt factorial(int n) {
  if (n < 0) throw ValidationError("factorial of a negative number");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace ymx
