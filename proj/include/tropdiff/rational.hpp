#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tropdiff {

using Integer = mpz_class;
using Rational = mpq_class;

/// n/d in lowest terms; d must be nonzero.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// "n" for integers, "n/d" otherwise. No floating point anywhere.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

bool is_prime(unsigned long p);

/// Exponent of p in n; n must be nonzero.
long padic_val(const Integer& n, unsigned long p);
/// v_p(num) - v_p(den); r must be nonzero.
long padic_val(const Rational& r, unsigned long p);

/// Sum of the base-p digits of m.
unsigned long digit_sum(unsigned long m, unsigned long p);

/// v_p(m!) by Legendre's closed form (m - s_p(m)) / (p - 1).
long factorial_val(unsigned long m, unsigned long p);
/// v_p(m!) as sum_k floor(m / p^k).
long factorial_val_iterative(unsigned long m, unsigned long p);

Integer factorial(unsigned long m);
Integer binomial(unsigned long n, unsigned long k);

/// Residue of r in F_p; the denominator must be prime to p.
unsigned long reduce_mod(const Rational& r, unsigned long p);

}  // namespace tropdiff
