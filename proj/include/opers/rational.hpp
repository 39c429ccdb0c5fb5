#pragma once

#include <gmpxx.h>

#include <string>

namespace opers {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p" or "p/q" into a canonical rational; throws MalformedInput.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

// p/q in canonical form.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational factorial(int n);
// Generalized binomial coefficient e(e-1)...(e-k+1)/k! for rational e.
Rational binomial(const Rational& e, int k);

bool is_integer(const Rational& q);
// Exact rational square root when q is a square of a rational.
bool rational_sqrt(const Rational& q, Rational& root);

}  // namespace opers
