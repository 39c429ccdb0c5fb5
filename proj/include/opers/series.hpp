#pragma once

#include <string>
#include <vector>

#include "opers/rational.hpp"

namespace opers {

// Truncation order used for series known exactly (Laurent polynomials).
constexpr int kExact = 1 << 28;
inline bool is_exact_order(int t) { return t >= kExact / 2; }
// Saturating sum of orders: anything involving kExact stays exact.
inline int order_add(int a, int b) {
  if (is_exact_order(a) || is_exact_order(b)) return kExact;
  return a + b;
}

// Truncated Laurent series sum_{k >= val} c_k z^k + O(z^trunc) over Q.
//
// Coefficients are stored from the valuation up to the last nonzero one;
// positions between that and the truncation are zero.  A series whose
// truncation is kExact is a Laurent polynomial known to all orders.
class Series {
 public:
  Series();  // exact zero

  static Series zero(int trunc = kExact);
  static Series constant(const Rational& c, int trunc = kExact);
  static Series monomial(const Rational& c, int exponent, int trunc = kExact);
  // coeffs[i] is the coefficient of z^(val + i).
  static Series from_coeffs(int val, std::vector<Rational> coeffs, int trunc = kExact);
  static Series z();

  int valuation() const { return val_; }
  int truncation() const { return trunc_; }
  bool exact() const { return is_exact_order(trunc_); }
  // Certified zero: no nonzero coefficient below the truncation.
  bool is_zero() const { return c_.empty(); }
  bool is_monomial() const { return c_.size() == 1; }
  // Coefficient of z^k; throws InsufficientTruncation past the truncation.
  Rational coeff(int k) const;
  const Rational& leading() const;
  // Index one past the last stored coefficient.
  int end() const { return val_ + static_cast<int>(c_.size()); }
  const std::vector<Rational>& stored() const { return c_; }

  Series operator-() const;
  Series& operator+=(const Series& b);
  Series& operator-=(const Series& b);
  Series& operator*=(const Series& b);
  Series& operator*=(const Rational& s);

  Series inverse() const;
  Series derivative() const;
  Series nth_derivative(int n) const;
  Series truncated(int t) const;
  Series shifted(int k) const;  // multiply by z^k
  Series pow(long n) const;
  // (c z^v (1 + eps))^e with c = 1 and e*v integral; binomial expansion.
  Series pow(const Rational& e) const;
  // Square root when the leading coefficient is a rational square and the
  // valuation is even.
  Series sqrt() const;

  // Equality on the range both operands certify.
  bool agrees(const Series& b) const;
  // Structural equality (same truncation and coefficients).
  bool operator==(const Series& b) const;

  std::string to_string() const;

 private:
  Series(int val, int trunc, std::vector<Rational> c);
  void canonicalize();

  int val_;
  int trunc_;
  std::vector<Rational> c_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(Series a, const Rational& s);
Series operator*(const Rational& s, Series a);
Series operator/(const Series& a, const Series& b);
Series operator/(Series a, const Rational& s);

// Density: a series together with a weight in (1/2)Z, a local section of
// Omega^weight in the trivialization by dz.
struct Density {
  Series series;
  Rational weight;

  Density() = default;
  Density(Series s, Rational w);
  void check_weight() const;
};

Density operator*(const Density& a, const Density& b);
Density operator+(const Density& a, const Density& b);

}  // namespace opers
