#pragma once

#include <random>
#include <vector>

#include "opers/dictionary.hpp"

namespace testing_support {

using namespace opers;

inline Series poly(std::initializer_list<int> c, int trunc = kExact) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return Series::from_coeffs(0, std::move(v), trunc);
}

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Rational rational(int span = 3) {
    int den = uniform(1, 3);
    return frac(uniform(-span, span), den);
  }
  Rational nonzero(int span = 3) {
    Rational r;
    do r = rational(span);
    while (sgn(r) == 0);
    return r;
  }
  // Polynomial of degree <= deg with certified truncation trunc.
  Series series(int deg, int trunc) {
    std::vector<Rational> v;
    for (int i = 0; i <= deg; ++i) v.push_back(rational());
    return Series::from_coeffs(0, std::move(v), trunc);
  }
  // Unit in the power series ring.
  Series unit(int deg, int trunc) {
    Series s = series(deg, trunc);
    return s + Series::constant(nonzero() - s.coeff(0));
  }

 private:
  std::mt19937 gen_;
};

// Random element of y + b with unit (-alpha) coordinates.
inline SMat random_oper(Rng& r, const PrincipalTriple& t, int deg, int trunc) {
  SMat q(t.dim(), t.dim());
  for (int i = 0; i < t.spec().rank; ++i) q += scale(to_series(t.spec().f[static_cast<std::size_t>(i)]), r.unit(deg, trunc));
  for (int k = 0; k <= t.max_degree(); ++k)
    for (const QMat& b : t.piece(k).basis) q += scale(to_series(b), r.series(deg, trunc));
  return q;
}

inline GaugeElement random_gauge(Rng& r, const PrincipalTriple& t, int deg, int trunc) {
  GaugeElement g;
  for (int i = 0; i < t.spec().rank; ++i) g.torus.push_back(r.unit(deg, trunc));
  for (int k = 1; k <= t.max_degree(); ++k) {
    SMat u(t.dim(), t.dim());
    for (const QMat& b : t.piece(k).basis) u += scale(to_series(b), r.series(deg, trunc));
    g.steps.push_back(u);
  }
  return g;
}

// Monic operator of order n with weights ((1 - n)/2, (1 + n)/2).
inline DiffOp random_monic(Rng& r, int n, int deg, int trunc, const Rational& planck = 1) {
  std::vector<Series> f;
  for (int i = 0; i < n; ++i) f.push_back(r.series(deg, trunc));
  f.push_back(Series::constant(1));
  return DiffOp(frac(1 - n, 2), frac(1 + n, 2), planck, std::move(f));
}

// (A + (-1)^n A^t) / 2: symmetric for even n, skew for odd n.
inline DiffOp symmetrized(const DiffOp& a) {
  int n = a.order();
  return (a + transpose(a) * Rational(n % 2 == 0 ? 1 : -1)) * Rational(1, 2);
}

inline DiffOp random_for_kind(Rng& r, OperKind kind, int n, int deg, int trunc) {
  DiffOp l = random_monic(r, n, deg, trunc);
  if (kind == OperKind::kSl) l.coeffs[static_cast<std::size_t>(n - 1)] = Series();
  if (kind == OperKind::kSp || kind == OperKind::kSoOdd) l = symmetrized(l);
  return l;
}

}  // namespace testing_support
