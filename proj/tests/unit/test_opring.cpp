#include <doctest.h>

#include "opers/errors.hpp"
#include "support.hpp"

using namespace opers;
using testing_support::poly;
using testing_support::Rng;

namespace {

DiffOp random_op(Rng& r, int n, const Rational& src, const Rational& h = 1) {
  std::vector<Series> f;
  for (int i = 0; i <= n; ++i) f.push_back(r.series(3, 9));
  f.back() = Series::constant(1);
  return DiffOp(src, src + n, h, std::move(f));
}

}  // namespace

TEST_CASE("xi g = g xi + h g'") {
  Rng r(2);
  for (Rational h : {Rational(1), Rational(0), frac(2, 3), Rational(-3)}) {
    Series g = r.series(4, 10);
    DiffOp xi = DiffOp::power(1, 0, h);
    DiffOp mg = DiffOp::multiplication(g, 0, h);
    DiffOp lhs = compose(xi, mg);
    DiffOp rhs = compose(DiffOp::multiplication(g, 1, h), xi) + DiffOp(0, 1, h, {g.derivative() * h});
    CHECK(lhs.agrees(rhs));
  }
}

TEST_CASE("composition is associative") {
  Rng r(4);
  DiffOp a = random_op(r, 2, 0), b = random_op(r, 1, -1), c = random_op(r, 2, -3);
  CHECK(compose(compose(a, b), c).agrees(compose(a, compose(b, c))));
  CHECK_THROWS_AS(compose(a, a), PreconditionError);
}

TEST_CASE("transpose is an anti-involution") {
  Rng r(6);
  DiffOp a = random_op(r, 3, frac(-1, 2)), b = random_op(r, 2, frac(-5, 2));
  CHECK(transpose(transpose(a)).agrees(a));
  CHECK(transpose(compose(a, b)).agrees(compose(transpose(b), transpose(a))));
  DiffOp d = DiffOp::power(1, 0);
  CHECK(transpose(d).agrees(d * Rational(-1)));
  CHECK(transpose(d).src == 0);
  CHECK(transpose(d).tgt == 1);
}

TEST_CASE("inverse of d^2 + u") {
  Series u = poly({1, 2, 3}, 10);
  DiffOp l(frac(-1, 2), frac(3, 2), 1, {u, Series(), Series::constant(1)});
  PseudoSymbol inv = pseudo_invert(l, 4);
  CHECK(inv.coeff(-2).agrees(Series::constant(1)));
  CHECK(inv.coeff(-3).is_zero());
  CHECK(inv.coeff(-4).agrees(-u));
  CHECK(inv.coeff(-5).agrees(u.derivative() * Rational(2)));
  PseudoSymbol one = compose(PseudoSymbol::from_diffop(l), inv);
  CHECK(one.coeff(0).agrees(Series::constant(1)));
  for (int i = one.floor; i < 0; ++i) CHECK(one.coeff(i).is_zero());
}

TEST_CASE("residue pairing of the companion basis") {
  DiffOp l(frac(-1, 2), frac(3, 2), 1, {poly({0, 1}, 10), Series(), Series::constant(1)});
  DiffOp one = DiffOp::power(0, l.src), d = DiffOp::power(1, 1 - l.tgt);
  CHECK(pairing(one, DiffOp::power(0, 1 - l.tgt), l, 2).is_zero());
  CHECK(pairing(one, d, l, 2).agrees(Series::constant(-1)));
}

TEST_CASE("symbols and the defect") {
  Rng r(8);
  DiffOp l = testing_support::random_monic(r, 3, 3, 9);
  Symbols s = symbols(l);
  CHECK(s.principal.series.agrees(Series::constant(1)));
  CHECK(s.defect_order <= 2);
  DiffOp skew = testing_support::symmetrized(l);
  CHECK(symbols(skew).defect_order == -1);
}

TEST_CASE("kernel round trip and expansions") {
  Rng r(10);
  DiffOp l = random_op(r, 3, -1);
  CHECK(diffop_from_kernel(kernel_from_diffop(l)).agrees(l));
  Series u = poly({2, 0, 1}, 10);
  DiffOp lt(-1, 2, 1, {u.derivative() * Rational(2), u * Rational(4), Series(), Series::constant(1)});
  BiKernel kt = kernel_from_diffop(lt);
  CHECK(kt.c(-4).agrees(Series::constant(1)));
  CHECK(kt.c(-3).is_zero());
  CHECK(kt.c(-2).agrees(u * frac(2, 3)));
  CHECK(kt.c(-1).agrees(u.derivative() * frac(1, 3)));
}

TEST_CASE("Lie derivative against the third-order operator") {
  Rng r(12);
  for (int trial = 0; trial < 5; ++trial) {
    Series u = r.series(4, 12), g = r.series(4, 12);
    DiffOp l(frac(-1, 2), frac(3, 2), 1, {u, Series(), Series::constant(1)});
    DiffOp br = lie_derivative(l, Density(g, -1));
    for (int i = 1; i <= br.order(); ++i) CHECK(br.coeff(i).is_zero());
    DiffOp lt(-1, 2, 1, {u.derivative() * Rational(2), u * Rational(4), Series(), Series::constant(1)});
    CHECK(apply(lt, g).agrees(br.coeff(0) * Rational(2)));
  }
}

TEST_CASE("expanded operators and apply") {
  DiffOp l(0, 2, 2, {Series(), Series(), Series::constant(1)});
  CHECK(l.expanded().coeff(2).agrees(Series::constant(4)));
  CHECK(apply(l, Series::monomial(1, 3)).agrees(Series::monomial(24, 1)));
}
