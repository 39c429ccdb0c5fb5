#include <doctest.h>

#include "opers/errors.hpp"
#include "support.hpp"

using namespace opers;
using testing_support::poly;
using testing_support::Rng;

namespace {

const std::vector<std::pair<OperKind, int>> kKinds = {
    {OperKind::kGl, 2}, {OperKind::kGl, 3}, {OperKind::kGl, 4}, {OperKind::kSl, 2}, {OperKind::kSl, 3},
    {OperKind::kSl, 4}, {OperKind::kSp, 2}, {OperKind::kSp, 4}, {OperKind::kSoOdd, 3},
};

}  // namespace

TEST_CASE("companion matrix") {
  DiffOp l(-1, 2, 1, {poly({1}), poly({2}), poly({3}), Series::constant(1)});
  SMat c = companion_matrix(l);
  CHECK(c(1, 0).agrees(Series::constant(1)));
  CHECK(c(2, 1).agrees(Series::constant(1)));
  CHECK(c(0, 2).agrees(Series::constant(-1)));
  CHECK(c(2, 2).agrees(Series::constant(-3)));
  CHECK(read_off(c, 1, -1).agrees(l));
}

TEST_CASE("dictionary round trips") {
  Rng r(17);
  for (const auto& [kind, n] : kKinds) {
    for (int trial = 0; trial < 3; ++trial) {
      DiffOp l = testing_support::random_for_kind(r, kind, n, 3, 9);
      DictionaryOper d = oper_from_diffop(l, kind);
      CHECK(diffop_from_oper(d).agrees(l));
      if (kind != OperKind::kGl) {
        CHECK_NOTHROW(check_oper(d.conn));
        GaugeElement g = testing_support::random_gauge(r, *d.conn.triple, 2, 9);
        CHECK(diffop_from_oper(gauge_apply(d.conn, g), kind).agrees(l));
      }
    }
  }
}

TEST_CASE("sl condition is the vanishing companion trace") {
  Rng r(19);
  for (int trial = 0; trial < 10; ++trial) {
    DiffOp l = testing_support::random_monic(r, 3, 2, 9);
    if (trial % 2 == 0) l.coeffs[2] = Series();
    bool traceless = companion_matrix(l).trace().is_zero();
    CHECK(sl_condition(l) == traceless);
    if (!traceless) CHECK_THROWS_AS(oper_from_diffop(l, OperKind::kSl), PreconditionError);
  }
}

TEST_CASE("preconditions of the dictionary") {
  DiffOp l(frac(-1, 2), frac(3, 2), 1, {poly({1}), Series(), Series::constant(2)});
  CHECK_THROWS_AS(oper_from_diffop(l, OperKind::kSl), PreconditionError);
  DiffOp odd(-1, 2, 1, {poly({1}), Series(), Series(), Series::constant(1)});
  CHECK_THROWS_AS(oper_from_diffop(odd, OperKind::kSp), PreconditionError);
  CHECK_THROWS_AS(oper_from_diffop(odd, OperKind::kSoOdd), PreconditionError);
  CHECK_THROWS_AS(parse_kind("so"), MalformedInput);
}

TEST_CASE("sp pairing is alternating and horizontal") {
  Rng r(23);
  DiffOp l = testing_support::random_for_kind(r, OperKind::kSp, 4, 3, 9);
  DictionaryOper d = oper_from_diffop(l, OperKind::kSp);
  REQUIRE(d.gram.has_value());
  const SMat& g = *d.gram;
  CHECK(agrees(g.transpose(), -g));
  CHECK(gram_horizontal(d.companion.q, g, 1));
}

TEST_CASE("so_odd pairing pattern and determinant") {
  Rng r(29);
  for (int n : {3, 5}) {
    DiffOp l = testing_support::symmetrized(testing_support::random_monic(r, n, 3, 9));
    DictionaryOper d = oper_from_diffop(l, OperKind::kSoOdd);
    const SMat& g = *d.gram;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i + j < n - 1) CHECK(g(i, j).is_zero());
        if (i + j == n - 1) CHECK(g(i, j).agrees(Series::constant(i % 2 == 0 ? 1 : -1)));
      }
    CHECK(agrees(g.transpose(), g));
    CHECK(determinant(g).agrees(Series::constant(1)));
  }
}

TEST_CASE("dual oper reads off (-1)^n L^t") {
  Rng r(31);
  for (int trial = 0; trial < 4; ++trial) {
    DiffOp l = testing_support::random_for_kind(r, OperKind::kSl, 3, 3, 9);
    DictionaryOper d = oper_from_diffop(l, OperKind::kSl);
    DiffOp dual = diffop_from_oper(dualize(d.conn), OperKind::kSl, 1 - l.tgt);
    CHECK(dual.agrees(transpose(l) * Rational(-1)));
    CanonicalForm a = normalize(dualize(d.conn)).form;
    CanonicalForm b = normalize(oper_from_diffop(transpose(l) * Rational(-1), OperKind::kSl).conn).form;
    for (std::size_t j = 0; j < a.v.size(); ++j) CHECK(a.v[j].series.agrees(b.v[j].series));
  }
}

TEST_CASE("sl(2) to o(3)") {
  Series u = poly({1, -2, 0, 1}, 12);
  Sl2O3 r = sl2_to_o3(Density(u, 2));
  CHECK(r.image_matches);
  CHECK(r.power_identity);
  CHECK(r.k23_symmetric);
  CHECK(diffop_from_oper(r.o3, OperKind::kSoOdd, Rational(-1)).agrees(r.ltilde));
  CHECK(normalize(r.o3).form.v[0].series.agrees(-u));
}

TEST_CASE("SO(2k) opers from (L, f)") {
  Rng r(37);
  for (int k : {2, 3}) {
    DiffOp a = testing_support::random_monic(r, 2 * k - 1, 3, 9);
    a.src = 1 - k;
    a.tgt = k;
    DiffOp l = testing_support::symmetrized(a);
    Density f(r.series(3, 9), k);
    SoEvenOper so = so_even_build(l, f);
    for (bool b : so.conditions) CHECK(b);
    CHECK(so.symbol_skew);
    SoEvenData back = so_even_extract_adapted(so.adapted, 1, k);
    CHECK(back.l.agrees(l));
    CHECK(back.f.series.agrees(f.series));
    if (k % 2 == 0) {
      REQUIRE(so.conn.has_value());
      CHECK_NOTHROW(check_oper(*so.conn));
      SoEvenData viaD = so_even_extract(*so.conn);
      CHECK(viaD.l.agrees(l));
      CHECK(viaD.f.series.agrees(f.series));
    } else {
      CHECK_FALSE(so.conn.has_value());
    }
  }
}

TEST_CASE("SO(2k) extraction with f = 0") {
  DiffOp l(-1, 2, 1, {poly({0, 2}), poly({1, 1}), Series(), Series::constant(1)});
  l = testing_support::symmetrized(l);
  SoEvenOper so = so_even_build(l, Density(Series(), 2));
  SoEvenData back = so_even_extract(*so.conn);
  CHECK(back.f.series.is_zero());
  CHECK(back.l.agrees(l));
}

TEST_CASE("SO(2k) conditions detect broken flags") {
  DiffOp l(-1, 2, 1, {Series(), Series(), Series(), Series::constant(1)});
  SoEvenOper so = so_even_build(l, Density(poly({1}), 2));
  SMat q = so.conn->q;
  q(3, 0) = Series::constant(1);
  auto c = so_even_conditions(q, principal_triple(LieType::D, 2)->spec().form, 2);
  CHECK_FALSE(c[2]);
  OperConnection bad = *so.conn;
  bad.q = q;
  CHECK_THROWS_AS(so_even_extract(bad), NotAnOper);
}
