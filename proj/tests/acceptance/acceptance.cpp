// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "opers/errors.hpp"
#include "support.hpp"

using namespace opers;
using testing_support::poly;
using testing_support::Rng;

namespace {

constexpr int kTrunc = 12;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

Series random_poly(Rng& r, int deg, int trunc = kTrunc) { return r.series(deg, trunc); }

bool same_v(const CanonicalForm& a, const CanonicalForm& b) {
  if (a.v.size() != b.v.size()) return false;
  for (std::size_t i = 0; i < a.v.size(); ++i)
    if (!a.v[i].series.agrees(b.v[i].series)) return false;
  return true;
}

BiKernel skew_lift(const Series& u) {
  DiffOp l(frac(-1, 2), frac(3, 2), 1, {u, Series(), Series::constant(1)});
  return symmetrize_lift(kernel_from_diffop(l), Parity::kSkew, 1);
}

DiffOp ltilde(const Series& u) {
  return DiffOp(-1, 2, 1, {u.derivative() * Rational(2), u * Rational(4), Series(), Series::constant(1)});
}

// 1. K^(4/3) = Ktilde and K^(2/3) symmetric.
Outcome c1() {
  Outcome o;
  Rng r(1001);
  for (int t = 0; t < 20; ++t) {
    Series u = random_poly(r, r.uniform(0, 5));
    BiKernel k = skew_lift(u);
    BiKernel k43 = bikernel_power(k, frac(4, 3));
    BiKernel kt = kernel_from_diffop(ltilde(u));
    o.require(k43.mmin() == -4 && k43.mmax() == -1 && k43.w1() == 2 && k43.w2() == 2, "P_{4,0} range");
    o.require(k43.agrees(kt), "K^(4/3) = Ktilde, sample " + std::to_string(t));
    BiKernel k23 = bikernel_power(k, frac(2, 3));
    o.require(k23.mmin() == -2 && k23.mmax() == 1 && k23.w1() == 1, "P_{2,-2} range");
    o.require(has_parity(k23, Parity::kSymmetric), "K^(2/3) symmetric, sample " + std::to_string(t));
  }
  return o;
}

// 2. Exact expansions of K and Ktilde.
Outcome c2() {
  Outcome o;
  Rng r(1002);
  for (int t = 0; t < 10; ++t) {
    Series u = random_poly(r, 5);
    BiKernel k = skew_lift(u);
    o.require(k.c(-3).agrees(Series::constant(1)), "c_-3 = 1");
    o.require(k.c(-2).is_zero(), "c_-2 = 0");
    o.require(k.c(-1).agrees(u * frac(1, 2)), "c_-1 = u/2");
    o.require(k.c(0).agrees(u.derivative() * frac(1, 4)), "c_0 = u'/4");
    for (const BiKernel& kt : {kernel_from_diffop(ltilde(u)), bikernel_power(k, frac(4, 3))}) {
      o.require(kt.c(-4).agrees(Series::constant(1)), "c_-4 = 1");
      o.require(kt.c(-3).is_zero(), "c_-3 = 0");
      o.require(kt.c(-2).agrees(u * frac(2, 3)), "c_-2 = 2u/3");
      o.require(kt.c(-1).agrees(u.derivative() * frac(1, 3)), "c_-1 = u'/3");
    }
  }
  return o;
}

// 3. Normalization suite.
Outcome c3() {
  Outcome o;
  Rng r(1003);
  std::vector<TripleRef> ts = {principal_triple(LieType::A, 1), principal_triple(LieType::A, 2),
                               principal_triple(LieType::C, 2), principal_triple(LieType::B, 2)};
  for (int t = 0; t < 100; ++t) {
    const TripleRef& tr = ts[static_cast<std::size_t>(t % 4)];
    OperConnection c{tr, 1, testing_support::random_oper(r, *tr, 3, 8)};
    GaugeElement g = testing_support::random_gauge(r, *tr, 3, 8);
    NormalizeResult n0 = normalize(c);
    NormalizeResult n1 = normalize(gauge_apply(c, g));
    o.require(same_v(n0.form, n1.form), "normalize o gauge = normalize on " + tr->spec().name());
    o.require(gauge_agrees(*tr, gauge_compose(*tr, g, n1.gauge), n0.gauge), "gauge composition");
    OperConnection canon{tr, 1, n0.form.matrix()};
    NormalizeResult fixed = normalize(canon);
    o.require(fixed.gauge.is_identity() && same_v(fixed.form, n0.form), "fixed point");
    NormalizeResult rec = normalize(gauge_apply(canon, g));
    o.require(gauge_agrees(*tr, gauge_compose(*tr, g, rec.gauge), fixed.gauge), "recovered gauge is the inverse");
  }
  return o;
}

// 4. Dictionary round trips.
Outcome c4() {
  Outcome o;
  Rng r(1004);
  const std::vector<std::pair<OperKind, int>> kinds = {
      {OperKind::kGl, 2}, {OperKind::kGl, 3}, {OperKind::kGl, 4}, {OperKind::kSl, 2}, {OperKind::kSl, 3},
      {OperKind::kSl, 4}, {OperKind::kSp, 2}, {OperKind::kSp, 4}, {OperKind::kSoOdd, 3}};
  for (const auto& [kind, n] : kinds)
    for (int t = 0; t < 5; ++t) {
      DiffOp l = testing_support::random_for_kind(r, kind, n, 3, 9);
      DictionaryOper d = oper_from_diffop(l, kind);
      o.require(diffop_from_oper(d).agrees(l), kind_name(kind) + " order " + std::to_string(n));
    }
  for (int t = 0; t < 5; ++t) {
    DiffOp a = testing_support::random_monic(r, 3, 3, 9);
    a.src = -1;
    a.tgt = 2;
    DiffOp l = testing_support::symmetrized(a);
    Density f(random_poly(r, 3, 9), 2);
    SoEvenData back = so_even_extract(*so_even_build(l, f).conn);
    o.require(back.l.agrees(l) && back.f.series.agrees(f.series), "so_even order 3");
  }
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 3;
    DiffOp l = testing_support::random_monic(r, n, 2, 9);
    if (t % 2 == 0) l.coeffs[static_cast<std::size_t>(n - 1)] = Series();
    o.require(sl_condition(l) == companion_matrix(l).trace().is_zero(), "defect bound iff Tr = 0");
  }
  return o;
}

// 5. Duality.
Outcome c5() {
  Outcome o;
  Rng r(1005);
  for (int t = 0; t < 20; ++t) {
    DiffOp l = testing_support::random_for_kind(r, OperKind::kSl, 3, 3, 9);
    OperConnection c = oper_from_diffop(l, OperKind::kSl).conn;
    DiffOp mlt = transpose(l) * Rational(-1);
    CanonicalForm via_dual = normalize(dualize(c)).form;
    CanonicalForm direct = normalize(oper_from_diffop(mlt, OperKind::kSl).conn).form;
    o.require(same_v(via_dual, direct), "canonical forms agree, sample " + std::to_string(t));
    o.require(symbols(mlt).principal.series.agrees(Series::constant(1)), "symbol of -L^t is (-1)^(n-1)");
  }
  return o;
}

// 6. so_odd pairing matrices.
Outcome c6() {
  Outcome o;
  Rng r(1006);
  for (int n : {3, 5}) {
    DiffOp l = testing_support::symmetrized(testing_support::random_monic(r, n, 3, 9));
    DictionaryOper d = oper_from_diffop(l, OperKind::kSoOdd);
    const SMat& g = *d.gram;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i + j < n - 1) o.require(g(i, j).is_zero(), "zero above the anti-diagonal");
        if (i + j == n - 1) o.require(g(i, j).agrees(Series::constant(i % 2 == 0 ? 1 : -1)), "(-1)^i anti-diagonal");
      }
    o.require(determinant(g).agrees(Series::constant(1)), "det = 1 for n = " + std::to_string(n));
  }
  return o;
}

// 7. sl(2) -> o(3).
Outcome c7() {
  Outcome o;
  Rng r(1007);
  Series u = random_poly(r, 4);
  Sl2O3 s = sl2_to_o3(Density(u, 2));
  const SMat& q = s.o3.q;
  Series m2u = u * Rational(-2);
  bool verbatim = q(0, 0).is_zero() && q(0, 1).agrees(m2u) && q(0, 2).is_zero() && q(1, 0).agrees(Series::constant(1)) &&
                  q(1, 1).is_zero() && q(1, 2).agrees(m2u) && q(2, 0).is_zero() &&
                  q(2, 1).agrees(Series::constant(1)) && q(2, 2).is_zero();
  o.require(verbatim && s.image_matches, "matrix (0 -2u 0; 1 0 -2u; 0 1 0)");
  for (int t = 0; t < 20; ++t) {
    Series uu = random_poly(r, 5), g = random_poly(r, 5);
    DiffOp l(frac(-1, 2), frac(3, 2), 1, {uu, Series(), Series::constant(1)});
    DiffOp br = lie_derivative(l, Density(g, -1));
    bool order0 = true;
    for (int i = 1; i <= br.order(); ++i) order0 = order0 && br.coeff(i).is_zero();
    o.require(order0 && apply(ltilde(uu), g).agrees(br.coeff(0) * Rational(2)), "Ltilde(v) = 2[v, L]");
  }
  return o;
}

// 8. Kostant section and the Hitchin map at planck 0.
Outcome c8() {
  Outcome o;
  Rng r(1008);
  auto t = principal_triple(LieType::A, 2);
  for (int s = 0; s < 10; ++s) {
    Rational a0 = r.rational(), a1 = r.rational(), a2 = -a0 - a1;
    SMat q = to_series(t->y());
    q(0, 0) += Series::constant(a0);
    q(1, 1) += Series::constant(a1);
    q(2, 2) += Series::constant(a2);
    CanonicalForm cf = normalize(OperConnection{t, 0, q}).form;
    std::vector<Density> h = hitchin_map(cf);
    // det(l - a) = l^3 - e1 l^2 + e2 l - e3; I_k = -p_k.
    Rational e2 = a0 * a1 + a0 * a2 + a1 * a2, e3 = a0 * a1 * a2;
    o.require(h[0].series.agrees(Series::constant(-e2)) && h[1].series.agrees(Series::constant(e3)),
              "invariants of a + y");
  }
  for (int s = 0; s < 50; ++s) {
    OperConnection c{t, 0, testing_support::random_oper(r, *t, 2, 8)};
    GaugeElement g = testing_support::random_gauge(r, *t, 2, 8);
    std::vector<Density> h0 = hitchin_map(normalize(c).form), h1 = hitchin_map(normalize(gauge_apply(c, g)).form);
    bool same = true;
    for (std::size_t i = 0; i < h0.size(); ++i) same = same && h0[i].series.agrees(h1[i].series);
    o.require(same, "conjugation invariance");
  }
  return o;
}

// 9. G_m equivariance.
Outcome c9() {
  Outcome o;
  Rng r(1009);
  std::vector<TripleRef> ts = {principal_triple(LieType::A, 1), principal_triple(LieType::A, 2),
                               principal_triple(LieType::C, 2), principal_triple(LieType::B, 2)};
  for (int s = 0; s < 20; ++s) {
    const TripleRef& t = ts[static_cast<std::size_t>(s % 4)];
    OperConnection c{t, 1, testing_support::random_oper(r, *t, 2, 8)};
    CanonicalForm base = normalize(c).form;
    for (int lambda : {2, 3}) {
      CanonicalForm sc = normalize(OperConnection{t, Rational(lambda), scale(c.q, Series::constant(lambda))}).form;
      for (std::size_t j = 0; j < base.v.size(); ++j) {
        Rational f = 1;
        for (int p = 0; p <= base.exponents()[j]; ++p) f *= lambda;
        o.require(sc.v[j].series.agrees(base.v[j].series * f), "v_d scales by lambda^(d+1)");
      }
    }
  }
  return o;
}

// 10. Singular opers.
Outcome c10() {
  Outcome o;
  Rng r(1010);
  int mismatches = 0, displayed = 0, runs = 0;
  for (LieType type : {LieType::A}) {
    for (int rank : {1, 2}) {
      auto t = principal_triple(type, rank);
      for (int m : {1, 2}) {
        for (int s = 0; s < 5; ++s) {
          CanonicalForm qt{t, 1, {}};
          for (int d : t->v_degrees()) qt.v.emplace_back(r.unit(3, kTrunc), d + 1);
          DesingularizeResult res = desingularize(Series::monomial(1, m), qt);
          SingularityClass sc = classify_singularity(res.form);
          const auto degs = res.form.exponents();
          for (std::size_t j = 0; j < degs.size(); ++j)
            o.require(sc.pole_orders[j] <= (degs[j] + 1) * m, "pole order bound");
          o.require(sc.m == m, "classify recovers m = " + std::to_string(m) + " on " + t->spec().name());
          ++runs;
          if (!res.formula_holds) ++mismatches;
          if (res.displayed_gauge_canonical) ++displayed;
        }
      }
    }
  }
  o.note("degree-1 correction under the x-interpretation: " + std::to_string(runs - mismatches) + "/" +
         std::to_string(runs) + " match");
  o.note("finding: the sl(2) gauge image of (f, f'; 0, 1) lands directly in y + V in " + std::to_string(displayed) + "/" +
         std::to_string(runs) + " runs; the residual gauge is normalized away");
  o.require(mismatches == 0, "degree-1 correction formula");
  return o;
}

// 11. SO(4) opers.
Outcome c11() {
  Outcome o;
  Rng r(1011);
  for (int s = 0; s < 10; ++s) {
    DiffOp a = testing_support::random_monic(r, 3, 3, 9);
    a.src = -1;
    a.tgt = 2;
    DiffOp l = testing_support::symmetrized(a);
    Density f(random_poly(r, 3, 9), 2);
    SoEvenOper so = so_even_build(l, f);
    for (int i = 0; i < 5; ++i) o.require(so.conditions[static_cast<std::size_t>(i)], "condition " + std::to_string(i + 1));
    auto cd = so_even_conditions(so.conn->q, so.conn->triple->spec().form, 2);
    for (int i = 0; i < 5; ++i) o.require(cd[static_cast<std::size_t>(i)], "condition " + std::to_string(i + 1) + " in so(4)");
    SoEvenData back = so_even_extract(*so.conn);
    o.require(back.l.agrees(l) && back.f.series.agrees(f.series), "build/extract round trip");
  }
  return o;
}

// h^0(X, Omega^k(kD)) from Riemann-Roch: deg L = k(2g - 2 + deg D).
long rr(int k, int g, int degD) {
  long deg = static_cast<long>(k) * (2 * g - 2 + degD);
  if (deg < 0) return 0;
  if (deg == 0) return 1;
  return deg - g + 1;
}

// 12. Dimensions.
Outcome c12() {
  Outcome o;
  struct Row {
    int rank, genus, want;
  };
  for (Row row : {Row{1, 2, 3}, Row{2, 2, 8}, Row{1, 1, 1}}) {
    LieAlgebraSpec s = build_algebra(LieType::A, row.rank);
    long oracle = 0;
    for (int d : s.exponents) oracle += rr(d + 1, row.genus, 0);
    long got = moduli_dimension(s, row.genus, 0).total;
    o.require(oracle == row.want && got == row.want, s.name() + " genus " + std::to_string(row.genus));
  }
  return o;
}

// 13. The planck family.
Outcome c13() {
  Outcome o;
  Rng r(1013);
  for (Rational h : {Rational(0), Rational(1), frac(1, 2), Rational(-2), Rational(5)}) {
    Series f = random_poly(r, 4);
    DiffOp v = DiffOp::power(1, 0, h), mf = DiffOp::multiplication(f, 0, h);
    DiffOp lhs = compose(v, mf), rhs = compose(DiffOp::multiplication(f, 1, h), v) + DiffOp(0, 1, h, {f.derivative() * h});
    o.require(lhs.agrees(rhs), "v f = f v + h v(f) at h = " + format_rational(h));
  }
  auto t = principal_triple(LieType::A, 2);
  for (int s = 0; s < 10; ++s) {
    SMat q = testing_support::random_oper(r, *t, 2, 8);
    OperConnection plain;
    plain.triple = t;
    plain.q = q;
    NormalizeResult a = normalize(OperConnection{t, 1, q});
    NormalizeResult b = normalize(plain);
    NormalizeResult c = normalize_weighted(*t, q, Series::constant(1), 1);
    o.require(same_v(a.form, b.form) && same_v(a.form, c.form), "h = 1 agrees with the plain case");

    // At h = 0 with y-normalized simple coordinates the gauge is unipotent N and
    // the canonical matrix is N^{-1} q N.
    for (int i = 0; i < t->spec().rank; ++i) {
      const QMat& fi = t->spec().f[static_cast<std::size_t>(i)];
      Series have = t->minus_simple_coord(q, i);
      q += scale(to_series(fi), Series::constant(t->y_coeff(i)) - have);
    }
    NormalizeResult z = normalize(OperConnection{t, 0, q});
    SMat nmat = unipotent_matrix(*t, z.gauge);
    SMat conj = inverse(nmat) * q * nmat;
    o.require(agrees(conj, z.form.matrix()), "h = 0 is conjugation");
  }
  return o;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  std::vector<Item> items = {
      {1, "kernel identity K^(4/3) = Ktilde, K^(2/3) symmetric", c1},
      {2, "exact kernel expansions", c2},
      {3, "normalization suite", c3},
      {4, "dictionary round trips", c4},
      {5, "duality", c5},
      {6, "so_odd pairing pattern", c6},
      {7, "sl(2) to o(3)", c7},
      {8, "Kostant section and Hitchin map", c8},
      {9, "G_m equivariance", c9},
      {10, "singular opers", c10},
      {11, "SO(4) opers", c11},
      {12, "dimensions", c12},
      {13, "planck family", c13},
  };
  int failed = 0;
  for (const Item& it : items) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 5.0) {
      o.pass = false;
      o.notes.push_back("exceeded 5 s");
    }
    std::ostringstream ms;
    ms.precision(3);
    ms << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << it.id << ": " << it.title << " (" << ms.str() << " s)\n";
    std::size_t shown = 0;
    for (const std::string& n : o.notes) {
      if (shown++ >= 5) break;
      std::cout << "    " << n << "\n";
    }
    if (!o.pass) ++failed;
  }
  std::cout << (items.size() - static_cast<std::size_t>(failed)) << "/" << items.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
