#include "opers/gaugeflow.hpp"

#include <algorithm>
#include <map>

#include "opers/errors.hpp"

namespace opers {

namespace {

constexpr int kDefaultRelativeOrder = 12;

bool exact_zero(const Series& s) { return s.is_zero() && s.exact(); }

SMat qmat_times(const QMat& m, const Series& s) {
  SMat out(m.rows(), m.cols());
  if (exact_zero(s)) return out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) out(i, j) = s * m(i, j);
  return out;
}

// Lowest principal degree carried by an entry of x that is not an exact zero.
int lowest_degree(const PrincipalTriple& t, const SMat& x) {
  int lo = t.max_degree() + 1;
  for (int a = 0; a < x.rows(); ++a)
    for (int b = 0; b < x.cols(); ++b)
      if (!exact_zero(x(a, b))) lo = std::min(lo, t.entry_degree(a, b));
  return lo;
}

std::vector<Series> torus_or_ones(const PrincipalTriple& t, const GaugeElement& b) {
  if (!b.torus.empty()) {
    if (static_cast<int>(b.torus.size()) != t.spec().rank)
      throw PreconditionError("gauge torus has the wrong number of coordinates");
    return b.torus;
  }
  return std::vector<Series>(static_cast<std::size_t>(t.spec().rank), Series::constant(1));
}

// Entrywise Ad(t^{sign}): entry (a, b) times prod_i c_i^{sign * n_i(a, b)}.
SMat torus_adjoint(const PrincipalTriple& t, const SMat& x, const std::vector<Series>& c, int sign) {
  const int n = x.rows();
  std::map<std::pair<int, int>, Series> powers;
  auto power = [&](int i, int e) -> const Series& {
    auto key = std::make_pair(i, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, c[static_cast<std::size_t>(i)].pow(static_cast<long>(e))).first;
    return it->second;
  };
  SMat out(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (exact_zero(x(a, b))) continue;
      Series v = x(a, b);
      const auto& rc = t.root_coords(a, b);
      for (std::size_t i = 0; i < rc.size(); ++i)
        if (rc[i] != 0) v = v * power(static_cast<int>(i), sign * rc[i]);
      out(a, b) = v;
    }
  return out;
}

// t^{-1} t' = sum_i (c_i'/c_i) coweight_i.
SMat torus_log_derivative(const PrincipalTriple& t, const std::vector<Series>& c) {
  const int n = t.dim();
  SMat out(n, n);
  for (std::size_t i = 0; i < c.size(); ++i) {
    Series d = c[i].derivative();
    if (exact_zero(d)) continue;
    out += qmat_times(t.coweight(static_cast<int>(i)), d / c[i]);
  }
  return out;
}

void check_torus(const std::vector<Series>& c) {
  for (const Series& s : c)
    if (s.is_zero()) throw PreconditionError("torus coordinate with zero leading coefficient");
}

// e^{-ad u} q + w * Phi(-ad u)(u') with u homogeneous of degree r >= 1.
SMat exp_step(const PrincipalTriple& t, const SMat& q, const SMat& u, int r, const Series& w) {
  if (is_zero(u) && min_truncation(u) >= kExact / 2) return q;
  const int top = t.max_degree();
  SMat out = q;
  int lo = lowest_degree(t, q);
  SMat term = q;
  for (int k = 1; lo + k * r <= top; ++k) {
    term = scale(bracket(u, term), Series::constant(Rational(-1, k)));
    out += term;
  }
  if (!exact_zero(w)) {
    SMat du = derivative(u);
    SMat acc = du, wk = du;
    for (int k = 1; r + k * r <= top; ++k) {
      wk = scale(bracket(u, wk), Series::constant(Rational(-1, k + 1)));
      acc += wk;
    }
    out += scale(acc, w);
  }
  return out;
}

SMat exp_matrix(const SMat& u) {
  const int n = u.rows();
  SMat out = SMat::identity(n), term = SMat::identity(n);
  for (int k = 1; k < n; ++k) {
    term = scale(term * u, Series::constant(Rational(1, k)));
    if (is_zero(term) && min_truncation(term) >= kExact / 2) break;
    out += term;
  }
  return out;
}

std::vector<SMat> factor_unipotent(const PrincipalTriple& t, SMat nmat) {
  const int n = t.dim();
  std::vector<SMat> steps;
  for (int r = 1; r <= t.max_degree(); ++r) {
    SMat u = t.component(nmat - SMat::identity(n), r);
    steps.push_back(u);
    nmat = exp_matrix(-u) * nmat;
  }
  if (!agrees(nmat, SMat::identity(n))) throw IdentityCheckFailure("unipotent factorization did not terminate");
  return steps;
}

bool is_one(const Series& s) { return s.agrees(Series::constant(1)); }

Series reciprocal(const Series& f, int rel) {
  if (f.exact() && !f.is_monomial()) return f.truncated(f.valuation() + rel).inverse();
  return f.inverse();
}

int relative_order(const std::vector<Density>& v) {
  int rel = -1;
  for (const Density& d : v)
    if (!d.series.exact()) {
      int r = d.series.truncation() - (d.series.is_zero() ? 0 : d.series.valuation());
      rel = rel < 0 ? r : std::min(rel, r);
    }
  return rel < 0 ? kDefaultRelativeOrder : std::max(rel, 1);
}

bool in_normal_form(const PrincipalTriple& t, const SMat& q) {
  if (!agrees(t.component(q, -1), to_series(t.y()))) return false;
  for (int k = -t.max_degree(); k < -1; ++k)
    if (!is_zero(t.component(q, k))) return false;
  for (int k = 0; k <= t.max_degree(); ++k)
    if (!is_zero(t.kostant_split(t.component(q, k), k).z)) return false;
  return true;
}

void check_oper_matrix(const PrincipalTriple& t, const SMat& q) {
  const int n = t.dim();
  if (q.rows() != n || q.cols() != n) throw MalformedInput("connection matrix has the wrong size");
  if (!t.spec().contains(q)) throw PreconditionError("connection matrix is not in " + t.spec().name());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t.entry_degree(a, b) < -1 && !q(a, b).is_zero()) throw NotAnOper("connection has components below degree -1");
  for (int i = 0; i < t.spec().rank; ++i) {
    Series s = t.minus_simple_coord(q, i);
    std::string name = "simple root coefficient " + std::to_string(i + 1);
    if (s.is_zero()) {
      if (s.truncation() <= 0) throw InsufficientTruncation(name + " is not certified");
      throw NotAnOper(name + " vanishes at the origin");
    }
    if (s.valuation() != 0) throw NotAnOper(name + " is not a unit");
  }
}

}  // namespace

GaugeElement GaugeElement::identity(const PrincipalTriple& t) {
  GaugeElement g;
  g.torus.assign(static_cast<std::size_t>(t.spec().rank), Series::constant(1));
  for (int r = 1; r <= t.max_degree(); ++r) g.steps.emplace_back(t.dim(), t.dim());
  return g;
}

bool GaugeElement::is_identity() const {
  for (const Series& c : torus)
    if (!is_one(c)) return false;
  for (const SMat& u : steps)
    if (!is_zero(u)) return false;
  return true;
}

SMat CanonicalForm::matrix() const {
  const auto& vb = triple->vbasis_all();
  if (vb.size() != v.size()) throw PreconditionError("canonical form has the wrong number of coordinates");
  SMat m = to_series(triple->y());
  for (std::size_t j = 0; j < v.size(); ++j) m += qmat_times(vb[j].matrix, v[j].series);
  return m;
}

std::vector<int> CanonicalForm::exponents() const { return triple->v_degrees(); }

void check_oper(const OperConnection& conn) { check_oper_matrix(*conn.triple, conn.q); }

SMat gauge_apply_weighted(const PrincipalTriple& t, const SMat& q, const Series& weight, const GaugeElement& b) {
  SMat out = q;
  if (!b.torus.empty()) {
    std::vector<Series> c = torus_or_ones(t, b);
    check_torus(c);
    out = torus_adjoint(t, out, c, -1);
    if (!exact_zero(weight)) out += scale(torus_log_derivative(t, c), weight);
  }
  for (std::size_t r = 0; r < b.steps.size(); ++r) {
    const SMat& u = b.steps[r];
    int deg = static_cast<int>(r) + 1;
    for (int a = 0; a < u.rows(); ++a)
      for (int c = 0; c < u.cols(); ++c)
        if (t.entry_degree(a, c) != deg && !u(a, c).is_zero())
          throw PreconditionError("gauge step " + std::to_string(deg) + " is not homogeneous");
    out = exp_step(t, out, u, deg, weight);
  }
  return out;
}

OperConnection gauge_apply(const OperConnection& conn, const GaugeElement& b) {
  OperConnection out = conn;
  out.q = gauge_apply_weighted(*conn.triple, conn.q, Series::constant(conn.planck), b);
  return out;
}

SMat unipotent_matrix(const PrincipalTriple& t, const GaugeElement& b) {
  SMat m = SMat::identity(t.dim());
  for (const SMat& u : b.steps) m = m * exp_matrix(u);
  return m;
}

GaugeElement gauge_compose(const PrincipalTriple& t, const GaugeElement& a, const GaugeElement& b) {
  std::vector<Series> ca = torus_or_ones(t, a), cb = torus_or_ones(t, b);
  GaugeElement g;
  for (std::size_t i = 0; i < ca.size(); ++i) g.torus.push_back(ca[i] * cb[i]);
  SMat na = torus_adjoint(t, unipotent_matrix(t, a), cb, -1);
  g.steps = factor_unipotent(t, na * unipotent_matrix(t, b));
  return g;
}

GaugeElement gauge_inverse(const PrincipalTriple& t, const GaugeElement& b) {
  std::vector<Series> c = torus_or_ones(t, b);
  check_torus(c);
  GaugeElement g;
  for (const Series& s : c) g.torus.push_back(s.inverse());
  SMat ninv = SMat::identity(t.dim());
  for (auto it = b.steps.rbegin(); it != b.steps.rend(); ++it) ninv = ninv * exp_matrix(-*it);
  g.steps = factor_unipotent(t, torus_adjoint(t, ninv, c, 1));
  return g;
}

bool gauge_agrees(const PrincipalTriple& t, const GaugeElement& a, const GaugeElement& b) {
  std::vector<Series> ca = torus_or_ones(t, a), cb = torus_or_ones(t, b);
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!ca[i].agrees(cb[i])) return false;
  std::size_t len = std::max(a.steps.size(), b.steps.size());
  SMat zero(t.dim(), t.dim());
  for (std::size_t r = 0; r < len; ++r) {
    const SMat& ua = r < a.steps.size() ? a.steps[r] : zero;
    const SMat& ub = r < b.steps.size() ? b.steps[r] : zero;
    if (!agrees(ua, ub)) return false;
  }
  return true;
}

NormalizeResult normalize_weighted(const PrincipalTriple& t, const SMat& q0, const Series& weight,
                                   const Rational& planck) {
  const int top = t.max_degree();
  const int rank = t.spec().rank;
  check_oper_matrix(t, q0);
  NormalizeResult res;
  res.gauge.torus.resize(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) {
    Series s = t.minus_simple_coord(q0, i);
    res.gauge.torus[static_cast<std::size_t>(i)] = Series::constant(t.y_coeff(i)) / s;
  }
  GaugeElement torus_only;
  torus_only.torus = res.gauge.torus;
  SMat q = gauge_apply_weighted(t, q0, weight, torus_only);

  for (int r = 1; r <= top; ++r) {
    KostantSplit ks = t.kostant_split(t.component(q, r - 1), r - 1);
    SMat u = -ks.z;
    q = exp_step(t, q, u, r, weight);
    res.gauge.steps.push_back(std::move(u));
  }

  res.form.planck = planck;
  const auto& vall = t.vbasis_all();
  res.form.v.reserve(vall.size());
  for (int k = 0; k <= top; ++k) {
    KostantSplit ks = t.kostant_split(t.component(q, k), k);
    if (!is_zero(ks.z)) throw IdentityCheckFailure("normalization left a component outside V in degree " + std::to_string(k));
    for (const Series& c : ks.vcoords) res.form.v.emplace_back(c, Rational(k + 1));
  }
  if (!agrees(t.component(q, -1), to_series(t.y())))
    throw IdentityCheckFailure("normalization did not reach y in degree -1");
  res.q = std::move(q);
  return res;
}

NormalizeResult normalize(const OperConnection& conn) {
  check_oper(conn);
  Series w = sgn(conn.planck) == 0 ? Series::zero() : Series::constant(conn.planck);
  NormalizeResult r = normalize_weighted(*conn.triple, conn.q, w, conn.planck);
  r.form.triple = conn.triple;
  return r;
}

NormalizeResult normalize_singular(const Series& f, const OperConnection& conn) {
  if (f.is_zero()) throw PreconditionError("f is identically zero");
  if (f.valuation() < 0) throw PreconditionError("f must be regular at the origin");
  check_oper(conn);
  Series w = sgn(conn.planck) == 0 ? Series::zero() : f * conn.planck;
  NormalizeResult r = normalize_weighted(*conn.triple, conn.q, w, conn.planck);
  r.form.triple = conn.triple;
  return r;
}

DesingularizeResult desingularize(const Series& f, const CanonicalForm& qt) {
  if (f.is_zero()) throw PreconditionError("f is identically zero");
  const PrincipalTriple& t = *qt.triple;
  const int rank = t.spec().rank;
  Series finv = reciprocal(f, relative_order(qt.v));
  Series w = sgn(qt.planck) == 0 ? Series::zero() : Series::constant(qt.planck);
  SMat q0 = scale(qt.matrix(), finv);

  GaugeElement shown;
  shown.torus.assign(static_cast<std::size_t>(rank), f);
  shown.steps.push_back(qmat_times(t.x(), f.derivative() * finv));
  for (int r = 2; r <= t.max_degree(); ++r) shown.steps.emplace_back(t.dim(), t.dim());
  SMat q1 = gauge_apply_weighted(t, q0, w, shown);

  DesingularizeResult out;
  out.displayed_gauge_canonical = in_normal_form(t, q1);
  NormalizeResult rest = normalize_weighted(t, q1, w, qt.planck);
  out.residual = rest.gauge;
  out.gauge = gauge_compose(t, shown, rest.gauge);
  out.form = rest.form;
  out.form.triple = qt.triple;

  // Predicted coordinates.
  const auto& vall = t.vbasis_all();
  Series f1 = f.derivative(), f2 = f1.derivative();
  Series corr = (f2 * f * Rational(1, 2) - f1 * f1 * Rational(1, 4)) * (qt.planck * qt.planck);
  bool have_x = false;
  out.formula_holds = true;
  for (std::size_t j = 0; j < vall.size(); ++j) {
    int d = vall[j].degree;
    Series scalef = finv.pow(static_cast<long>(d + 1));
    Series pred;
    bool is_x = d == 1 && !have_x && agrees(to_series(vall[j].matrix), to_series(t.x()));
    if (is_x) {
      have_x = true;
      pred = (qt.v[j].series + corr) * scalef;
    } else {
      pred = qt.v[j].series * scalef;
    }
    out.formula.emplace_back(pred, Rational(d + 1));
    if (!pred.agrees(out.form.v[j].series)) out.formula_holds = false;
  }
  if (!have_x) out.formula_holds = false;
  return out;
}

SingularityClass classify_singularity(const CanonicalForm& cf) {
  SingularityClass sc;
  const auto degs = cf.exponents();
  for (std::size_t j = 0; j < cf.v.size(); ++j) {
    const Series& s = cf.v[j].series;
    int pole = s.is_zero() ? 0 : std::max(0, -s.valuation());
    int k = degs[j] + 1;
    int m = (pole + k - 1) / k;
    sc.pole_orders.push_back(pole);
    sc.per_exponent.push_back(m);
    sc.m = std::max(sc.m, m);
  }
  return sc;
}

OperConnection embed_sl2(const TripleRef& t, const Density& u, const std::vector<Density>& eta, const Rational& planck) {
  if (u.weight != 2) throw PreconditionError("u must have weight 2");
  const auto& vall = t->vbasis_all();
  if (vall.empty() || !agrees(to_series(vall[0].matrix), to_series(t->x())))
    throw PreconditionError("first V basis element is not x");
  if (eta.size() + 1 != vall.size())
    throw PreconditionError("expected " + std::to_string(vall.size() - 1) + " eta densities");
  OperConnection c;
  c.triple = t;
  c.planck = planck;
  c.q = to_series(t->y()) - qmat_times(t->x(), u.series);
  for (std::size_t j = 0; j < eta.size(); ++j) {
    int d = vall[j + 1].degree;
    if (eta[j].weight != d + 1)
      throw PreconditionError("eta density " + std::to_string(j + 1) + " must have weight " + std::to_string(d + 1));
    c.q += qmat_times(vall[j + 1].matrix, eta[j].series);
  }
  return c;
}

OperConnection act_quadratic_differential(const OperConnection& conn, const Density& omega) {
  if (omega.weight != 2) throw PreconditionError("quadratic differential must have weight 2");
  OperConnection out = conn;
  out.q -= qmat_times(conn.triple->x(), omega.series);
  return out;
}

std::vector<Density> hitchin_map(const CanonicalForm& cf) {
  if (sgn(cf.planck) != 0) throw PreconditionError("Hitchin map needs planck 0");
  return invariants(cf.triple->spec(), cf.matrix(), 1);
}

long sections_dimension(int k, int genus, int degD) {
  if (genus < 0 || degD < 0) throw PreconditionError("genus and deg D must be nonnegative");
  if (k == 1 && degD == 0) return genus;
  if (genus == 0) return std::max(0L, static_cast<long>(-2 * k + k * degD + 1));
  if (genus == 1 && degD == 0) return 1;
  return static_cast<long>(2 * k - 1) * (genus - 1) + static_cast<long>(k) * degD;
}

DimensionTable moduli_dimension(const LieAlgebraSpec& spec, int genus, int degD) {
  if (genus < 0 || degD < 0) throw PreconditionError("genus and deg D must be nonnegative");
  DimensionTable t;
  for (int d : spec.exponents) {
    long dim = sections_dimension(d + 1, genus, degD);
    t.rows.push_back({d, d + 1, dim});
    t.total += dim;
  }
  return t;
}

}  // namespace opers
