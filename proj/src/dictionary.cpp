#include "opers/dictionary.hpp"

#include "opers/errors.hpp"

namespace opers {

namespace {

bool exact_zero(const Series& s) { return s.is_zero() && s.exact(); }

bool is_unit(const Series& s) { return !s.is_zero() && s.valuation() == 0; }

bool is_one(const Series& s) { return s.agrees(Series::constant(1)); }

using SVec = std::vector<Series>;

SVec unit_vector(int n, int i) {
  SVec v(static_cast<std::size_t>(n));
  v[static_cast<std::size_t>(i)] = Series::constant(1);
  return v;
}

// planck v' + q v.
SVec nabla(const SMat& q, const Rational& h, const SVec& v) {
  int n = q.rows();
  SVec w(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    Series acc;
    if (sgn(h) != 0) acc = v[static_cast<std::size_t>(a)].derivative() * h;
    for (int b = 0; b < n; ++b) {
      const Series& x = v[static_cast<std::size_t>(b)];
      if (exact_zero(x) || exact_zero(q(a, b))) continue;
      acc += q(a, b) * x;
    }
    w[static_cast<std::size_t>(a)] = acc;
  }
  return w;
}

Series form_value(const SMat& g, const SVec& a, const SVec& b) {
  Series acc;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      if (exact_zero(g(i, j))) continue;
      const Series& x = a[static_cast<std::size_t>(i)];
      const Series& y = b[static_cast<std::size_t>(j)];
      if (exact_zero(x) || exact_zero(y)) continue;
      acc += x * g(i, j) * y;
    }
  return acc;
}

SMat columns(const std::vector<SVec>& cols) {
  int n = static_cast<int>(cols.front().size());
  SMat m(n, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i) m(i, static_cast<int>(j)) = cols[j][static_cast<std::size_t>(i)];
  return m;
}

TripleRef triple_for(OperKind kind, int n) {
  switch (kind) {
    case OperKind::kGl:
    case OperKind::kSl:
      return principal_triple(LieType::A, n - 1);
    case OperKind::kSp:
      if (n % 2 != 0) throw PreconditionError("sp opers need even order");
      return principal_triple(LieType::C, n / 2);
    case OperKind::kSoOdd:
      if (n % 2 == 0 || n < 3) throw PreconditionError("so_odd opers need odd order >= 3");
      return principal_triple(LieType::B, (n - 1) / 2);
    case OperKind::kSoEven:
      break;
  }
  throw PreconditionError("so_even opers are built by so_even_build");
}

void check_kind_matches(OperKind kind, const PrincipalTriple& t) {
  LieType want = LieType::A;
  if (kind == OperKind::kSp) want = LieType::C;
  if (kind == OperKind::kSoOdd) want = LieType::B;
  if (kind == OperKind::kSoEven) want = LieType::D;
  if (t.spec().type != want)
    throw PreconditionError("connection on " + t.spec().name() + " does not match kind " + kind_name(kind));
}

// Adjoint torus with alpha_i(t) making every (-alpha_i) coordinate equal to
// that of y.
GaugeElement torus_to_principal(const PrincipalTriple& t, const SMat& q) {
  GaugeElement g;
  for (int i = 0; i < t.spec().rank; ++i) {
    Series c = t.minus_simple_coord(q, i);
    if (!is_unit(c)) throw NotAnOper("coefficient on -alpha_" + std::to_string(i + 1) + " is not a unit");
    g.torus.push_back(Series::constant(t.y_coeff(i)) / c);
  }
  return g;
}

void check_operator(const DiffOp& l) {
  int n = l.order();
  if (n < 1) throw PreconditionError("operator must have order >= 1");
  if (!is_one(l.coeff(n))) throw PreconditionError("principal symbol must be 1");
  if (l.tgt - l.src != n) throw PreconditionError("weights must satisfy tgt - src = order");
}

bool agrees_negated(const DiffOp& a, const DiffOp& b) { return a.agrees(b * Rational(-1)); }

struct Frame {
  SMat gram;
  SMat g;
  SMat q;
};

// Frame G = P D with P upper unitriangular making the pairing anti-diagonal and
// D constant diagonal matching the algebra form.
Frame orthogonal_frame(const DiffOp& l, const SMat& c, const LieAlgebraSpec& spec, bool symmetric) {
  int n = l.order();
  Frame fr;
  fr.gram = SMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i + j < n - 1) continue;
      fr.gram(i, j) = pairing(DiffOp::power(i, l.src, l.planck), DiffOp::power(j, 1 - l.tgt, l.planck), l, n);
    }
  if (!gram_horizontal(c, fr.gram, l.planck)) throw IdentityCheckFailure("pairing is not horizontal");
  for (int i = 0; i < n; ++i) {
    const Series& a = fr.gram(i, n - 1 - i);
    Series want = Series::constant((n - 1 - i) % 2 == 0 ? 1 : -1);
    if (!a.agrees(want)) throw IdentityCheckFailure("pairing anti-diagonal has an unexpected value");
  }
  SMat p = SMat::identity(n);
  auto col = [&](int l0) {
    SVec v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = p(i, l0);
    return v;
  };
  for (int lc = 1; lc < n; ++lc) {
    for (int k = n - lc; k <= lc; ++k) {
      if (k == lc && !symmetric) continue;
      int j = n - 1 - k;
      Series rest = form_value(fr.gram, col(k), col(lc));
      Series coef = fr.gram(k, j);
      if (k == lc) coef = coef * Rational(2);
      p(j, lc) = -rest / coef;
    }
  }
  SMat bg = p.transpose() * fr.gram * p;
  std::vector<Rational> d(static_cast<std::size_t>(n), Rational(1));
  for (int i = 0; i < n; ++i) {
    int s = n - 1 - i;
    if (i > s) continue;
    const Series& bs = bg(i, s);
    Rational b = bs.coeff(0);
    if (sgn(b) == 0 || !bs.agrees(Series::constant(b))) throw IdentityCheckFailure("frame pairing is not constant");
    Rational jv = spec.form(i, s);
    if (i < s) {
      d[static_cast<std::size_t>(i)] = jv / b;
    } else {
      Rational root;
      if (!rational_sqrt(jv / b, root)) throw IdentityCheckFailure("middle pairing is not a rational square");
      d[static_cast<std::size_t>(i)] = root;
    }
  }
  fr.g = p;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fr.g(i, j) = p(i, j) * d[static_cast<std::size_t>(j)];
  SMat gi = inverse(fr.g);
  fr.q = gi * c * fr.g;
  if (sgn(l.planck) != 0) fr.q += scale(gi * derivative(fr.g), Series::constant(l.planck));
  SMat check = fr.g.transpose() * fr.gram * fr.g;
  if (!agrees(check, to_series(spec.form))) throw IdentityCheckFailure("frame does not carry the algebra form");
  return fr;
}

// Basis change from the adapted so(2k) basis to the model with form J_D,
// defined for even k.
QMat d_model_change(int k) {
  int n = 2 * k;
  QMat t = QMat::identity(n);
  t(k - 1, k - 1) = 1;
  t(k, k - 1) = 1;
  t(k - 1, k) = Rational(1, 2);
  t(k, k) = Rational(-1, 2);
  return t;
}

int flag_dim(int i, int k) { return i < k ? i : i + 1; }

PseudoSymbol add_symbols(const PseudoSymbol& a, const PseudoSymbol& b) {
  if (a.src != b.src || a.tgt != b.tgt || a.planck != b.planck) throw PreconditionError("symbol weights differ");
  PseudoSymbol r = a;
  r.top = std::max(a.top, b.top);
  r.floor = std::max(a.floor, b.floor);
  for (const auto& [i, c] : b.coeffs) r.coeffs[i] += c;
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();) {
    if (it->first < r.floor)
      it = r.coeffs.erase(it);
    else
      ++it;
  }
  return r;
}

PseudoSymbol negate(PseudoSymbol p) {
  for (auto& kv : p.coeffs) kv.second = -kv.second;
  return p;
}

SoEvenData extract_core(const SMat& q, const QMat& form, const Rational& h, int k, const Rational& vol) {
  int n = 2 * k;
  if (q.rows() != n) throw PreconditionError("connection has the wrong size");
  auto cond = so_even_conditions(q, form, k);
  for (int i = 0; i < 5; ++i)
    if (!cond[static_cast<std::size_t>(i)])
      throw NotAnOper("SO(" + std::to_string(n) + ")-oper condition " + std::to_string(i + 1) + " fails");
  SMat g = to_series(form);

  // Kernel of F_k/F_{k-1} -> F_{k+1}/F_k (x) Omega, normalized by B(m,m) = 1.
  SVec sigma(static_cast<std::size_t>(n));
  sigma[static_cast<std::size_t>(k - 1)] = q(k + 1, k);
  sigma[static_cast<std::size_t>(k)] = -q(k + 1, k - 1);
  Series norm = form_value(g, sigma, sigma);
  if (norm.is_zero()) throw NotAnOper("kernel line is isotropic");
  Series scale_by = norm.sqrt().inverse();
  for (auto& x : sigma) x = x * scale_by;

  // Unique tau in F_{k-1} with nabla(sigma + tau) in F_1 (x) Omega.
  SVec s = sigma;
  for (int c = k - 1; c >= 1; --c) {
    SVec w = nabla(q, h, s);
    int row = c;
    if (c == k - 1 && !is_unit(q(k - 1, k - 2))) row = k;
    const Series& a = q(row, c - 1);
    if (!is_unit(a)) throw NotAnOper("flag map is not an isomorphism");
    s[static_cast<std::size_t>(c - 1)] = -w[static_cast<std::size_t>(row)] / a;
  }
  SVec ds = nabla(q, h, s);
  for (int i = 1; i < n; ++i)
    if (!ds[static_cast<std::size_t>(i)].is_zero()) throw IdentityCheckFailure("lift of the kernel line is not unique");
  Series mu = ds[0];

  auto project = [&](SVec v) {
    Series b = form_value(g, v, s);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= b * s[static_cast<std::size_t>(i)];
    return v;
  };
  auto nabla_e = [&](const SVec& v) { return project(nabla(q, h, v)); };
  int ne = n - 1;
  SVec e0 = unit_vector(n, 0);
  SVec top = e0;
  for (int j = 0; j < ne - 1; ++j) top = nabla_e(top);
  Series beta = form_value(g, e0, top);
  Series phi = beta.sqrt().inverse();
  for (auto& x : e0) x = x * phi;

  std::vector<SVec> cyc{e0};
  for (int j = 0; j < ne; ++j) cyc.push_back(nabla_e(cyc.back()));
  std::vector<SVec> cols(cyc.begin(), cyc.begin() + ne);
  cols.push_back(s);
  SVec sol = solve(columns(cols), cyc.back());
  if (!sol.back().is_zero()) throw IdentityCheckFailure("cyclic vectors do not span the complement");
  std::vector<Series> f(static_cast<std::size_t>(ne + 1));
  for (int i = 0; i < ne; ++i) f[static_cast<std::size_t>(i)] = -sol[static_cast<std::size_t>(i)];
  f[static_cast<std::size_t>(ne)] = Series::constant(1);

  std::vector<SVec> oriented(cyc.begin(), cyc.begin() + k);
  oriented.push_back(s);
  oriented.insert(oriented.end(), cyc.begin() + k, cyc.begin() + ne);
  Series det = determinant(columns(oriented));
  Series fval = mu / phi;
  if (det.agrees(Series::constant(-vol)))
    fval = -fval;
  else if (!det.agrees(Series::constant(vol)))
    throw IdentityCheckFailure("orientation of the reconstructed frame is not +-1");

  SoEvenData out;
  out.l = DiffOp(1 - k, k, h, std::move(f));
  out.f = Density(fval, k);
  return out;
}

}  // namespace

std::string kind_name(OperKind k) {
  switch (k) {
    case OperKind::kGl: return "gl";
    case OperKind::kSl: return "sl";
    case OperKind::kSp: return "sp";
    case OperKind::kSoOdd: return "so_odd";
    case OperKind::kSoEven: return "so_even";
  }
  return "gl";
}

OperKind parse_kind(const std::string& s) {
  if (s == "gl") return OperKind::kGl;
  if (s == "sl") return OperKind::kSl;
  if (s == "sp") return OperKind::kSp;
  if (s == "so_odd") return OperKind::kSoOdd;
  if (s == "so_even") return OperKind::kSoEven;
  throw MalformedInput("unknown oper kind '" + s + "'");
}

SMat companion_matrix(const DiffOp& l) {
  int n = l.order();
  if (n < 1) throw PreconditionError("companion matrix needs order >= 1");
  if (!is_one(l.coeff(n))) throw PreconditionError("principal symbol must be 1");
  SMat c(n, n);
  for (int i = 0; i + 1 < n; ++i) c(i + 1, i) = Series::constant(1);
  for (int i = 0; i < n; ++i) c(i, n - 1) = -l.coeff(i);
  return c;
}

SMat traceless(const SMat& q) {
  int n = q.rows();
  Series tr = q.trace() / Rational(n);
  SMat out = q;
  for (int i = 0; i < n; ++i) out(i, i) -= tr;
  return out;
}

DiffOp read_off(const SMat& q, const Rational& planck, const Rational& src) {
  int n = q.rows();
  std::vector<SVec> cyc{unit_vector(n, 0)};
  for (int j = 0; j < n; ++j) cyc.push_back(nabla(q, planck, cyc.back()));
  std::vector<SVec> cols(cyc.begin(), cyc.begin() + n);
  SMat m = columns(cols);
  for (int i = 0; i < n; ++i)
    if (!is_unit(m(i, i))) throw NotAnOper("e_0 is not a cyclic vector of the flag");
  SVec sol = solve(m, cyc.back());
  std::vector<Series> f(static_cast<std::size_t>(n + 1));
  for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = -sol[static_cast<std::size_t>(i)];
  f[static_cast<std::size_t>(n)] = Series::constant(1);
  return DiffOp(src, src + n, planck, std::move(f));
}

bool sl_condition(const DiffOp& l) { return symbols(l).defect_order < l.order() - 1; }

bool gram_horizontal(const SMat& q, const SMat& gram, const Rational& planck) {
  SMat lhs = scale(derivative(gram), Series::constant(planck));
  SMat rhs = q.transpose() * gram + gram * q;
  return agrees(lhs, rhs);
}

DictionaryOper oper_from_diffop(const DiffOp& l, OperKind kind) {
  check_operator(l);
  int n = l.order();
  if (n < 2) throw PreconditionError("opers need order >= 2");
  if (kind != OperKind::kGl && l.src + l.tgt != 1)
    throw PreconditionError("weights must satisfy src + tgt = 1 for " + kind_name(kind));
  if (kind == OperKind::kSoEven) throw PreconditionError("so_even opers are built by so_even_build");
  TripleRef t = triple_for(kind, n);
  if (kind == OperKind::kSl && !sl_condition(l)) throw PreconditionError("sl opers need defect order < n - 1");
  if (kind == OperKind::kSp && !transpose(l).agrees(l)) throw PreconditionError("sp opers need L^t = L");
  if (kind == OperKind::kSoOdd && !agrees_negated(transpose(l), l)) throw PreconditionError("so_odd opers need L^t = -L");

  DictionaryOper d;
  d.kind = kind;
  d.companion.q = companion_matrix(l);
  d.companion.planck = l.planck;
  d.companion.e1_weight = -l.src;
  d.companion.top_weight = 1 - l.tgt + n;
  SMat q = d.companion.q;
  d.frame = SMat::identity(n);
  if (kind == OperKind::kSp || kind == OperKind::kSoOdd) {
    Frame fr = orthogonal_frame(l, q, t->spec(), kind == OperKind::kSoOdd);
    d.frame = fr.g;
    d.gram = fr.gram;
    q = fr.q;
  }
  if (kind != OperKind::kGl && !t->spec().contains(q))
    throw IdentityCheckFailure("frame connection is not in " + t->spec().name());
  d.reconcile = torus_to_principal(*t, q);
  d.conn.triple = t;
  d.conn.planck = l.planck;
  d.conn.q = gauge_apply_weighted(*t, q, Series::constant(l.planck), d.reconcile);
  return d;
}

DiffOp diffop_from_oper(const OperConnection& conn, OperKind kind, std::optional<Rational> src) {
  const PrincipalTriple& t = *conn.triple;
  check_kind_matches(kind, t);
  int n = t.dim();
  if (kind != OperKind::kGl) check_oper(conn);
  SMat q = gauge_apply_weighted(t, conn.q, Series::constant(conn.planck), torus_to_principal(t, conn.q));
  Rational a = src ? *src : frac(1 - n, 2);
  return read_off(q, conn.planck, a);
}

DiffOp diffop_from_oper(const DictionaryOper& d) {
  return diffop_from_oper(d.conn, d.kind, Rational(-d.companion.e1_weight));
}

OperConnection dualize(const OperConnection& conn) {
  int n = conn.q.rows();
  QMat w(n, n);
  for (int a = 0; a < n; ++a) w(a, n - 1 - a) = a % 2 == 0 ? 1 : -1;
  OperConnection out = conn;
  out.q = -(to_series(w) * conn.q.transpose() * to_series(inverse(w)));
  return out;
}

SMat sl2_to_o3_matrix(const SMat& q) {
  if (q.rows() != 2 || q.cols() != 2) throw PreconditionError("expected a 2x2 matrix");
  if (!(q(0, 0) + q(1, 1)).is_zero()) throw PreconditionError("matrix is not traceless");
  SMat out(3, 3);
  Series a = q(0, 0), b = q(0, 1), c = q(1, 0);
  out(0, 0) = a * Rational(2);
  out(2, 2) = a * Rational(-2);
  out(0, 1) = b * Rational(2);
  out(1, 2) = b * Rational(2);
  out(1, 0) = c;
  out(2, 1) = c;
  return out;
}

Sl2O3 sl2_to_o3(const Density& u) {
  if (u.weight != 2) throw PreconditionError("u must have weight 2");
  Sl2O3 r;
  r.sl2.triple = principal_triple(LieType::A, 1);
  r.sl2.q = SMat(2, 2);
  r.sl2.q(0, 1) = -u.series;
  r.sl2.q(1, 0) = Series::constant(1);
  r.o3.triple = principal_triple(LieType::B, 1);
  r.o3.q = sl2_to_o3_matrix(r.sl2.q);
  SMat eq(3, 3);
  eq(0, 1) = u.series * Rational(-2);
  eq(1, 2) = u.series * Rational(-2);
  eq(1, 0) = Series::constant(1);
  eq(2, 1) = Series::constant(1);
  r.image_matches = agrees(r.o3.q, eq) && r.o3.triple->spec().contains(r.o3.q);
  r.ltilde = DiffOp(-1, 2, 1, {u.series.derivative() * Rational(2), u.series * Rational(4), Series(), Series::constant(1)});
  DiffOp l(Rational(-1, 2), Rational(3, 2), 1, {u.series, Series(), Series::constant(1)});
  r.k = symmetrize_lift(kernel_from_diffop(l), Parity::kSkew, 1);
  r.ktilde = kernel_from_diffop(r.ltilde);
  r.k43 = bikernel_power(r.k, Rational(4, 3));
  r.k23 = bikernel_power(r.k, Rational(2, 3));
  r.power_identity = r.k43.agrees(r.ktilde) && r.k43.w1() == r.ktilde.w1() && r.k43.w2() == r.ktilde.w2();
  r.k23_symmetric = has_parity(r.k23, Parity::kSymmetric);
  return r;
}

std::array<bool, 5> so_even_conditions(const SMat& q, const QMat& form, int k) {
  int n = 2 * k;
  std::array<bool, 5> ok{};
  if (q.rows() != n || form.rows() != n) return ok;
  bool sym = agrees(to_series(form.transpose()), to_series(form)) && sgn(determinant(form)) != 0;
  SMat g = to_series(form);
  ok[0] = sym && agrees(q.transpose() * g + g * q, SMat(n, n));
  ok[1] = true;
  for (int i = 0; i < n; ++i) {
    int di = flag_dim(i, k), dj = flag_dim(n - 1 - i, k);
    if (di + dj != n) ok[1] = false;
    for (int a = 0; a < di; ++a)
      for (int c = 0; c < dj; ++c)
        if (sgn(form(a, c)) != 0) ok[1] = false;
  }
  ok[2] = true;
  for (int i = 1; i <= n - 2; ++i)
    for (int c = 0; c < flag_dim(i, k); ++c)
      for (int r = flag_dim(i + 1, k); r < n; ++r)
        if (!q(r, c).is_zero()) ok[2] = false;
  ok[3] = true;
  for (int i = 1; i <= n - 2; ++i) {
    if (i == k - 1 || i == k) continue;
    if (!is_unit(q(flag_dim(i + 1, k) - 1, flag_dim(i, k) - 1))) ok[3] = false;
  }
  Series comp = q(k + 1, k - 1) * q(k - 1, k - 2) + q(k + 1, k) * q(k, k - 2);
  ok[4] = is_unit(comp);
  return ok;
}

SoEvenOper so_even_build(const DiffOp& l, const Density& f) {
  check_operator(l);
  int ne = l.order();
  if (ne < 3 || ne % 2 == 0) throw PreconditionError("L must have odd order 2k - 1 >= 3");
  int k = (ne + 1) / 2;
  int n = 2 * k;
  if (l.src != 1 - k) throw PreconditionError("L must act on Omega^(1-k)");
  if (f.weight != k) throw PreconditionError("f must have weight k");
  if (!agrees_negated(transpose(l), l)) throw PreconditionError("L must satisfy L^t = -L");
  TripleRef tb = principal_triple(LieType::B, k - 1);
  Frame fr = orthogonal_frame(l, companion_matrix(l), tb->spec(), true);
  const SMat& qe = fr.q;
  const QMat& je = tb->spec().form;

  auto pos = [k](int i) { return i < k ? i : i + 1; };
  SoEvenOper out;
  out.k = k;
  out.planck = l.planck;
  out.adapted = SMat(n, n);
  QMat form(n, n);
  for (int a = 0; a < ne; ++a)
    for (int b = 0; b < ne; ++b) {
      out.adapted(pos(a), pos(b)) = qe(a, b);
      form(pos(a), pos(b)) = je(a, b);
    }
  form(k, k) = 1;
  out.adapted(0, k) = f.series;
  for (int b = 0; b < ne; ++b)
    if (sgn(je(b, 0)) != 0) out.adapted(k, pos(b)) -= f.series * je(b, 0);
  out.adapted_form = form;
  out.conditions = so_even_conditions(out.adapted, form, k);

  if (k % 2 == 0) {
    TripleRef td = principal_triple(LieType::D, k);
    QMat t = d_model_change(k);
    if (!agrees(to_series(t.transpose() * form * t), to_series(td->spec().form)))
      throw IdentityCheckFailure("model basis does not carry the algebra form");
    OperConnection c;
    c.triple = td;
    c.planck = l.planck;
    c.q = to_series(inverse(t)) * out.adapted * to_series(t);
    out.conn = c;
  }

  PseudoSymbol fl = PseudoSymbol::from_diffop(DiffOp(1 - k, 1, l.planck, {f.series}));
  PseudoSymbol inv = PseudoSymbol::monomial(-1, Series::constant(1), kNoFloor, 1, 0, l.planck);
  PseudoSymbol fr2 = PseudoSymbol::from_diffop(DiffOp(0, k, l.planck, {f.series}));
  out.symbol = add_symbols(PseudoSymbol::from_diffop(l), compose(fr2, compose(inv, fl)));
  out.symbol_skew = transpose(out.symbol).agrees(negate(out.symbol));
  return out;
}

SoEvenData so_even_extract(const OperConnection& conn) {
  const PrincipalTriple& t = *conn.triple;
  if (t.spec().type != LieType::D) throw PreconditionError("so_even extraction needs a type D connection");
  int k = t.spec().rank;
  if (k % 2 != 0) throw PreconditionError("the type D model is used for even k only");
  Rational vol = 1 / determinant(d_model_change(k));
  return extract_core(conn.q, t.spec().form, conn.planck, k, vol);
}

SoEvenData so_even_extract_adapted(const SMat& q, const Rational& planck, int k) {
  int n = 2 * k;
  TripleRef tb = principal_triple(LieType::B, k - 1);
  QMat form(n, n);
  auto pos = [k](int i) { return i < k ? i : i + 1; };
  for (int a = 0; a < n - 1; ++a)
    for (int b = 0; b < n - 1; ++b) form(pos(a), pos(b)) = tb->spec().form(a, b);
  form(k, k) = 1;
  return extract_core(q, form, planck, k, 1);
}

}  // namespace opers
