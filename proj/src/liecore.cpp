#include "opers/liecore.hpp"

#include <cstdint>
#include <cstdio>
#include <mutex>
#include <sstream>

#include "opers/errors.hpp"

namespace opers {

namespace {

using Pos = std::pair<int, int>;

int matrix_size(LieType t, int r) {
  switch (t) {
    case LieType::A: return r + 1;
    case LieType::B: return 2 * r + 1;
    default: return 2 * r;
  }
}

QMat build_form(LieType t, int r, int n) {
  QMat j(n, n);
  for (int i = 0; i < n; ++i) {
    int s = n - 1 - i;
    int sign = 1;
    if (t == LieType::B) sign = (i % 2 == 0) ? 1 : -1;
    if (t == LieType::C) sign = i < r ? 1 : -1;
    if (t == LieType::D) sign = (std::min(i, s) % 2 == 0) ? 1 : -1;
    j(i, s) = sign;
  }
  return j;
}

// Eigenvalue of ad(h) on a root vector with defining entry p, h diagonal.
Rational diag_weight(const QMat& h, Pos p) { return h(p.first, p.first) - h(p.second, p.second); }

std::vector<Rational> flatten(const QMat& m) {
  std::vector<Rational> v;
  v.reserve(static_cast<std::size_t>(m.rows() * m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

bool qzero(const QMat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) return false;
  return true;
}

// Solves a * x = b for a square rational matrix.
std::vector<Rational> qsolve(const QMat& a, const std::vector<Rational>& b) {
  QMat inv = inverse(a);
  std::vector<Rational> x(b.size(), Rational(0));
  for (int i = 0; i < inv.rows(); ++i)
    for (int j = 0; j < inv.cols(); ++j)
      x[static_cast<std::size_t>(i)] += inv(i, j) * b[static_cast<std::size_t>(j)];
  return x;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

char lie_type_letter(LieType t) {
  switch (t) {
    case LieType::A: return 'A';
    case LieType::B: return 'B';
    case LieType::C: return 'C';
    case LieType::D: return 'D';
  }
  return '?';
}

LieType parse_lie_type(const std::string& letter) {
  if (letter == "A") return LieType::A;
  if (letter == "B") return LieType::B;
  if (letter == "C") return LieType::C;
  if (letter == "D") return LieType::D;
  throw MalformedInput("unknown algebra type '" + letter + "'");
}

std::string LieAlgebraSpec::descriptor() const {
  return std::string(1, lie_type_letter(type)) + ":" + std::to_string(rank);
}

std::string LieAlgebraSpec::name() const {
  switch (type) {
    case LieType::A: return "sl(" + std::to_string(dim) + ")";
    case LieType::C: return "sp(" + std::to_string(dim) + ")";
    default: return "so(" + std::to_string(dim) + ")";
  }
}

QMat LieAlgebraSpec::project(const QMat& x) const {
  if (!has_form) return x;
  return x - inverse(form) * x.transpose() * form;
}

bool LieAlgebraSpec::contains(const QMat& x) const {
  if (x.rows() != dim || x.cols() != dim) return false;
  if (!has_form) return sgn(x.trace()) == 0;
  return qzero(x.transpose() * form + form * x);
}

bool LieAlgebraSpec::contains(const SMat& x) const {
  if (x.rows() != dim || x.cols() != dim) return false;
  if (!has_form) return x.trace().is_zero();
  SMat j = to_series(form);
  return is_zero(x.transpose() * j + j * x);
}

std::vector<int> classical_exponents(LieType type, int rank) {
  std::vector<int> e;
  switch (type) {
    case LieType::A:
      for (int i = 1; i <= rank; ++i) e.push_back(i);
      break;
    case LieType::B:
    case LieType::C:
      for (int i = 1; i <= rank; ++i) e.push_back(2 * i - 1);
      break;
    case LieType::D:
      for (int i = 1; i <= rank - 1; ++i) e.push_back(2 * i - 1);
      e.push_back(rank - 1);
      break;
  }
  std::sort(e.begin(), e.end());
  return e;
}

LieAlgebraSpec build_algebra(LieType type, int rank) {
  if (rank < 1 || (type == LieType::D && rank < 2))
    throw PreconditionError("unsupported algebra " + std::string(1, lie_type_letter(type)) + ":" +
                            std::to_string(rank));
  if (rank > 12) throw PreconditionError("rank too large");
  LieAlgebraSpec s;
  s.type = type;
  s.rank = rank;
  s.dim = matrix_size(type, rank);
  s.has_form = type != LieType::A;
  if (s.has_form) s.form = build_form(type, rank, s.dim);
  s.exponents = classical_exponents(type, rank);

  for (int i = 0; i < rank; ++i) {
    Pos p{i, i + 1};
    if (type == LieType::D && i == rank - 1) p = {rank - 2, rank};
    s.e_pos.push_back(p);
  }
  for (int i = 0; i < rank; ++i) {
    auto [a, b] = s.e_pos[static_cast<std::size_t>(i)];
    QMat e = s.project(QMat::unit(s.dim, a, b));
    e = e.scaled(Rational(1) / e(a, b));
    QMat f = s.project(QMat::unit(s.dim, b, a));
    QMat h = bracket(e, f);
    Rational lam = diag_weight(h, {a, b});
    f = f.scaled(Rational(2) / lam);
    s.e.push_back(e);
    s.f.push_back(f);
    s.cartan.push_back(bracket(e, f));
  }
  return s;
}

PrincipalTriple::PrincipalTriple(LieAlgebraSpec spec) : spec_(std::move(spec)) {
  const int n = spec_.dim, r = spec_.rank;
  // Cartan matrix a(j, l) = alpha_j(h_l).
  QMat a(r, r);
  for (int j = 0; j < r; ++j)
    for (int l = 0; l < r; ++l)
      a(j, l) = diag_weight(spec_.cartan[static_cast<std::size_t>(l)], spec_.e_pos[static_cast<std::size_t>(j)]);

  y_coeffs_ = qsolve(a, std::vector<Rational>(static_cast<std::size_t>(r), Rational(2)));
  h_ = QMat(n, n);
  x_ = QMat(n, n);
  y_ = QMat(n, n);
  for (int l = 0; l < r; ++l) {
    const Rational& b = y_coeffs_[static_cast<std::size_t>(l)];
    h_ += spec_.cartan[static_cast<std::size_t>(l)].scaled(b);
    x_ += spec_.e[static_cast<std::size_t>(l)];
    y_ += spec_.f[static_cast<std::size_t>(l)].scaled(b);
  }
  for (int i = 0; i < r; ++i) {
    std::vector<Rational> delta(static_cast<std::size_t>(r), Rational(0));
    delta[static_cast<std::size_t>(i)] = 1;
    std::vector<Rational> c = qsolve(a, delta);
    QMat w(n, n);
    for (int l = 0; l < r; ++l) w += spec_.cartan[static_cast<std::size_t>(l)].scaled(c[static_cast<std::size_t>(l)]);
    coweights_.push_back(w);
  }

  hdiag_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!is_integer(h_(i, i))) throw PreconditionError("non-integral principal coweight");
    hdiag_[static_cast<std::size_t>(i)] = static_cast<int>(mpz_class(h_(i, i).get_num()).get_si());
  }
  rootc_.assign(static_cast<std::size_t>(n * n), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int i = 0; i < r; ++i) {
        Rational v = coweights_[static_cast<std::size_t>(i)](p, p) - coweights_[static_cast<std::size_t>(i)](q, q);
        if (is_integer(v)) rootc_[static_cast<std::size_t>(p * n + q)][static_cast<std::size_t>(i)] = static_cast<int>(v.get_num().get_si());
      }

  // Graded bases.
  support_.assign(static_cast<std::size_t>(n * n), false);
  int top = 0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      QMat c = spec_.project(QMat::unit(n, p, q));
      if (!qzero(c)) top = std::max(top, entry_degree(p, q));
    }
  max_degree_ = top;
  for (int k = -top; k <= top; ++k) {
    std::vector<QMat> cand;
    if (k == 1) {
      cand = spec_.e;
    } else if (k == -1) {
      cand = spec_.f;
    } else if (k == 0) {
      cand = spec_.cartan;
    } else {
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          if (entry_degree(p, q) == k) cand.push_back(spec_.project(QMat::unit(n, p, q)));
    }
    GradedPiece g;
    g.degree = k;
    std::vector<std::vector<Rational>> rows;
    for (const QMat& c : cand) {
      if (qzero(c)) continue;
      rows.push_back(flatten(c));
      QMat m(static_cast<int>(rows.size()), n * n);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < n * n; ++j) m(static_cast<int>(i), j) = rows[i][static_cast<std::size_t>(j)];
      if (rank(m) < static_cast<int>(rows.size())) {
        rows.pop_back();
        continue;
      }
      g.basis.push_back(c);
    }
    std::vector<Pos> positions;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (entry_degree(p, q) == k) positions.push_back({p, q});
    int d = static_cast<int>(g.basis.size());
    QMat bt(d, static_cast<int>(positions.size()));
    for (int j = 0; j < d; ++j)
      for (std::size_t c = 0; c < positions.size(); ++c) {
        const Rational& v = g.basis[static_cast<std::size_t>(j)](positions[c].first, positions[c].second);
        bt(j, static_cast<int>(c)) = v;
        if (sgn(v) != 0) support_[static_cast<std::size_t>(positions[c].first * n + positions[c].second)] = true;
      }
    RowEchelon e = rref(bt);
    QMat sq(d, d);
    for (int rr = 0; rr < d; ++rr) {
      Pos p = positions[static_cast<std::size_t>(e.pivots[static_cast<std::size_t>(rr)])];
      g.pivots.push_back(p);
      for (int j = 0; j < d; ++j) sq(rr, j) = g.basis[static_cast<std::size_t>(j)](p.first, p.second);
    }
    g.pivot_inverse = d > 0 ? inverse(sq) : QMat(0, 0);
    pieces_[k] = std::move(g);
  }

  // Kostant data: g_k = [y, g_{k+1}] + V_k for k >= 0.
  auto qcoords = [this](const QMat& m, int k) {
    std::vector<Series> c = coords(to_series(m), k);
    std::vector<Rational> out;
    for (const Series& s : c) out.push_back(s.is_zero() ? Rational(0) : s.coeff(0));
    return out;
  };
  for (int k = 0; k <= top; ++k) {
    const GradedPiece& gk = piece(k);
    int dk = static_cast<int>(gk.basis.size());
    int dk1 = k + 1 <= top ? static_cast<int>(piece(k + 1).basis.size()) : 0;
    std::vector<std::vector<Rational>> null;
    if (dk1 == 0) {
      for (int j = 0; j < dk; ++j) {
        std::vector<Rational> v(static_cast<std::size_t>(dk), Rational(0));
        v[static_cast<std::size_t>(j)] = 1;
        null.push_back(v);
      }
    } else {
      QMat adx(dk1, dk);
      for (int j = 0; j < dk; ++j) {
        std::vector<Rational> c = qcoords(bracket(x_, gk.basis[static_cast<std::size_t>(j)]), k + 1);
        for (int i = 0; i < dk1; ++i) adx(i, j) = c[static_cast<std::size_t>(i)];
      }
      null = nullspace(adx);
    }
    std::vector<QMat> vb;
    for (const auto& c : null) {
      QMat m(n, n);
      for (int j = 0; j < dk; ++j) m += gk.basis[static_cast<std::size_t>(j)].scaled(c[static_cast<std::size_t>(j)]);
      Rational lead = 0;
      for (int p = 0; p < n && sgn(lead) == 0; ++p)
        for (int q = 0; q < n; ++q)
          if (sgn(m(p, q)) != 0) {
            lead = m(p, q);
            break;
          }
      vb.push_back(m.scaled(Rational(1) / lead));
    }
    int nv = static_cast<int>(vb.size());
    if (dk1 + nv != dk) throw PreconditionError("Kostant decomposition has the wrong dimension");
    QMat split(dk, dk);
    for (int j = 0; j < dk1; ++j) {
      std::vector<Rational> c = qcoords(bracket(y_, piece(k + 1).basis[static_cast<std::size_t>(j)]), k);
      for (int i = 0; i < dk; ++i) split(i, j) = c[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < nv; ++j) {
      std::vector<Rational> c = qcoords(vb[static_cast<std::size_t>(j)], k);
      for (int i = 0; i < dk; ++i) split(i, dk1 + j) = c[static_cast<std::size_t>(i)];
    }
    kostant_inverse_[k] = dk > 0 ? inverse(split) : QMat(0, 0);
    for (const QMat& m : vb) vall_.push_back({k, m});
    vbasis_[k] = std::move(vb);
  }
}

int PrincipalTriple::entry_degree(int a, int b) const {
  if (!hdiag_.empty())
    return (hdiag_[static_cast<std::size_t>(a)] - hdiag_[static_cast<std::size_t>(b)]) / 2;
  Rational d = (h_(a, a) - h_(b, b)) / 2;
  return static_cast<int>(d.get_num().get_si());
}

bool PrincipalTriple::supported(int a, int b) const {
  return support_[static_cast<std::size_t>(a * spec_.dim + b)];
}

const std::vector<int>& PrincipalTriple::root_coords(int a, int b) const {
  return rootc_[static_cast<std::size_t>(a * spec_.dim + b)];
}

const GradedPiece& PrincipalTriple::piece(int k) const {
  auto it = pieces_.find(k);
  if (it == pieces_.end()) {
    static const GradedPiece empty;
    return empty;
  }
  return it->second;
}

std::vector<Series> PrincipalTriple::coords(const SMat& x, int k) const {
  const GradedPiece& g = piece(k);
  std::size_t d = g.basis.size();
  std::vector<Series> c(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t r = 0; r < d; ++r) {
      const Rational& w = g.pivot_inverse(static_cast<int>(j), static_cast<int>(r));
      if (sgn(w) == 0) continue;
      c[j] += x(g.pivots[r].first, g.pivots[r].second) * w;
    }
  return c;
}

SMat PrincipalTriple::from_coords(const std::vector<Series>& c, int k) const {
  const GradedPiece& g = piece(k);
  if (c.size() != g.basis.size()) throw PreconditionError("wrong number of coordinates");
  const int n = spec_.dim;
  SMat m(n, n);
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j].is_zero() && c[j].exact()) continue;
    const QMat& b = g.basis[j];
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (sgn(b(p, q)) != 0) m(p, q) += c[j] * b(p, q);
  }
  return m;
}

SMat PrincipalTriple::component(const SMat& x, int k) const {
  const int n = spec_.dim;
  SMat m(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (entry_degree(p, q) == k) m(p, q) = x(p, q);
  return m;
}

std::map<int, SMat> PrincipalTriple::grade(const SMat& x) const {
  if (!spec_.contains(x)) throw PreconditionError("element is not in " + spec_.name());
  std::map<int, SMat> out;
  for (int k = -max_degree_; k <= max_degree_; ++k) {
    SMat c = component(x, k);
    if (!is_zero(c)) out[k] = std::move(c);
  }
  return out;
}

Series PrincipalTriple::minus_simple_coord(const SMat& x, int i) const {
  return coords(x, -1)[static_cast<std::size_t>(i)];
}

KostantSplit PrincipalTriple::kostant_split(const SMat& x, int k) const {
  if (k < 0) throw PreconditionError("Kostant splitting needs degree >= 0");
  const int n = spec_.dim;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (entry_degree(p, q) != k && !x(p, q).is_zero())
        throw PreconditionError("element is not homogeneous of degree " + std::to_string(k));
  KostantSplit out;
  out.z = SMat(n, n);
  out.v = SMat(n, n);
  if (k > max_degree_) return out;
  std::vector<Series> c = coords(x, k);
  if (!agrees(from_coords(c, k), x)) throw PreconditionError("element is not in " + spec_.name());
  const QMat& inv = kostant_inverse_.at(k);
  std::size_t d = c.size();
  std::vector<Series> s(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Rational& w = inv(static_cast<int>(i), static_cast<int>(j));
      if (sgn(w) != 0) s[i] += c[j] * w;
    }
  std::size_t dk1 = piece(k + 1).basis.size();
  if (k + 1 > max_degree_) dk1 = 0;
  if (dk1 > 0) out.z = from_coords(std::vector<Series>(s.begin(), s.begin() + static_cast<long>(dk1)), k + 1);
  const auto& vb = vbasis(k);
  for (std::size_t l = 0; l < vb.size(); ++l) {
    const Series& a = s[dk1 + l];
    out.vcoords.push_back(a);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (sgn(vb[l](p, q)) != 0) out.v(p, q) += a * vb[l](p, q);
  }
  return out;
}

const std::vector<QMat>& PrincipalTriple::vbasis(int k) const {
  auto it = vbasis_.find(k);
  if (it == vbasis_.end()) {
    static const std::vector<QMat> empty;
    return empty;
  }
  return it->second;
}

std::vector<int> PrincipalTriple::v_degrees() const {
  std::vector<int> d;
  for (const auto& e : vall_) d.push_back(e.degree);
  return d;
}

std::string PrincipalTriple::fingerprint() const {
  std::ostringstream os;
  os << spec_.descriptor();
  for (const auto& e : vall_) {
    os << '|' << e.degree << ':';
    for (int p = 0; p < spec_.dim; ++p)
      for (int q = 0; q < spec_.dim; ++q) os << format_rational(e.matrix(p, q)) << ',';
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

std::shared_ptr<const PrincipalTriple> principal_triple(LieType type, int rank) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const PrincipalTriple>> cache;
  std::pair<int, int> key{static_cast<int>(type), rank};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto t = std::make_shared<const PrincipalTriple>(build_algebra(type, rank));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, t).first->second;
}

std::shared_ptr<const PrincipalTriple> principal_triple(const std::string& descriptor) {
  auto colon = descriptor.find(':');
  if (colon == std::string::npos) throw MalformedInput("algebra descriptor must look like TYPE:RANK");
  std::string letter = descriptor.substr(0, colon), num = descriptor.substr(colon + 1);
  if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
    throw MalformedInput("bad rank in algebra descriptor '" + descriptor + "'");
  return principal_triple(parse_lie_type(letter), std::stoi(num));
}

std::vector<Series> charpoly(const SMat& x) {
  const int n = x.rows();
  std::vector<Series> p(static_cast<std::size_t>(n));
  SMat m = SMat::identity(n);
  for (int k = 1; k <= n; ++k) {
    SMat am = x * m;
    Series ck = -(am.trace() / Rational(k));
    p[static_cast<std::size_t>(k - 1)] = ck;
    m = am;
    for (int i = 0; i < n; ++i) m(i, i) += ck;
  }
  return p;
}

std::vector<int> invariant_degrees(const LieAlgebraSpec& spec) {
  std::vector<int> d;
  int n = spec.dim;
  switch (spec.type) {
    case LieType::A:
      for (int k = 2; k <= n; ++k) d.push_back(k);
      break;
    case LieType::B:
    case LieType::C:
      for (int k = 2; k <= 2 * spec.rank; k += 2) d.push_back(k);
      break;
    case LieType::D:
      for (int k = 2; k <= 2 * spec.rank - 2; k += 2) d.push_back(k);
      break;
  }
  return d;
}

std::vector<Density> invariants(const LieAlgebraSpec& spec, const SMat& x, const Rational& weight) {
  if (!spec.contains(x)) throw PreconditionError("element is not in " + spec.name());
  std::vector<Series> p = charpoly(x);
  std::vector<Density> out;
  for (int k : invariant_degrees(spec)) out.emplace_back(-p[static_cast<std::size_t>(k - 1)], weight * k);
  return out;
}

}  // namespace opers
