#include "opers/opring.hpp"

#include <algorithm>

#include "opers/errors.hpp"

namespace opers {

namespace {

constexpr int kTailCap = 64;
constexpr int kDefaultRelativeOrder = 12;

bool exact_zero(const Series& s) { return s.is_zero() && s.exact(); }

Rational rpow(const Rational& h, int l) {
  Rational r = 1;
  for (int i = 0; i < l; ++i) r *= h;
  return r;
}

int floor_shift(int floor, int top) { return floor == kNoFloor ? kNoFloor : floor + top; }

// out += p xi^i q xi^j, expanded with xi^i q = sum_l C(i,l) h^l q^(l) xi^(i-l).
// Orders below *stop are dropped; an unbounded negative tail raises *stop.
void accumulate(std::map<int, Series>& out, int i, const Series& p, const Series& q, int j, const Rational& h,
                int* stop) {
  Series d = q;
  for (int l = 0;; ++l) {
    int o = i + j - l;
    if (o < *stop) break;
    if (i >= 0 && l > i) break;
    if (l > 0 && sgn(h) == 0) break;
    if (exact_zero(d)) break;
    if (i < 0 && *stop == kNoFloor && (d.is_zero() || l > kTailCap)) {
      *stop = o + 1;
      break;
    }
    Rational c = binomial(Rational(i), l) * rpow(h, l);
    if (sgn(c) != 0) out[o] += p * d * c;
    d = d.derivative();
  }
}

void prune(std::map<int, Series>& m, int floor) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->first < floor)
      it = m.erase(it);
    else
      ++it;
  }
}

void check_chain(const Rational& tgt_m, const Rational& src_l, const Rational& hl, const Rational& hm) {
  if (tgt_m != src_l) throw PreconditionError("weight mismatch in composition");
  if (hl != hm) throw PreconditionError("planck mismatch in composition");
}

int relative_order(const std::vector<Series>& cs) {
  int rel = -1;
  for (const Series& s : cs)
    if (!s.exact()) {
      int r = s.truncation() - (s.is_zero() ? 0 : s.valuation());
      rel = rel < 0 ? r : std::min(rel, r);
    }
  return rel < 0 ? kDefaultRelativeOrder : std::max(rel, 1);
}

}  // namespace

DiffOp::DiffOp(Rational a, Rational b, Rational h, std::vector<Series> f)
    : src(std::move(a)), tgt(std::move(b)), planck(std::move(h)), coeffs(std::move(f)) {
  if (coeffs.empty()) coeffs.push_back(Series::zero());
}

DiffOp DiffOp::multiplication(const Series& g, const Rational& w, const Rational& h) { return DiffOp(w, w, h, {g}); }

DiffOp DiffOp::power(int n, const Rational& w, const Rational& h) {
  std::vector<Series> f(static_cast<std::size_t>(n + 1));
  f[static_cast<std::size_t>(n)] = Series::constant(1);
  return DiffOp(w, w + n, h, std::move(f));
}

Series DiffOp::coeff(int i) const {
  if (i < 0 || i > order()) return Series::zero();
  return coeffs[static_cast<std::size_t>(i)];
}

bool DiffOp::agrees(const DiffOp& o) const {
  if (src != o.src || tgt != o.tgt || planck != o.planck) return false;
  int n = std::max(order(), o.order());
  for (int i = 0; i <= n; ++i)
    if (!coeff(i).agrees(o.coeff(i))) return false;
  return true;
}

DiffOp DiffOp::trimmed() const {
  DiffOp d = *this;
  while (d.coeffs.size() > 1 && exact_zero(d.coeffs.back())) d.coeffs.pop_back();
  return d;
}

DiffOp DiffOp::expanded() const {
  std::vector<Series> f;
  for (int i = 0; i <= order(); ++i) f.push_back(coeffs[static_cast<std::size_t>(i)] * rpow(planck, i));
  return DiffOp(src, tgt, 1, std::move(f)).trimmed();
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
  if (a.src != b.src || a.tgt != b.tgt || a.planck != b.planck) throw PreconditionError("adding operators of different types");
  int n = std::max(a.order(), b.order());
  std::vector<Series> f;
  for (int i = 0; i <= n; ++i) f.push_back(a.coeff(i) + b.coeff(i));
  return DiffOp(a.src, a.tgt, a.planck, std::move(f)).trimmed();
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + b * Rational(-1); }

DiffOp operator*(const DiffOp& a, const Rational& s) {
  DiffOp d = a;
  for (auto& c : d.coeffs) c = c * s;
  return d.trimmed();
}

PseudoSymbol PseudoSymbol::from_diffop(const DiffOp& l) {
  PseudoSymbol p;
  p.src = l.src;
  p.tgt = l.tgt;
  p.planck = l.planck;
  p.top = l.order();
  p.floor = kNoFloor;
  for (int i = 0; i <= l.order(); ++i)
    if (!exact_zero(l.coeffs[static_cast<std::size_t>(i)])) p.coeffs[i] = l.coeffs[static_cast<std::size_t>(i)];
  return p;
}

PseudoSymbol PseudoSymbol::monomial(int i, const Series& c, int floor, const Rational& src, const Rational& tgt,
                                    const Rational& h) {
  PseudoSymbol p;
  p.src = src;
  p.tgt = tgt;
  p.planck = h;
  p.top = i;
  p.floor = floor;
  if (i >= floor) p.coeffs[i] = c;
  return p;
}

Series PseudoSymbol::coeff(int i) const {
  if (i < floor) throw InsufficientTruncation("symbol coefficient below its floor");
  auto it = coeffs.find(i);
  return it == coeffs.end() ? Series::zero() : it->second;
}

bool PseudoSymbol::agrees(const PseudoSymbol& o) const {
  if (src != o.src || tgt != o.tgt || planck != o.planck) return false;
  int lo = std::max(floor, o.floor);
  int hi = std::max(top, o.top);
  if (lo == kNoFloor) {
    lo = hi;
    for (const auto& kv : coeffs) lo = std::min(lo, kv.first);
    for (const auto& kv : o.coeffs) lo = std::min(lo, kv.first);
  }
  for (int i = lo; i <= hi; ++i) {
    Series a = i >= floor ? coeff(i) : Series::zero();
    Series b = i >= o.floor ? o.coeff(i) : Series::zero();
    if (!a.agrees(b)) return false;
  }
  return true;
}

PseudoSymbol compose(const PseudoSymbol& l, const PseudoSymbol& m) {
  check_chain(m.tgt, l.src, l.planck, m.planck);
  int stop = std::max(floor_shift(l.floor, m.top), floor_shift(m.floor, l.top));
  std::map<int, Series> out;
  for (const auto& [i, p] : l.coeffs) {
    if (exact_zero(p)) continue;
    for (const auto& [j, q] : m.coeffs) {
      if (exact_zero(q)) continue;
      accumulate(out, i, p, q, j, l.planck, &stop);
    }
  }
  prune(out, stop);
  PseudoSymbol r;
  r.src = m.src;
  r.tgt = l.tgt;
  r.planck = l.planck;
  r.top = l.top + m.top;
  r.floor = stop;
  r.coeffs = std::move(out);
  return r;
}

DiffOp compose(const DiffOp& l, const DiffOp& m) {
  PseudoSymbol p = compose(PseudoSymbol::from_diffop(l), PseudoSymbol::from_diffop(m));
  std::vector<Series> f(static_cast<std::size_t>(std::max(p.top, 0) + 1));
  for (const auto& [i, c] : p.coeffs) f[static_cast<std::size_t>(i)] = c;
  return DiffOp(p.src, p.tgt, p.planck, std::move(f)).trimmed();
}

PseudoSymbol transpose(const PseudoSymbol& p) {
  int stop = p.floor;
  std::map<int, Series> out;
  for (const auto& [i, c] : p.coeffs) {
    if (exact_zero(c)) continue;
    Series sign = Series::constant(i % 2 == 0 ? 1 : -1);
    accumulate(out, i, sign, c, 0, p.planck, &stop);
  }
  prune(out, stop);
  PseudoSymbol r;
  r.src = 1 - p.tgt;
  r.tgt = 1 - p.src;
  r.planck = p.planck;
  r.top = p.top;
  r.floor = stop;
  r.coeffs = std::move(out);
  return r;
}

DiffOp transpose(const DiffOp& l) {
  PseudoSymbol p = transpose(PseudoSymbol::from_diffop(l));
  std::vector<Series> f(static_cast<std::size_t>(l.order() + 1));
  for (const auto& [i, c] : p.coeffs) f[static_cast<std::size_t>(i)] = c;
  return DiffOp(p.src, p.tgt, p.planck, std::move(f)).trimmed();
}

int effective_order(const DiffOp& l) {
  for (int i = l.order(); i >= 0; --i)
    if (!l.coeffs[static_cast<std::size_t>(i)].is_zero()) return i;
  return -1;
}

Symbols symbols(const DiffOp& l) {
  int n = l.order();
  Symbols s;
  s.principal = Density(l.coeff(n), l.tgt - l.src - n);
  DiffOp t = transpose(l);
  std::vector<Series> f;
  Rational sign = (n % 2 == 0) ? -1 : 1;  // (-1)^{n+1}
  for (int i = 0; i <= n; ++i) f.push_back(l.coeff(i) + t.coeff(i) * sign);
  s.defect = DiffOp(l.src, l.tgt, l.planck, std::move(f)).trimmed();
  s.defect_order = effective_order(s.defect);
  return s;
}

PseudoSymbol pseudo_invert(const DiffOp& l0, int depth) {
  if (depth < 0) throw PreconditionError("depth must be nonnegative");
  DiffOp l = l0.trimmed();
  int n = l.order();
  const Series& lead = l.coeffs.back();
  if (lead.is_zero()) {
    if (!lead.exact() && lead.truncation() <= 0) throw InsufficientTruncation("leading coefficient is not certified");
    throw PreconditionError("leading coefficient vanishes");
  }
  if (lead.valuation() != 0) throw PreconditionError("leading coefficient is not invertible at the origin");
  Series inv = (lead.exact() && !lead.is_monomial()) ? lead.truncated(relative_order(l.coeffs)).inverse() : lead.inverse();

  int floor = -n - depth;
  int stop = -depth;  // orders of L o P that are certified
  std::map<int, Series> resid;
  PseudoSymbol p;
  p.src = l.tgt;
  p.tgt = l.src;
  p.planck = l.planck;
  p.top = -n;
  p.floor = floor;
  for (int k = 0; k <= depth; ++k) {
    Series g;
    if (k == 0) {
      g = inv;
    } else {
      auto it = resid.find(-k);
      if (it == resid.end()) continue;
      g = -(inv * it->second);
    }
    if (exact_zero(g)) continue;
    p.coeffs[-n - k] = g;
    for (int i = 0; i <= n; ++i) {
      const Series& f = l.coeffs[static_cast<std::size_t>(i)];
      if (exact_zero(f)) continue;
      int st = stop;
      accumulate(resid, i, f, g, -n - k, l.planck, &st);
    }
  }
  return p;
}

Density res(const PseudoSymbol& p) {
  if (p.floor > -1) throw PreconditionError("residue is below the floor of the symbol");
  return Density(p.coeff(-1), p.tgt - p.src + 1);
}

Series pairing(const PseudoSymbol& u0, const PseudoSymbol& v0, const DiffOp& l, int depth) {
  PseudoSymbol u = u0, v = v0;
  u.src = l.src;
  u.tgt = 0;
  u.planck = l.planck;
  v.src = 1 - l.tgt;
  v.tgt = 0;
  v.planck = l.planck;
  PseudoSymbol prod = compose(u, compose(pseudo_invert(l, depth), transpose(v)));
  if (prod.floor > -1) throw InsufficientTruncation("depth is insufficient to certify the residue");
  return res(prod).series;
}

Series pairing(const DiffOp& u, const DiffOp& v, const DiffOp& l, int depth) {
  return pairing(PseudoSymbol::from_diffop(u), PseudoSymbol::from_diffop(v), l, depth);
}

BiKernel kernel_from_diffop(const DiffOp& l0) {
  DiffOp l = l0.expanded();
  int n = l.order();
  std::map<int, Series> c;
  Rational nf = factorial(n);
  for (int i = 0; i <= n; ++i) c[-i - 1] = l.coeffs[static_cast<std::size_t>(i)] * (factorial(i) / nf);
  return BiKernel(1 - l.src, l.tgt, -n - 1, -1, std::move(c));
}

DiffOp diffop_from_kernel(const BiKernel& k) {
  int n = -k.mmin() - 1;
  if (n < 0) throw PreconditionError("kernel has no pole on the diagonal");
  if (k.mmax() < -1) throw PreconditionError("kernel range does not reach the simple pole");
  std::vector<Series> f;
  Rational nf = factorial(n);
  for (int i = 0; i <= n; ++i) f.push_back(k.c(-i - 1) * (nf / factorial(i)));
  return DiffOp(1 - k.w1(), k.w2(), 1, std::move(f)).trimmed();
}

DiffOp lie_derivative(const DiffOp& l, const Density& v) {
  if (v.weight != -1) throw PreconditionError("vector field must have weight -1");
  const Series& g = v.series;
  auto lie = [&](const Rational& w) {
    return DiffOp(w, w, l.planck, {g.derivative() * (w * l.planck), g}).trimmed();
  };
  return (compose(lie(l.tgt), l) - compose(l, lie(l.src))).trimmed();
}

Series apply(const DiffOp& l, const Series& s) {
  Series acc;
  Series d = s;
  for (int i = 0; i <= l.order(); ++i) {
    if (i > 0) d = d.derivative();
    const Series& f = l.coeffs[static_cast<std::size_t>(i)];
    if (exact_zero(f)) continue;
    acc += f * d * rpow(l.planck, i);
  }
  return acc;
}

}  // namespace opers
