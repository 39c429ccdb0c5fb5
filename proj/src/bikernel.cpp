#include "opers/bikernel.hpp"

#include <algorithm>

#include "opers/errors.hpp"

namespace opers {

BiKernel::BiKernel(Rational w1, Rational w2, int mmin, int mmax, std::map<int, Series> coeffs)
    : w1_(std::move(w1)), w2_(std::move(w2)), mmin_(mmin), mmax_(mmax), c_(std::move(coeffs)) {
  if (mmax_ < mmin_) throw PreconditionError("kernel range is empty");
  for (int m = mmin_; m <= mmax_; ++m)
    if (!c_.count(m)) c_[m] = Series::zero();
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->first < mmin_ || it->first > mmax_)
      it = c_.erase(it);
    else
      ++it;
  }
}

const Series& BiKernel::c(int m) const {
  auto it = c_.find(m);
  if (it == c_.end()) throw PreconditionError("kernel coefficient outside its range");
  return it->second;
}

int BiKernel::jet_order() const {
  int t = kExact;
  for (const auto& [m, s] : c_) t = std::min(t, s.truncation());
  return t;
}

BiKernel BiKernel::restricted(int new_mmax) const {
  std::map<int, Series> cs;
  for (int m = mmin_; m <= std::min(mmax_, new_mmax); ++m) cs[m] = c(m);
  return BiKernel(w1_, w2_, mmin_, std::min(mmax_, new_mmax), std::move(cs));
}

bool BiKernel::agrees(const BiKernel& other) const {
  if (w1_ != other.w1_ || w2_ != other.w2_ || mmin_ != other.mmin_) return false;
  int hi = std::min(mmax_, other.mmax_);
  for (int m = mmin_; m <= hi; ++m)
    if (!c(m).agrees(other.c(m))) return false;
  return true;
}

namespace {

// Coefficient of t^target in K(z2,z1) = sum_m (-1)^m c_m(z2+t) t^m, using the
// coefficients c_m with m < below only.
Series swapped_partial(const std::map<int, Series>& c, int mmin, int below, int target) {
  Series acc;
  for (int m = mmin; m < below && m <= target; ++m) {
    auto it = c.find(m);
    if (it == c.end()) continue;
    int j = target - m;
    Series term = it->second.nth_derivative(j) / factorial(j);
    if (m % 2 != 0) term = -term;
    acc += term;
  }
  return acc;
}

}  // namespace

BiKernel bikernel_swap(const BiKernel& k) {
  std::map<int, Series> out;
  for (int mp = k.mmin(); mp <= k.mmax(); ++mp)
    out[mp] = swapped_partial(k.coeffs(), k.mmin(), mp + 1, mp);
  return BiKernel(k.w2(), k.w1(), k.mmin(), k.mmax(), std::move(out));
}

BiKernel bikernel_power(const BiKernel& k, const Rational& e) {
  const Series& lead = k.c(k.mmin());
  if (lead.is_zero() || !lead.agrees(Series::constant(1)))
    throw PreconditionError("kernel power needs leading coefficient 1");
  Rational em = e * k.mmin();
  if (!is_integer(em)) throw PreconditionError("kernel power gives a non-integral pole order");
  Rational w1 = e * k.w1(), w2 = e * k.w2();
  if (!is_integer(w1 * 2) || !is_integer(w2 * 2))
    throw PreconditionError("kernel power gives weights outside (1/2)Z");
  int n = k.mmax() - k.mmin();
  // Miller recurrence for q = p^e with p = 1 + sum_{j>=1} p_j t^j.
  std::vector<Series> p(static_cast<std::size_t>(n + 1)), q(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) p[static_cast<std::size_t>(j)] = k.c(k.mmin() + j);
  q[0] = lead;
  for (int m = 1; m <= n; ++m) {
    Series s;
    for (int j = 1; j <= m; ++j) {
      Rational w = (e + 1) * j - m;
      if (sgn(w) == 0) continue;
      s += (p[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(m - j)]) * w;
    }
    q[static_cast<std::size_t>(m)] = s / Rational(m);
  }
  int nm = static_cast<int>(em.get_num().get_si());
  std::map<int, Series> out;
  for (int j = 0; j <= n; ++j) out[nm + j] = q[static_cast<std::size_t>(j)];
  return BiKernel(w1, w2, nm, nm + n, std::move(out));
}

bool has_parity(const BiKernel& k, Parity parity) {
  BiKernel s = bikernel_swap(k);
  for (int m = k.mmin(); m <= k.mmax(); ++m) {
    Series target = parity == Parity::kSymmetric ? k.c(m) : -k.c(m);
    if (!s.c(m).agrees(target)) return false;
  }
  return true;
}

BiKernel symmetrize_lift(const BiKernel& k, Parity parity, int extra_orders) {
  if (extra_orders < 1) throw PreconditionError("symmetrize_lift needs at least one extra order");
  if (k.w1() != k.w2()) throw PreconditionError("parity lift needs equal weights");
  if (!has_parity(k, parity)) throw PreconditionError("kernel does not have the requested parity on its range");
  int s = parity == Parity::kSymmetric ? 1 : -1;
  std::map<int, Series> c = k.coeffs();
  for (int mp = k.mmax() + 1; mp <= k.mmax() + extra_orders; ++mp) {
    // swap(K)_mp = (-1)^mp c_mp + R, required to equal s c_mp.
    Series r = swapped_partial(c, k.mmin(), mp, mp);
    int sign_mp = (mp % 2 == 0) ? 1 : -1;
    if (sign_mp == -s) {
      c[mp] = r * frac(s, 2);
    } else {
      if (!r.is_zero())
        throw PreconditionError("parity constraint fails at order " + std::to_string(mp));
      c[mp] = Series::zero(r.truncation());
    }
  }
  return BiKernel(k.w1(), k.w2(), k.mmin(), k.mmax() + extra_orders, std::move(c));
}

}  // namespace opers
