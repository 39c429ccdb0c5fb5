#include "opers/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "opers/errors.hpp"

namespace opers {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw MalformedInput("empty rational");
  std::size_t slash = s.find('/');
  auto digits_ok = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw MalformedInput("not a rational: '" + text + "'");
  if (num[0] == '+') num = num.substr(1);
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw MalformedInput("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

Rational factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return Rational(r);
}

Rational binomial(const Rational& e, int k) {
  Rational r = 1;
  for (int j = 0; j < k; ++j) {
    r *= (e - j);
    r /= (j + 1);
  }
  return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool rational_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

Series::Series() : val_(kExact), trunc_(kExact) {}

Series::Series(int val, int trunc, std::vector<Rational> c)
    : val_(val), trunc_(trunc), c_(std::move(c)) {
  canonicalize();
}

void Series::canonicalize() {
  if (is_exact_order(trunc_)) trunc_ = kExact;
  if (!c_.empty() && !is_exact_order(trunc_)) {
    long keep = static_cast<long>(trunc_) - val_;
    if (keep < 0) keep = 0;
    if (static_cast<long>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
  }
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && sgn(c_[lead]) == 0) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    val_ += static_cast<int>(lead);
  }
  if (c_.empty()) val_ = trunc_;
}

Series Series::zero(int trunc) { return Series(trunc, trunc, {}); }

Series Series::constant(const Rational& c, int trunc) { return Series(0, trunc, {c}); }

Series Series::monomial(const Rational& c, int exponent, int trunc) {
  return Series(exponent, trunc, {c});
}

Series Series::from_coeffs(int val, std::vector<Rational> coeffs, int trunc) {
  return Series(val, trunc, std::move(coeffs));
}

Series Series::z() { return monomial(1, 1); }

Rational Series::coeff(int k) const {
  if (k >= trunc_)
    throw InsufficientTruncation("coefficient of z^" + std::to_string(k) +
                                 " is beyond the certified order " + std::to_string(trunc_));
  if (k < val_ || k >= end()) return 0;
  return c_[static_cast<std::size_t>(k - val_)];
}

const Rational& Series::leading() const {
  if (c_.empty()) throw PreconditionError("leading coefficient of a zero series");
  return c_.front();
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Series& Series::operator+=(const Series& b) {
  int t = std::min(trunc_, b.trunc_);
  if (b.c_.empty()) {
    trunc_ = t;
    canonicalize();
    return *this;
  }
  if (c_.empty()) {
    *this = Series(b.val_, t, b.c_);
    return *this;
  }
  int lo = std::min(val_, b.val_);
  int hi = std::min(t, std::max(end(), b.end()));
  std::vector<Rational> out(static_cast<std::size_t>(std::max(0, hi - lo)));
  for (int k = lo; k < hi; ++k) {
    Rational s = 0;
    if (k >= val_ && k < end()) s += c_[static_cast<std::size_t>(k - val_)];
    if (k >= b.val_ && k < b.end()) s += b.c_[static_cast<std::size_t>(k - b.val_)];
    out[static_cast<std::size_t>(k - lo)] = s;
  }
  *this = Series(lo, t, std::move(out));
  return *this;
}

Series& Series::operator-=(const Series& b) { return *this += -b; }

Series& Series::operator*=(const Series& b) {
  *this = *this * b;
  return *this;
}

Series& Series::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    std::vector<Rational>().swap(c_);
    canonicalize();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }

Series operator*(const Series& a, const Series& b) {
  int t = std::min(order_add(a.truncation(), b.valuation()),
                   order_add(b.truncation(), a.valuation()));
  if (a.is_zero() || b.is_zero()) return Series::zero(t);
  int v = a.valuation() + b.valuation();
  int hi = std::min(t, a.end() + b.end() - 1);
  std::vector<Rational> out(static_cast<std::size_t>(std::max(0, hi - v)));
  const auto& ca = a.stored();
  const auto& cb = b.stored();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (static_cast<int>(i) + v >= hi) break;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      int k = static_cast<int>(i + j) + v;
      if (k >= hi) break;
      out[i + j] += ca[i] * cb[j];
    }
  }
  return Series::from_coeffs(v, std::move(out), t);
}

Series operator*(Series a, const Rational& s) { return a *= s; }
Series operator*(const Rational& s, Series a) { return a *= s; }

Series operator/(Series a, const Rational& s) {
  if (sgn(s) == 0) throw PreconditionError("division by the zero rational");
  Rational inv = 1 / s;
  return a *= inv;
}

Series operator/(const Series& a, const Series& b) {
  if (b.is_zero()) throw PreconditionError("division by the zero series");
  if (b.exact() && !b.is_monomial()) {
    if (a.exact() && !a.is_zero())
      throw InsufficientTruncation("exact quotient by a non-monomial needs a finite truncation");
    if (a.is_zero()) return Series::zero(order_add(a.truncation(), -b.valuation()));
    int rel = a.truncation() - a.valuation();
    return a * b.truncated(b.valuation() + rel).inverse();
  }
  return a * b.inverse();
}

Series Series::inverse() const {
  if (c_.empty()) throw PreconditionError("inverse of the zero series");
  if (c_.size() == 1 && exact()) return monomial(1 / c_[0], -val_);
  if (exact()) throw InsufficientTruncation("exact inverse of a non-monomial needs a finite truncation");
  int rel = trunc_ - val_;
  std::vector<Rational> b(static_cast<std::size_t>(rel));
  Rational a0inv = 1 / c_[0];
  for (int n = 0; n < rel; ++n) {
    Rational s = (n == 0) ? Rational(1) : Rational(0);
    for (int j = 1; j <= n && j < static_cast<int>(c_.size()); ++j)
      s -= c_[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(n - j)];
    b[static_cast<std::size_t>(n)] = s * a0inv;
  }
  return Series(-val_, -val_ + rel, std::move(b));
}

Series Series::derivative() const {
  int t = order_add(trunc_, -1);
  if (c_.empty()) return zero(t);
  std::vector<Rational> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * (val_ + static_cast<int>(i));
  return Series(val_ - 1, t, std::move(out));
}

Series Series::nth_derivative(int n) const {
  Series r = *this;
  for (int i = 0; i < n; ++i) r = r.derivative();
  return r;
}

Series Series::truncated(int t) const {
  if (t >= trunc_) return *this;
  return Series(val_, t, c_);
}

Series Series::shifted(int k) const {
  return Series(order_add(val_, k), order_add(trunc_, k), c_);
}

Series Series::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Series base = *this;
  Series r = constant(1);
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

Series Series::pow(const Rational& e) const {
  if (is_integer(e)) return pow(e.get_num().get_si());
  if (c_.empty()) throw PreconditionError("rational power of the zero series");
  if (c_[0] != 1) throw PreconditionError("rational power needs leading coefficient 1");
  Rational ev = e * val_;
  if (!is_integer(ev)) throw PreconditionError("rational power gives a non-integral valuation");
  int nv = static_cast<int>(ev.get_num().get_si());
  if (c_.size() == 1) {
    if (exact()) return monomial(1, nv);
    return Series(nv, nv + (trunc_ - val_), {Rational(1)});
  }
  if (exact()) throw InsufficientTruncation("rational power of an exact non-monomial needs a finite truncation");
  int rel = trunc_ - val_;
  std::vector<Rational> q(static_cast<std::size_t>(rel));
  q[0] = 1;
  for (int k = 1; k < rel; ++k) {
    Rational s = 0;
    for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j)
      s += ((e + 1) * j - k) * c_[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = s / k;
  }
  return Series(nv, nv + rel, std::move(q));
}

Series Series::sqrt() const {
  if (c_.empty()) return zero(trunc_ >= kExact / 2 ? kExact : trunc_ / 2);
  if (val_ % 2 != 0) throw PreconditionError("square root of a series with odd valuation");
  Rational root;
  if (!rational_sqrt(c_[0], root))
    throw PreconditionError("leading coefficient " + format_rational(c_[0]) + " is not a rational square");
  Series unit = (*this / c_[0]).shifted(-val_);
  return (unit.pow(Rational(1, 2)) * root).shifted(val_ / 2);
}

bool Series::agrees(const Series& b) const { return (*this - b).is_zero(); }

bool Series::operator==(const Series& b) const {
  return val_ == b.val_ && trunc_ == b.trunc_ && c_ == b.c_;
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    int k = val_ + static_cast<int>(i);
    if (!first) os << " + ";
    first = false;
    os << format_rational(c_[i]);
    if (k != 0) os << "*z^" << k;
  }
  if (!exact()) {
    if (!first) os << " + ";
    os << "O(z^" << trunc_ << ")";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Density::Density(Series s, Rational w) : series(std::move(s)), weight(std::move(w)) { check_weight(); }

void Density::check_weight() const {
  if (!is_integer(weight * 2)) throw PreconditionError("density weight must lie in (1/2)Z");
}

Density operator*(const Density& a, const Density& b) {
  return Density(a.series * b.series, a.weight + b.weight);
}

Density operator+(const Density& a, const Density& b) {
  if (a.weight != b.weight) throw PreconditionError("adding densities of different weights");
  return Density(a.series + b.series, a.weight);
}

}  // namespace opers
