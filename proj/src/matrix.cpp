#include "opers/matrix.hpp"

#include <algorithm>

namespace opers {

SMat to_series(const QMat& m, int trunc) {
  SMat s(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) s(i, j) = Series::constant(m(i, j), trunc);
  return s;
}

SMat scale(const SMat& m, const Series& s) {
  SMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!(m(i, j).is_zero() && m(i, j).exact())) r(i, j) = m(i, j) * s;
  return r;
}

SMat truncate(const SMat& m, int trunc) {
  SMat r = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).truncated(trunc);
  return r;
}

SMat derivative(const SMat& m) {
  SMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).derivative();
  return r;
}

bool agrees(const SMat& a, const SMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a(i, j).agrees(b(i, j))) return false;
  return true;
}

bool is_zero(const SMat& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

int min_truncation(const SMat& a) {
  int t = kExact;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t = std::min(t, a(i, j).truncation());
  return t;
}

QMat constant_part(const SMat& a) {
  QMat q(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (!a(i, j).is_zero() && a(i, j).valuation() < 0)
        throw PreconditionError("constant part of a matrix with poles");
      q(i, j) = a(i, j).coeff(0);
    }
  return q;
}

RowEchelon rref(const QMat& a) {
  RowEchelon out{a, {}};
  QMat& m = out.reduced;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (sgn(m(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (int j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      Rational f = m(i, col);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

int rank(const QMat& a) { return static_cast<int>(rref(a).pivots.size()); }

std::vector<std::vector<Rational>> nullspace(const QMat& a) {
  RowEchelon e = rref(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(a.cols()), Rational(0));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v[static_cast<std::size_t>(e.pivots[r])] = -e.reduced(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

QMat inverse(const QMat& a) {
  int n = a.rows();
  if (a.cols() != n) throw PreconditionError("inverse of a non-square matrix");
  QMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(aug);
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    throw PreconditionError("singular matrix");
  QMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

Rational determinant(const QMat& a) {
  int n = a.rows();
  QMat m = a;
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (sgn(m(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (sgn(m(i, col)) == 0) continue;
      Rational f = m(i, col) / m(col, col);
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

namespace {

int pick_pivot(const SMat& m, int col, int from) {
  int best = -1;
  for (int i = from; i < m.rows(); ++i) {
    if (m(i, col).is_zero()) continue;
    if (best < 0 || m(i, col).valuation() < m(best, col).valuation()) {
      best = i;
      continue;
    }
    bool cheap = m(i, col).is_monomial() && m(i, col).exact();
    bool best_cheap = m(best, col).is_monomial() && m(best, col).exact();
    if (m(i, col).valuation() == m(best, col).valuation() && cheap && !best_cheap) best = i;
  }
  return best;
}

void raise_singular(const SMat& m, int col) {
  for (int i = col; i < m.rows(); ++i)
    if (!m(i, col).exact())
      throw InsufficientTruncation("cannot certify a nonzero pivot at the available order");
  throw PreconditionError("singular series matrix");
}

}  // namespace

Series determinant(const SMat& a) {
  int n = a.rows();
  SMat m = a;
  Series det = Series::constant(1);
  for (int col = 0; col < n; ++col) {
    int piv = pick_pivot(m, col, col);
    if (piv < 0) {
      bool all_exact = true;
      for (int i = col; i < n; ++i) all_exact = all_exact && m(i, col).exact();
      if (all_exact) return Series::zero();
      int t = kExact;
      for (int i = col; i < n; ++i) t = std::min(t, m(i, col).truncation());
      return Series::zero(std::min(t, order_add(det.truncation(), 0)));
    }
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det = det * m(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero() && m(i, col).exact()) continue;
      Series f = m(i, col) / m(col, col);
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

std::vector<Series> solve(const SMat& a, const std::vector<Series>& b) {
  int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) throw PreconditionError("solve: shape mismatch");
  SMat m(n, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[static_cast<std::size_t>(i)];
  }
  for (int col = 0; col < n; ++col) {
    int piv = pick_pivot(m, col, col);
    if (piv < 0) raise_singular(m, col);
    if (piv != col)
      for (int j = 0; j <= n; ++j) std::swap(m(piv, j), m(col, j));
    Series inv = m(col, col).inverse();
    for (int j = col; j <= n; ++j) m(col, j) = m(col, j) * inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || (m(i, col).is_zero() && m(i, col).exact())) continue;
      Series f = m(i, col);
      for (int j = col; j <= n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  std::vector<Series> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = m(i, n);
  return x;
}

SMat inverse(const SMat& a) {
  int n = a.rows();
  SMat inv(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<Series> e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(j)] = Series::constant(1);
    std::vector<Series> x = solve(a, e);
    for (int i = 0; i < n; ++i) inv(i, j) = x[static_cast<std::size_t>(i)];
  }
  return inv;
}

}  // namespace opers
