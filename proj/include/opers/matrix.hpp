#pragma once

#include <algorithm>
#include <vector>

#include "opers/errors.hpp"
#include "opers/series.hpp"

namespace opers {

// Small dense row-major matrix.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, const T& fill = T())
      : r_(rows), c_(cols), d_(static_cast<std::size_t>(rows * cols), fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = one();
    return m;
  }
  static Mat unit(int n, int i, int j) {
    Mat m(n, n);
    m(i, j) = one();
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return d_[static_cast<std::size_t>(i * c_ + j)]; }
  const T& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i * c_ + j)]; }

  Mat& operator+=(const Mat& b) {
    check_same(b);
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] += b.d_[k];
    return *this;
  }
  Mat& operator-=(const Mat& b) {
    check_same(b);
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] -= b.d_[k];
    return *this;
  }
  friend bool operator==(const Mat& a, const Mat& b) = default;
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator-(Mat a) {
    for (auto& x : a.d_) x = -x;
    return a;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw PreconditionError("matrix shape mismatch in product");
    Mat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const T& aik = a(i, k);
        if (is_zero_entry(aik)) continue;
        for (int j = 0; j < b.c_; ++j) {
          const T& bkj = b(k, j);
          if (is_zero_entry(bkj)) continue;
          m(i, j) += aik * bkj;
        }
      }
    return m;
  }
  template <class S>
  Mat scaled(const S& s) const {
    Mat m = *this;
    for (auto& x : m.d_) x = x * s;
    return m;
  }
  Mat transpose() const {
    Mat m(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  T trace() const {
    T t{};
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }

 private:
  static T one();
  static bool is_zero_entry(const T& x);
  void check_same(const Mat& b) const {
    if (r_ != b.r_ || c_ != b.c_) throw PreconditionError("matrix shape mismatch");
  }
  int r_ = 0, c_ = 0;
  std::vector<T> d_;
};

template <>
inline Rational Mat<Rational>::one() { return Rational(1); }
template <>
inline bool Mat<Rational>::is_zero_entry(const Rational& x) { return sgn(x) == 0; }
template <>
inline Series Mat<Series>::one() { return Series::constant(1); }
template <>
inline bool Mat<Series>::is_zero_entry(const Series& x) { return x.is_zero() && x.exact(); }

using QMat = Mat<Rational>;
using SMat = Mat<Series>;

template <class T>
Mat<T> bracket(const Mat<T>& a, const Mat<T>& b) {
  return a * b - b * a;
}

SMat to_series(const QMat& m, int trunc = kExact);
SMat scale(const SMat& m, const Series& s);
SMat truncate(const SMat& m, int trunc);
SMat derivative(const SMat& m);
// Entrywise certified agreement.
bool agrees(const SMat& a, const SMat& b);
bool is_zero(const SMat& a);
int min_truncation(const SMat& a);
// Constant-term matrix; all entries must have nonnegative valuation.
QMat constant_part(const SMat& a);

// Exact rational linear algebra.
struct RowEchelon {
  QMat reduced;
  std::vector<int> pivots;  // pivot column per nonzero row
};
RowEchelon rref(const QMat& a);
int rank(const QMat& a);
// Columns spanning the right nullspace, in RREF form (free variable = 1).
std::vector<std::vector<Rational>> nullspace(const QMat& a);
QMat inverse(const QMat& a);
Rational determinant(const QMat& a);

// Laurent-series linear algebra via elimination over the fraction field.
Series determinant(const SMat& a);
// Solves a x = b for square invertible a.
std::vector<Series> solve(const SMat& a, const std::vector<Series>& b);
SMat inverse(const SMat& a);

}  // namespace opers
