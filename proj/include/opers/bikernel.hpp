#pragma once

#include <map>

#include "opers/series.hpp"

namespace opers {

enum class Parity { kSymmetric, kSkew };

// K(z1,z2) = sum_{m=mmin}^{mmax} c_m(z2) (z1 - z2)^m (dz1)^w1 (dz2)^w2.
// Coefficients are functions of the second variable; every m in the range
// has an entry.  With mmin = -a and mmax = -b-1 this is a section of P_{a,b}.
class BiKernel {
 public:
  BiKernel() = default;
  BiKernel(Rational w1, Rational w2, int mmin, int mmax, std::map<int, Series> coeffs);

  const Rational& w1() const { return w1_; }
  const Rational& w2() const { return w2_; }
  int mmin() const { return mmin_; }
  int mmax() const { return mmax_; }
  const Series& c(int m) const;
  const std::map<int, Series>& coeffs() const { return c_; }
  // Smallest truncation among the coefficients.
  int jet_order() const;

  // Same kernel on the smaller range mmin..new_mmax.
  BiKernel restricted(int new_mmax) const;
  // Coefficientwise agreement on the common m-range.
  bool agrees(const BiKernel& other) const;

 private:
  Rational w1_ = 0, w2_ = 0;
  int mmin_ = 0, mmax_ = -1;
  std::map<int, Series> c_;
};

// K(z2,z1) re-expanded around the second variable; weights swapped.
BiKernel bikernel_swap(const BiKernel& k);
// (z1-z2)^(e*mmin) (1 + eps)^e for a kernel with unit leading coefficient.
BiKernel bikernel_power(const BiKernel& k, const Rational& e);
// Unique extension by extra_orders terms making swap(K) = +-K on the extended
// range; free coefficients (where the parity equation does not involve the new
// term) are set to zero after checking the constraint.
BiKernel symmetrize_lift(const BiKernel& k, Parity parity, int extra_orders);
// Whether swap(K) = +-K holds on the range of K.
bool has_parity(const BiKernel& k, Parity parity);

}  // namespace opers
