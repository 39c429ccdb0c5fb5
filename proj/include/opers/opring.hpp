#pragma once

#include <map>
#include <vector>

#include "opers/bikernel.hpp"
#include "opers/series.hpp"

namespace opers {

// Floor of a symbol known in every order.
constexpr int kNoFloor = -kExact;

// L = sum_{i=0}^n f_i xi^i from weight src to weight tgt, where
// xi = planck d/dz satisfies xi g = g xi + planck g'.
struct DiffOp {
  Rational src = 0, tgt = 0, planck = 1;
  std::vector<Series> coeffs;

  DiffOp() = default;
  DiffOp(Rational a, Rational b, Rational h, std::vector<Series> f);
  static DiffOp multiplication(const Series& g, const Rational& w, const Rational& h = 1);
  // xi^n with unit coefficient.
  static DiffOp power(int n, const Rational& w, const Rational& h = 1);

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  Series coeff(int i) const;
  bool agrees(const DiffOp& o) const;
  // Drops exact-zero leading coefficients.
  DiffOp trimmed() const;
  // Image under xi -> planck d/dz: coefficients f_i planck^i, planck 1.
  DiffOp expanded() const;
};

DiffOp operator+(const DiffOp& a, const DiffOp& b);
DiffOp operator-(const DiffOp& a, const DiffOp& b);
DiffOp operator*(const DiffOp& a, const Rational& s);

// sum_{floor <= i <= top} f_i xi^i; coefficients below floor are unknown.
struct PseudoSymbol {
  Rational src = 0, tgt = 0, planck = 1;
  int top = 0;
  int floor = kNoFloor;
  std::map<int, Series> coeffs;

  static PseudoSymbol from_diffop(const DiffOp& l);
  // c xi^i known to all orders down to floor.
  static PseudoSymbol monomial(int i, const Series& c, int floor, const Rational& src, const Rational& tgt,
                               const Rational& h = 1);
  // Coefficient of xi^i; throws InsufficientTruncation below the floor.
  Series coeff(int i) const;
  bool agrees(const PseudoSymbol& o) const;
};

PseudoSymbol compose(const PseudoSymbol& l, const PseudoSymbol& m);
DiffOp compose(const DiffOp& l, const DiffOp& m);
// L^t = sum (-xi)^i f_i from 1 - tgt to 1 - src.
DiffOp transpose(const DiffOp& l);
PseudoSymbol transpose(const PseudoSymbol& p);

struct Symbols {
  Density principal;
  DiffOp defect;  // L + (-1)^{n+1} L^t
  int defect_order = -1;  // -1 for the zero operator
};
Symbols symbols(const DiffOp& l);
// Highest index with a nonzero coefficient, -1 when all vanish.
int effective_order(const DiffOp& l);

PseudoSymbol pseudo_invert(const DiffOp& l, int depth);
Density res(const PseudoSymbol& p);
// res(u L^{-1} v^t) with u: src(L) -> 0 and v: 1 - tgt(L) -> 0.
Series pairing(const PseudoSymbol& u, const PseudoSymbol& v, const DiffOp& l, int depth);
Series pairing(const DiffOp& u, const DiffOp& v, const DiffOp& l, int depth);

// Kernel with c_{-i-1} = i! f_i / n!, weights (1 - src, tgt); planck must be 1
// after expansion.
BiKernel kernel_from_diffop(const DiffOp& l);
DiffOp diffop_from_kernel(const BiKernel& k);

// [v, L] = Lie_v o L - L o Lie_v for v = g (dz)^{-1}, Lie_v = g d + w g' on
// weight w.  For planck h, Lie_v is taken as g xi + h w g' so the result is
// h [v, L].
DiffOp lie_derivative(const DiffOp& l, const Density& v);
// L applied to a function.
Series apply(const DiffOp& l, const Series& s);

}  // namespace opers
