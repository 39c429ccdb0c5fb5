#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "opers/matrix.hpp"

namespace opers {

enum class LieType { A, B, C, D };

char lie_type_letter(LieType t);
LieType parse_lie_type(const std::string& letter);

// Matrix model of a classical simple Lie algebra with upper-triangular Borel.
//
// Forms: anti-diagonal J with J(i, N-1-i) = (-1)^i for B, (-1)^min(i, N-1-i)
// for D, and +1 / -1 on the upper / lower half for C.
struct LieAlgebraSpec {
  LieType type = LieType::A;
  int rank = 0;
  int dim = 0;  // matrix size N
  bool has_form = false;
  QMat form;
  std::vector<QMat> e, f, cartan;  // cartan[i] = [e_i, f_i]
  std::vector<std::pair<int, int>> e_pos;  // defining entry of e_i (value 1)
  std::vector<int> exponents;

  std::string descriptor() const;  // "A:2"
  std::string name() const;        // "sl(3)"
  bool contains(const QMat& x) const;
  bool contains(const SMat& x) const;
  // Orthogonal projection-type map X - J^{-1} X^T J (X for type A).
  QMat project(const QMat& x) const;
};

LieAlgebraSpec build_algebra(LieType type, int rank);
std::vector<int> classical_exponents(LieType type, int rank);

// Graded piece g_k with a coordinate system read off pivot entries.
struct GradedPiece {
  int degree = 0;
  std::vector<QMat> basis;
  std::vector<std::pair<int, int>> pivots;
  QMat pivot_inverse;
};

struct KostantSplit {
  SMat z;                      // in g_{k+1}
  SMat v;                      // in V_k
  std::vector<Series> vcoords;  // coordinates of v in the V_k basis
};

// One element of the canonical basis of V = Ker ad x.
struct VBasisElement {
  int degree;
  QMat matrix;
};

// Principal sl(2)-triple {h, x, y} with grading, root and Kostant data.
class PrincipalTriple {
 public:
  explicit PrincipalTriple(LieAlgebraSpec spec);

  const LieAlgebraSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim; }
  const QMat& h() const { return h_; }
  const QMat& x() const { return x_; }
  const QMat& y() const { return y_; }
  // y = sum_i y_coeff(i) f_i.
  const Rational& y_coeff(int i) const { return y_coeffs_[static_cast<std::size_t>(i)]; }
  const QMat& coweight(int i) const { return coweights_[static_cast<std::size_t>(i)]; }
  int max_degree() const { return max_degree_; }

  // Principal degree of the matrix entry (a, b).
  int entry_degree(int a, int b) const;
  bool supported(int a, int b) const;
  // Simple-root coordinates of the weight carried by entry (a, b).
  const std::vector<int>& root_coords(int a, int b) const;

  const GradedPiece& piece(int k) const;
  std::vector<Series> coords(const SMat& x, int k) const;
  SMat from_coords(const std::vector<Series>& c, int k) const;
  // Entries of x of degree k, zero elsewhere.
  SMat component(const SMat& x, int k) const;
  std::map<int, SMat> grade(const SMat& x) const;
  // Coordinate of x on the (-alpha_i) root space, i.e. on f_i.
  Series minus_simple_coord(const SMat& x, int i) const;

  KostantSplit kostant_split(const SMat& x, int k) const;

  const std::vector<QMat>& vbasis(int k) const;
  const std::vector<VBasisElement>& vbasis_all() const { return vall_; }
  std::vector<int> v_degrees() const;
  std::string fingerprint() const;

 private:
  LieAlgebraSpec spec_;
  QMat h_, x_, y_;
  std::vector<Rational> y_coeffs_;
  std::vector<QMat> coweights_;
  int max_degree_ = 0;
  std::vector<int> hdiag_;
  std::vector<std::vector<int>> rootc_;
  std::vector<bool> support_;
  std::map<int, GradedPiece> pieces_;
  std::map<int, std::vector<QMat>> vbasis_;
  std::map<int, QMat> kostant_inverse_;
  std::vector<VBasisElement> vall_;
};

// Shared immutable triple per (type, rank).
std::shared_ptr<const PrincipalTriple> principal_triple(LieType type, int rank);
std::shared_ptr<const PrincipalTriple> principal_triple(const std::string& descriptor);

// Coefficients p_1..p_N of det(lambda - X) = lambda^N + p_1 lambda^{N-1} + ...
std::vector<Series> charpoly(const SMat& x);
// Invariant polynomials I_k = -p_k for k in invariant_degrees(spec); with X of
// weight w the value I_k has weight k w.  Type D omits the Pfaffian.
std::vector<Density> invariants(const LieAlgebraSpec& spec, const SMat& x, const Rational& weight = 1);
std::vector<int> invariant_degrees(const LieAlgebraSpec& spec);

}  // namespace opers
