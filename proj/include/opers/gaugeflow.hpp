#pragma once

#include <memory>
#include <string>
#include <vector>

#include "opers/liecore.hpp"

namespace opers {

using TripleRef = std::shared_ptr<const PrincipalTriple>;

// planck * d/dz + q on the formal disc.
struct OperConnection {
  TripleRef triple;
  Rational planck = 1;
  SMat q;
};

// b = t * exp(u_1) * exp(u_2) * ... with alpha_i(t) = torus[i] and u_r in g_r.
// An empty torus means t = 1.
struct GaugeElement {
  std::vector<Series> torus;
  std::vector<SMat> steps;

  static GaugeElement identity(const PrincipalTriple& t);
  bool is_identity() const;
};

// planck * d/dz + y + sum_d v_d V_d, one density per V basis element.
struct CanonicalForm {
  TripleRef triple;
  Rational planck = 1;
  std::vector<Density> v;

  SMat matrix() const;
  std::vector<int> exponents() const;
};

struct NormalizeResult {
  GaugeElement gauge;
  CanonicalForm form;
  SMat q;  // gauge_apply(conn, gauge).q
};

// Checks membership, the absence of degrees below -1 and unit (-alpha)
// coefficients; throws NotAnOper or InsufficientTruncation.
void check_oper(const OperConnection& conn);

// b^{-1} (planck d + q) b.
OperConnection gauge_apply(const OperConnection& conn, const GaugeElement& b);
// Same with the derivative term weighted by weight (planck * f for singular
// connections); a certified zero weight drops the derivative terms.
SMat gauge_apply_weighted(const PrincipalTriple& t, const SMat& q, const Series& weight, const GaugeElement& b);

// Group law in the adjoint Borel.
GaugeElement gauge_compose(const PrincipalTriple& t, const GaugeElement& a, const GaugeElement& b);
GaugeElement gauge_inverse(const PrincipalTriple& t, const GaugeElement& b);
bool gauge_agrees(const PrincipalTriple& t, const GaugeElement& a, const GaugeElement& b);
// Unipotent part exp(u_1) exp(u_2) ... as a matrix in the defining representation.
SMat unipotent_matrix(const PrincipalTriple& t, const GaugeElement& b);

NormalizeResult normalize(const OperConnection& conn);
// Normalizes planck * f d + q.
NormalizeResult normalize_singular(const Series& f, const OperConnection& conn);
// Core loop on q with an arbitrary derivative weight.
NormalizeResult normalize_weighted(const PrincipalTriple& t, const SMat& q, const Series& weight, const Rational& planck);

struct DesingularizeResult {
  CanonicalForm form;       // qbar in y + V, Laurent coefficients
  GaugeElement gauge;       // total gauge from planck d + f^{-1} qtilde
  GaugeElement residual;    // extra gauge needed after the sl(2) gauge
  bool displayed_gauge_canonical = false;
  bool formula_holds = false;
  std::vector<Density> formula;  // predicted qbar coordinates
};

// Gauges planck d + f^{-1} qtilde, qtilde in y + V, by the image of
// (f, f'; 0, 1) under the principal sl(2), finishes the normalization and
// compares with qbar_1 = f^{-2}(qtilde_1 + planck^2 (f'' f / 2 - f'^2 / 4)),
// qbar_k = f^{-k-1} qtilde_k.
DesingularizeResult desingularize(const Series& f, const CanonicalForm& qtilde);

struct SingularityClass {
  int m = 0;
  std::vector<int> pole_orders;
  std::vector<int> per_exponent;
};
SingularityClass classify_singularity(const CanonicalForm& cf);

// y - u x + sum eta_d V_d over the V basis elements after x.
OperConnection embed_sl2(const TripleRef& t, const Density& u, const std::vector<Density>& eta,
                         const Rational& planck = 1);
OperConnection act_quadratic_differential(const OperConnection& conn, const Density& omega);
std::vector<Density> hitchin_map(const CanonicalForm& cf);

struct DimensionRow {
  int exponent;
  int weight;
  long dimension;
};
struct DimensionTable {
  std::vector<DimensionRow> rows;
  long total = 0;
};
// dim H^0(Omega^k(kD)) on a curve of the given genus with deg D = degD.
long sections_dimension(int k, int genus, int degD);
DimensionTable moduli_dimension(const LieAlgebraSpec& spec, int genus, int degD);

}  // namespace opers
