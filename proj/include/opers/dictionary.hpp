#pragma once

#include <array>
#include <optional>
#include <string>

#include "opers/gaugeflow.hpp"
#include "opers/opring.hpp"

namespace opers {

enum class OperKind { kGl, kSl, kSp, kSoOdd, kSoEven };

std::string kind_name(OperKind k);
OperKind parse_kind(const std::string& s);

// Companion system: basis e_i = xi^i e_0, subdiagonal 1s, last column -f_i.
struct FlaggedSystem {
  SMat q;
  Rational planck = 1;
  Rational e1_weight;   // E_1 = A^{-1}
  Rational top_weight;  // E / E_{n-1} = Omega (x) B^{-1}
};

struct DictionaryOper {
  OperKind kind = OperKind::kGl;
  FlaggedSystem companion;
  // Frame change from the companion basis: conn.q = G^{-1} C G + h G^{-1} G'
  // followed by the constant torus `reconcile`.
  SMat frame;
  GaugeElement reconcile;
  OperConnection conn;
  // Pairing matrix <e_i, e_j> = res(xi^i L^{-1} (-xi)^j) for sp and so_odd.
  std::optional<SMat> gram;
};

SMat companion_matrix(const DiffOp& l);
// q - (Tr q / n) I.
SMat traceless(const SMat& q);

// Reads L off the cyclic vector e_0: sum_i f_i nabla^i e_0 = 0 with f_n = 1.
DiffOp read_off(const SMat& q, const Rational& planck, const Rational& src);

DictionaryOper oper_from_diffop(const DiffOp& l, OperKind kind);
// Left inverse of oper_from_diffop.  The source weight defaults to (1-n)/2.
DiffOp diffop_from_oper(const OperConnection& conn, OperKind kind, std::optional<Rational> src = std::nullopt);
DiffOp diffop_from_oper(const DictionaryOper& d);

// Dual oper h d - W q^T W^{-1} with W the alternating anti-diagonal matrix.
OperConnection dualize(const OperConnection& conn);
// Whether h B' = q^T B + B q.
bool gram_horizontal(const SMat& q, const SMat& gram, const Rational& planck);
// Defect order < n - 1.
bool sl_condition(const DiffOp& l);

struct Sl2O3 {
  OperConnection sl2;       // d + (0 -u; 1 0)
  OperConnection o3;        // d + (0 -2u 0; 1 0 -2u; 0 1 0)
  DiffOp ltilde;            // d^3 + 4u d + 2u'
  BiKernel k;               // skew lift of K(d^2 + u) on P_{3,-1}
  BiKernel ktilde;          // K(ltilde) on P_{4,0}
  BiKernel k43, k23;
  bool power_identity = false;   // K^{4/3} = Ktilde
  bool k23_symmetric = false;    // K^{2/3} symmetric on P_{2,-2}
  bool image_matches = false;    // phi(sl2 matrix) = o3 matrix
};
// Image under the isomorphism E12 -> 2(E01 + E12), E21 -> E10 + E21.
SMat sl2_to_o3_matrix(const SMat& q);
Sl2O3 sl2_to_o3(const Density& u);

struct SoEvenOper {
  int k = 0;
  Rational planck = 1;
  SMat adapted;       // basis (e_0..e_{k-1}, e_*, e_k..e_{2k-2})
  QMat adapted_form;
  std::optional<OperConnection> conn;  // so(2k) model, available for even k
  std::array<bool, 5> conditions{};
  PseudoSymbol symbol;  // L + f xi^{-1} f
  bool symbol_skew = false;
};
SoEvenOper so_even_build(const DiffOp& l, const Density& f);

struct SoEvenData {
  DiffOp l;
  Density f;
};
SoEvenData so_even_extract(const OperConnection& conn);
// Same for a connection in the adapted basis with form B_E + 1.
SoEvenData so_even_extract_adapted(const SMat& q, const Rational& planck, int k);
// Conditions 1)-5) for a connection matrix in a basis adapted to the flag
// with dim F_i = i for i < k and i + 1 for i >= k.
std::array<bool, 5> so_even_conditions(const SMat& q, const QMat& form, int k);

}  // namespace opers
