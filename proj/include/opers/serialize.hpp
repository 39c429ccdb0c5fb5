#pragma once

#include <string>

#include <json.hpp>

#include "opers/dictionary.hpp"

namespace opers {

inline constexpr const char* kVersion = "1.0.0";

namespace io {

using Json = nlohmann::json;

// Every parser caps the truncation of incoming series at `cap` absolute order
// (kExact leaves exact series exact).
Json to_json(const Series& s);
Series series_from_json(const Json& j, int cap = kExact);
Json to_json(const Density& d);
Density density_from_json(const Json& j, int cap = kExact);
Json to_json(const BiKernel& k);
BiKernel kernel_from_json(const Json& j, int cap = kExact);

Json matrix_to_json(const SMat& m);
SMat matrix_from_json(const Json& j, int cap = kExact);

Json algebra_to_json(const LieAlgebraSpec& spec);
// Accepts {"type":"A","rank":2} or "A:2".
TripleRef triple_from_json(const Json& j);

Json to_json(const OperConnection& c);
OperConnection connection_from_json(const Json& j, int cap = kExact);
Json to_json(const CanonicalForm& cf);
CanonicalForm canonical_from_json(const Json& j, int cap = kExact);
Json to_json(const PrincipalTriple& t, const GaugeElement& g);
GaugeElement gauge_from_json(const PrincipalTriple& t, const Json& j, int cap = kExact);

Json to_json(const DiffOp& l);
DiffOp diffop_from_json(const Json& j, int cap = kExact);
Json to_json(const PseudoSymbol& p);
PseudoSymbol pseudo_from_json(const Json& j, int cap = kExact);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json parse(const std::string& text);
Json read_file(const std::string& path);
// Pretty printed with sorted keys and a trailing newline.
std::string dump(const Json& j);

// Smallest truncation among the series inside j, or kExact.
int certified_order(const Json& j);
Json order_to_json(int order);

}  // namespace io
}  // namespace opers
