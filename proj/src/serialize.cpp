#include "opers/serialize.hpp"

#include <fstream>
#include <sstream>

#include "opers/errors.hpp"

namespace opers::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw MalformedInput(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

int trunc_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return kExact;
  if (!j.is_number_integer()) throw MalformedInput("trunc must be an integer or \"inf\"");
  int t = j.get<int>();
  if (is_exact_order(t)) throw MalformedInput("trunc is out of range");
  return t;
}

Series cap_series(Series s, int cap) {
  if (is_exact_order(cap) || s.truncation() <= cap) return s;
  return s.truncated(cap);
}

std::string torus_key(int i) { return "alpha_" + std::to_string(i + 1); }

}  // namespace

Json rational_to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw MalformedInput("rational must be a \"p/q\" string or an integer");
}

Json order_to_json(int order) {
  if (is_exact_order(order)) return "inf";
  return order;
}

Json to_json(const Series& s) {
  Json c = Json::array();
  for (const Rational& q : s.stored()) c.push_back(format_rational(q));
  int val = s.is_zero() ? 0 : s.valuation();
  return Json{{"val", val}, {"trunc", order_to_json(s.truncation())}, {"coeffs", c}};
}

Series series_from_json(const Json& j, int cap) {
  if (j.is_string() || j.is_number_integer()) return cap_series(Series::constant(rational_from_json(j)), cap);
  int val = int_field(j, "val");
  int trunc = trunc_from_json(field(j, "trunc"));
  const Json& c = field(j, "coeffs");
  if (!c.is_array()) throw MalformedInput("coeffs must be an array");
  std::vector<Rational> v;
  for (const Json& x : c) v.push_back(rational_from_json(x));
  if (!is_exact_order(trunc) && val + static_cast<int>(v.size()) > trunc)
    throw MalformedInput("series stores coefficients beyond its truncation");
  return cap_series(Series::from_coeffs(val, std::move(v), trunc), cap);
}

Json to_json(const Density& d) {
  Json j = to_json(d.series);
  j["weight"] = format_rational(d.weight);
  return j;
}

Density density_from_json(const Json& j, int cap) {
  Density d(series_from_json(j, cap), rational_from_json(field(j, "weight")));
  d.check_weight();
  return d;
}

Json to_json(const BiKernel& k) {
  Json c = Json::object();
  for (const auto& [m, s] : k.coeffs()) c[std::to_string(m)] = to_json(s);
  return Json{{"w1", format_rational(k.w1())}, {"w2", format_rational(k.w2())}, {"mmin", k.mmin()},
              {"mmax", k.mmax()}, {"coeffs", c}};
}

BiKernel kernel_from_json(const Json& j, int cap) {
  std::map<int, Series> c;
  const Json& cj = field(j, "coeffs");
  if (!cj.is_object()) throw MalformedInput("kernel coeffs must be an object");
  for (const auto& [key, val] : cj.items()) {
    int m = 0;
    try {
      std::size_t used = 0;
      m = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw MalformedInput("kernel coefficient key '" + key + "' is not an integer");
    }
    c[m] = series_from_json(val, cap);
  }
  return BiKernel(rational_from_json(field(j, "w1")), rational_from_json(field(j, "w2")), int_field(j, "mmin"),
                  int_field(j, "mmax"), std::move(c));
}

Json matrix_to_json(const SMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

SMat matrix_from_json(const Json& j, int cap) {
  if (!j.is_array() || j.empty()) throw MalformedInput("matrix must be a non-empty array of rows");
  int r = static_cast<int>(j.size());
  if (!j[0].is_array()) throw MalformedInput("matrix rows must be arrays");
  int c = static_cast<int>(j[0].size());
  SMat m(r, c);
  for (int a = 0; a < r; ++a) {
    if (!j[static_cast<std::size_t>(a)].is_array() || static_cast<int>(j[static_cast<std::size_t>(a)].size()) != c)
      throw MalformedInput("matrix rows have different lengths");
    for (int b = 0; b < c; ++b)
      m(a, b) = series_from_json(j[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], cap);
  }
  return m;
}

Json algebra_to_json(const LieAlgebraSpec& spec) {
  return Json{{"type", std::string(1, lie_type_letter(spec.type))}, {"rank", spec.rank}};
}

TripleRef triple_from_json(const Json& j) {
  if (j.is_string()) return principal_triple(j.get<std::string>());
  const Json& t = field(j, "type");
  if (!t.is_string()) throw MalformedInput("algebra type must be a string");
  return principal_triple(parse_lie_type(t.get<std::string>()), int_field(j, "rank"));
}

Json to_json(const OperConnection& c) {
  return Json{{"algebra", algebra_to_json(c.triple->spec())},
              {"planck", format_rational(c.planck)},
              {"q", matrix_to_json(c.q)},
              {"version", kVersion},
              {"vbasis", c.triple->fingerprint()}};
}

OperConnection connection_from_json(const Json& j, int cap) {
  OperConnection c;
  c.triple = triple_from_json(field(j, "algebra"));
  c.planck = j.contains("planck") ? rational_from_json(j.at("planck")) : Rational(1);
  c.q = matrix_from_json(field(j, "q"), cap);
  int n = c.triple->dim();
  if (c.q.rows() != n || c.q.cols() != n)
    throw MalformedInput("connection matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  return c;
}

Json to_json(const CanonicalForm& cf) {
  Json v = Json::array();
  for (const Density& d : cf.v) v.push_back(to_json(d));
  return Json{{"algebra", algebra_to_json(cf.triple->spec())},
              {"planck", format_rational(cf.planck)},
              {"exponents", cf.exponents()},
              {"v", v},
              {"vbasis", cf.triple->fingerprint()},
              {"version", kVersion}};
}

CanonicalForm canonical_from_json(const Json& j, int cap) {
  CanonicalForm cf;
  cf.triple = triple_from_json(field(j, "algebra"));
  cf.planck = j.contains("planck") ? rational_from_json(j.at("planck")) : Rational(1);
  if (j.contains("vbasis") && j.at("vbasis") != cf.triple->fingerprint())
    throw MalformedInput("V basis fingerprint does not match this build");
  const Json& v = field(j, "v");
  std::vector<int> degs = cf.triple->v_degrees();
  if (!v.is_array() || v.size() != degs.size())
    throw MalformedInput("expected " + std::to_string(degs.size()) + " canonical coordinates");
  for (std::size_t i = 0; i < degs.size(); ++i) {
    Density d = density_from_json(v[i], cap);
    if (d.weight != degs[i] + 1)
      throw MalformedInput("canonical coordinate " + std::to_string(i) + " must have weight " +
                           std::to_string(degs[i] + 1));
    cf.v.push_back(std::move(d));
  }
  return cf;
}

Json to_json(const PrincipalTriple& t, const GaugeElement& g) {
  Json torus = Json::object();
  for (std::size_t i = 0; i < g.torus.size(); ++i) torus[torus_key(static_cast<int>(i))] = to_json(g.torus[i]);
  Json steps = Json::array();
  for (const SMat& u : g.steps) steps.push_back(matrix_to_json(u));
  return Json{{"algebra", algebra_to_json(t.spec())}, {"torus", torus}, {"steps", steps}};
}

GaugeElement gauge_from_json(const PrincipalTriple& t, const Json& j, int cap) {
  GaugeElement g;
  const Json& torus = field(j, "torus");
  if (!torus.is_object()) throw MalformedInput("torus must be an object");
  if (!torus.empty()) {
    for (int i = 0; i < t.spec().rank; ++i) g.torus.push_back(series_from_json(field(torus, torus_key(i).c_str()), cap));
    if (static_cast<int>(torus.size()) != t.spec().rank) throw MalformedInput("torus has unexpected keys");
  }
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) throw MalformedInput("steps must be an array");
  for (const Json& s : steps) {
    SMat u = matrix_from_json(s, cap);
    if (u.rows() != t.dim() || u.cols() != t.dim()) throw MalformedInput("gauge step has the wrong size");
    g.steps.push_back(std::move(u));
  }
  return g;
}

Json to_json(const DiffOp& l) {
  Json c = Json::array();
  for (const Series& s : l.coeffs) c.push_back(to_json(s));
  return Json{{"order", l.order()},
              {"src", format_rational(l.src)},
              {"tgt", format_rational(l.tgt)},
              {"planck", format_rational(l.planck)},
              {"coeffs", c},
              {"version", kVersion}};
}

DiffOp diffop_from_json(const Json& j, int cap) {
  const Json& c = field(j, "coeffs");
  if (!c.is_array() || c.empty()) throw MalformedInput("operator coeffs must be a non-empty array");
  std::vector<Series> f;
  for (const Json& x : c) f.push_back(series_from_json(x, cap));
  if (j.contains("order") && int_field(j, "order") + 1 != static_cast<int>(f.size()))
    throw MalformedInput("order does not match the number of coefficients");
  Rational h = j.contains("planck") ? rational_from_json(j.at("planck")) : Rational(1);
  return DiffOp(rational_from_json(field(j, "src")), rational_from_json(field(j, "tgt")), h, std::move(f));
}

Json to_json(const PseudoSymbol& p) {
  Json c = Json::object();
  for (const auto& [i, s] : p.coeffs) c[std::to_string(i)] = to_json(s);
  return Json{{"order", p.top},
              {"floor", order_to_json(p.floor == kNoFloor ? kExact : p.floor)},
              {"src", format_rational(p.src)},
              {"tgt", format_rational(p.tgt)},
              {"planck", format_rational(p.planck)},
              {"coeffs", c},
              {"version", kVersion}};
}

PseudoSymbol pseudo_from_json(const Json& j, int cap) {
  PseudoSymbol p;
  p.top = int_field(j, "order");
  const Json& fl = field(j, "floor");
  p.floor = fl.is_string() && fl.get<std::string>() == "inf" ? kNoFloor : int_field(j, "floor");
  p.src = rational_from_json(field(j, "src"));
  p.tgt = rational_from_json(field(j, "tgt"));
  p.planck = j.contains("planck") ? rational_from_json(j.at("planck")) : Rational(1);
  for (const auto& [key, val] : field(j, "coeffs").items()) {
    int i = 0;
    try {
      i = std::stoi(key);
    } catch (const std::exception&) {
      throw MalformedInput("symbol coefficient key '" + key + "' is not an integer");
    }
    p.coeffs[i] = series_from_json(val, cap);
  }
  return p;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int certified_order(const Json& j) {
  int best = kExact;
  if (j.is_object()) {
    if (j.contains("trunc") && j.contains("coeffs") && j.contains("val")) {
      const Json& t = j.at("trunc");
      if (t.is_number_integer()) best = std::min(best, t.get<int>());
      return best;
    }
    for (const auto& [k, v] : j.items()) best = std::min(best, certified_order(v));
  } else if (j.is_array()) {
    for (const Json& v : j) best = std::min(best, certified_order(v));
  }
  return best;
}

}  // namespace opers::io
