#include <doctest.h>

#include "opers/errors.hpp"
#include "opers/serialize.hpp"
#include "support.hpp"

using namespace opers;
using testing_support::poly;
using testing_support::Rng;

TEST_CASE("series round trip") {
  Series s = Series::from_coeffs(-2, {frac(1, 2), 0, Rational(-3)}, 4);
  io::Json j = io::to_json(s);
  CHECK(j["val"] == -2);
  CHECK(j["trunc"] == 4);
  CHECK(j["coeffs"][0] == "1/2");
  CHECK(io::series_from_json(j) == s);
  io::Json e = io::to_json(poly({1, 2}));
  CHECK(e["trunc"] == "inf");
  CHECK(io::series_from_json(e) == poly({1, 2}));
  CHECK(io::series_from_json(e, 1) == poly({1}, 1));
}

TEST_CASE("malformed series are rejected") {
  CHECK_THROWS_AS(io::series_from_json(io::parse(R"({"val":0,"trunc":1,"coeffs":["1","2"]})")), MalformedInput);
  CHECK_THROWS_AS(io::series_from_json(io::parse(R"({"val":0,"coeffs":[]})")), MalformedInput);
  CHECK_THROWS_AS(io::series_from_json(io::parse(R"({"val":0,"trunc":"x","coeffs":[]})")), MalformedInput);
  CHECK_THROWS_AS(io::series_from_json(io::parse(R"({"val":0,"trunc":3,"coeffs":["1.5"]})")), MalformedInput);
  CHECK_THROWS_AS(io::parse("{"), MalformedInput);
}

TEST_CASE("densities, kernels, operators and symbols") {
  Density d(poly({1, 1}, 6), frac(3, 2));
  Density d2 = io::density_from_json(io::to_json(d));
  CHECK(d2.weight == d.weight);
  CHECK(d2.series == d.series);
  DiffOp l(frac(-1, 2), frac(3, 2), 1, {poly({1}), Series(), Series::constant(1)});
  CHECK(io::diffop_from_json(io::to_json(l)).agrees(l));
  BiKernel k = kernel_from_diffop(l);
  CHECK(io::kernel_from_json(io::to_json(k)).agrees(k));
  PseudoSymbol p = pseudo_invert(l, 3);
  CHECK(io::pseudo_from_json(io::to_json(p)).agrees(p));
}

TEST_CASE("connections, canonical forms and gauges") {
  Rng r(41);
  auto t = principal_triple(LieType::C, 2);
  OperConnection c{t, frac(1, 2), testing_support::random_oper(r, *t, 2, 7)};
  OperConnection c2 = io::connection_from_json(io::parse(io::dump(io::to_json(c))));
  CHECK(c2.triple == t);
  CHECK(c2.planck == c.planck);
  CHECK(agrees(c2.q, c.q));
  NormalizeResult n = normalize(c);
  CanonicalForm cf = io::canonical_from_json(io::to_json(n.form));
  for (std::size_t j = 0; j < cf.v.size(); ++j) CHECK(cf.v[j].series == n.form.v[j].series);
  GaugeElement g = testing_support::random_gauge(r, *t, 2, 7);
  CHECK(gauge_agrees(*t, io::gauge_from_json(*t, io::to_json(*t, g)), g));
  io::Json bad = io::to_json(n.form);
  bad["vbasis"] = "0000000000000000";
  CHECK_THROWS_AS(io::canonical_from_json(bad), MalformedInput);
}

TEST_CASE("algebra descriptors") {
  CHECK(io::triple_from_json(io::parse(R"({"type":"A","rank":2})"))->dim() == 3);
  CHECK(io::triple_from_json(io::Json("B:2"))->dim() == 5);
  CHECK_THROWS_AS(io::triple_from_json(io::parse(R"({"type":"A"})")), MalformedInput);
}

TEST_CASE("certified order and deterministic output") {
  io::Json j{{"a", io::to_json(poly({1}, 5))}, {"b", {io::to_json(poly({1}, 3))}}};
  CHECK(io::certified_order(j) == 3);
  CHECK(io::certified_order(io::Json::object()) == kExact);
  CHECK(io::dump(j) == io::dump(io::parse(io::dump(j))));
}
