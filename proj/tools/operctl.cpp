// operctl: command-line front end for the opers library.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include "opers/dictionary.hpp"
#include "opers/errors.hpp"
#include "opers/serialize.hpp"

using namespace opers;
using io::Json;

namespace {

struct Flags {
  int trunc = 12;
  std::string planck, algebra, kind, power, parity, out;
  int depth = -1;
  int genus = 0, degree = 0;
  std::vector<std::string> files;
};

void fail_code(ErrorCode c, const std::string& kind, const std::string& msg) {
  Json j{{"error", kind}, {"code", static_cast<int>(c)}, {"message", msg}};
  std::cerr << j.dump() << "\n";
}

const std::string& file_arg(const Flags& f, std::size_t i, const char* what) {
  if (f.files.size() <= i) throw MalformedInput(std::string("missing input file: ") + what);
  return f.files[i];
}

std::optional<Rational> planck_override(const Flags& f) {
  if (f.planck.empty()) return std::nullopt;
  return parse_rational(f.planck);
}

Json stamp(Json j, const std::string& command) {
  j["command"] = command;
  j["version"] = kVersion;
  j["certified_order"] = io::order_to_json(io::certified_order(j));
  return j;
}

OperConnection load_connection(const Flags& f, std::size_t i) {
  Json j = io::read_file(file_arg(f, i, "connection"));
  if (!f.algebra.empty()) j["algebra"] = f.algebra;
  OperConnection c = io::connection_from_json(j, f.trunc);
  if (auto h = planck_override(f)) c.planck = *h;
  return c;
}

CanonicalForm load_canonical(const Flags& f, std::size_t i) {
  Json j = io::read_file(file_arg(f, i, "canonical form"));
  if (!f.algebra.empty()) j["algebra"] = f.algebra;
  CanonicalForm cf = io::canonical_from_json(j, f.trunc);
  if (auto h = planck_override(f)) cf.planck = *h;
  return cf;
}

DiffOp load_diffop(const Flags& f, std::size_t i) {
  DiffOp l = io::diffop_from_json(io::read_file(file_arg(f, i, "operator")), f.trunc);
  if (auto h = planck_override(f)) l.planck = *h;
  return l;
}

Series load_series(const Flags& f, std::size_t i) {
  return io::series_from_json(io::read_file(file_arg(f, i, "series")), f.trunc);
}

Density load_density(const Flags& f, std::size_t i, const Rational& weight) {
  Json j = io::read_file(file_arg(f, i, "density"));
  if (!j.contains("weight")) j["weight"] = format_rational(weight);
  return io::density_from_json(j, f.trunc);
}

OperKind kind_from(const Flags& f, const Json& j) {
  if (!f.kind.empty()) return parse_kind(f.kind);
  if (j.contains("kind") && j.at("kind").is_string()) return parse_kind(j.at("kind").get<std::string>());
  throw MalformedInput("an oper kind is required (--kind gl|sl|sp|so_odd|so_even)");
}

Json identity_report(Json j, bool pass, const std::string& what) {
  j["pass"] = pass;
  if (!pass) {
    std::cout << io::dump(j);
    throw IdentityCheckFailure(what);
  }
  return j;
}

Json cmd_normalize(const Flags& f) {
  OperConnection c = load_connection(f, 0);
  NormalizeResult r = normalize(c);
  Json j = io::to_json(r.form);
  j["gauge"] = io::to_json(*c.triple, r.gauge);
  return j;
}

Json cmd_normalize_singular(const Flags& f) {
  OperConnection c = load_connection(f, 0);
  Series div = load_series(f, 1);
  NormalizeResult r = normalize_singular(div, c);
  Json j = io::to_json(r.form);
  j["gauge"] = io::to_json(*c.triple, r.gauge);
  return j;
}

Json cmd_desingularize(const Flags& f) {
  CanonicalForm qt = load_canonical(f, 0);
  Series div = load_series(f, 1);
  DesingularizeResult r = desingularize(div, qt);
  Json j = io::to_json(r.form);
  j["gauge"] = io::to_json(*qt.triple, r.gauge);
  j["residual_gauge"] = io::to_json(*qt.triple, r.residual);
  j["displayed_gauge_canonical"] = r.displayed_gauge_canonical;
  j["formula_holds"] = r.formula_holds;
  Json pred = Json::array();
  for (const Density& d : r.formula) pred.push_back(io::to_json(d));
  j["formula"] = pred;
  return j;
}

Json cmd_classify(const Flags& f) {
  CanonicalForm cf = load_canonical(f, 0);
  SingularityClass s = classify_singularity(cf);
  return Json{{"m", s.m}, {"pole_orders", s.pole_orders}, {"per_exponent", s.per_exponent},
              {"exponents", cf.exponents()}, {"vbasis", cf.triple->fingerprint()}};
}

Json cmd_convert(const Flags& f) {
  Json in = io::read_file(file_arg(f, 0, "operator or connection"));
  OperKind kind = kind_from(f, in);
  if (in.contains("q")) {
    if (!f.algebra.empty()) in["algebra"] = f.algebra;
    OperConnection c = io::connection_from_json(in, f.trunc);
    if (auto h = planck_override(f)) c.planck = *h;
    std::optional<Rational> src;
    if (in.contains("src")) src = io::rational_from_json(in.at("src"));
    return io::to_json(diffop_from_oper(c, kind, src));
  }
  DiffOp l = io::diffop_from_json(in, f.trunc);
  if (auto h = planck_override(f)) l.planck = *h;
  DictionaryOper d = oper_from_diffop(l, kind);
  Json j = io::to_json(d.conn);
  j["kind"] = kind_name(kind);
  j["src"] = format_rational(l.src);
  j["tgt"] = format_rational(l.tgt);
  j["reconcile"] = io::to_json(*d.conn.triple, d.reconcile);
  return j;
}

Json cmd_transpose(const Flags& f) {
  Json in = io::read_file(file_arg(f, 0, "operator"));
  if (in.contains("floor")) {
    PseudoSymbol p = io::pseudo_from_json(in, f.trunc);
    if (auto h = planck_override(f)) p.planck = *h;
    return io::to_json(transpose(p));
  }
  DiffOp l = io::diffop_from_json(in, f.trunc);
  if (auto h = planck_override(f)) l.planck = *h;
  return io::to_json(transpose(l));
}

Json cmd_dualize(const Flags& f) {
  Json in = io::read_file(file_arg(f, 0, "connection"));
  OperConnection c = load_connection(f, 0);
  Json j = io::to_json(dualize(c));
  if (in.contains("kind")) j["kind"] = in.at("kind");
  if (in.contains("tgt")) j["src"] = format_rational(1 - io::rational_from_json(in.at("tgt")));
  if (in.contains("src")) j["tgt"] = format_rational(1 - io::rational_from_json(in.at("src")));
  return j;
}

Parity parse_parity(const std::string& s) {
  if (s == "skew") return Parity::kSkew;
  if (s == "symmetric") return Parity::kSymmetric;
  throw MalformedInput("parity must be skew or symmetric");
}

Json cmd_kernel(const Flags& f) {
  DiffOp l = load_diffop(f, 0);
  BiKernel k = kernel_from_diffop(l);
  if (!f.parity.empty()) k = symmetrize_lift(k, parse_parity(f.parity), f.depth < 0 ? 1 : f.depth);
  if (!f.power.empty()) k = bikernel_power(k, parse_rational(f.power));
  if (f.files.size() > 1) {
    // Compare with the kernel of a second operator.
    BiKernel rhs = kernel_from_diffop(load_diffop(f, 1));
    bool ok = k.agrees(rhs) && k.w1() == rhs.w1() && k.w2() == rhs.w2();
    Json j{{"lhs", io::to_json(k)}, {"rhs", io::to_json(rhs)}};
    return identity_report(j, ok, "kernel identity fails");
  }
  Json j = io::to_json(k);
  j["version"] = kVersion;
  return j;
}

Json cmd_kernel_check(const Flags& f) {
  Density u = load_density(f, 0, 2);
  Sl2O3 r = sl2_to_o3(u);
  Json j{{"lhs", io::to_json(r.k43)}, {"rhs", io::to_json(r.ktilde)}, {"identity", "K^(4/3) = Ktilde"},
         {"k23", io::to_json(r.k23)}, {"k23_symmetric", r.k23_symmetric}};
  return identity_report(j, r.power_identity && r.k23_symmetric, "kernel identity K^(4/3) = Ktilde fails");
}

Json cmd_sl2_o3(const Flags& f) {
  Density u = load_density(f, 0, 2);
  Sl2O3 r = sl2_to_o3(u);
  DiffOp back = diffop_from_oper(r.o3, OperKind::kSoOdd, Rational(-1));
  Json j{{"sl2", io::to_json(r.sl2)},
         {"o3", io::to_json(r.o3)},
         {"ltilde", io::to_json(r.ltilde)},
         {"image_matches", r.image_matches},
         {"power_identity", r.power_identity},
         {"k23_symmetric", r.k23_symmetric},
         {"readoff_matches", back.agrees(r.ltilde)}};
  bool ok = r.image_matches && r.power_identity && r.k23_symmetric && back.agrees(r.ltilde);
  return identity_report(j, ok, "sl(2) to o(3) checks fail");
}

Json cmd_so_even_build(const Flags& f) {
  DiffOp l = load_diffop(f, 0);
  int k = (l.order() + 1) / 2;
  Density fd = load_density(f, 1, k);
  SoEvenOper so = so_even_build(l, fd);
  Json j;
  if (so.conn) {
    j = io::to_json(*so.conn);
  } else {
    j["planck"] = format_rational(so.planck);
    j["version"] = kVersion;
  }
  j["kind"] = "so_even";
  j["k"] = so.k;
  j["adapted"] = io::matrix_to_json(so.adapted);
  Json conds = Json::array();
  for (bool b : so.conditions) conds.push_back(b);
  j["conditions"] = conds;
  j["symbol"] = io::to_json(so.symbol);
  j["symbol_skew"] = so.symbol_skew;
  bool ok = so.symbol_skew;
  for (bool b : so.conditions) ok = ok && b;
  return identity_report(j, ok, "SO(2k)-oper conditions fail");
}

Json cmd_so_even_extract(const Flags& f) {
  Json in = io::read_file(file_arg(f, 0, "connection"));
  SoEvenData d;
  if (in.contains("q")) {
    d = so_even_extract(load_connection(f, 0));
  } else {
    if (!in.contains("adapted") || !in.contains("k")) throw MalformedInput("expected a q or adapted matrix");
    Rational h = in.contains("planck") ? io::rational_from_json(in.at("planck")) : Rational(1);
    if (auto o = planck_override(f)) h = *o;
    d = so_even_extract_adapted(io::matrix_from_json(in.at("adapted"), f.trunc), h, in.at("k").get<int>());
  }
  return Json{{"L", io::to_json(d.l)}, {"f", io::to_json(d.f)}};
}

Json cmd_hitchin(const Flags& f) {
  CanonicalForm cf = load_canonical(f, 0);
  std::vector<Density> inv = hitchin_map(cf);
  Json v = Json::array();
  for (const Density& d : inv) v.push_back(io::to_json(d));
  return Json{{"algebra", io::algebra_to_json(cf.triple->spec())},
              {"degrees", invariant_degrees(cf.triple->spec())},
              {"invariants", v}};
}

Json cmd_dims(const Flags& f) {
  if (f.algebra.empty()) throw MalformedInput("dims needs --algebra TYPE:RANK");
  TripleRef t = principal_triple(f.algebra);
  DimensionTable tab = moduli_dimension(t->spec(), f.genus, f.degree);
  Json rows = Json::array();
  for (const DimensionRow& r : tab.rows)
    rows.push_back(Json{{"exponent", r.exponent}, {"weight", r.weight}, {"dimension", r.dimension}});
  return Json{{"algebra", io::algebra_to_json(t->spec())}, {"genus", f.genus}, {"degD", f.degree},
              {"rows", rows}, {"total", tab.total}};
}

Series poly(std::initializer_list<int> c, int trunc) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return Series::from_coeffs(0, std::move(v), trunc);
}

Json cmd_selftest(const Flags& f) {
  std::map<std::string, bool> checks;
  Series u = poly({1, 2, 0, 3}, f.trunc);
  {
    OperConnection c;
    c.triple = principal_triple(LieType::A, 1);
    c.q = SMat(2, 2);
    c.q(0, 1) = -u;
    c.q(1, 0) = Series::constant(1);
    checks["normalize_sl2"] = normalize(c).form.v[0].series.agrees(-u);
  }
  Sl2O3 r = sl2_to_o3(Density(u, 2));
  checks["kernel_identity"] = r.power_identity && r.k23_symmetric && r.image_matches;
  {
    DiffOp l(-1, 2, 1, {poly({1, 1}, f.trunc), poly({0, 2}, f.trunc), Series(), Series::constant(1)});
    checks["dictionary_sl3"] = diffop_from_oper(oper_from_diffop(l, OperKind::kSl)).agrees(l);
  }
  checks["dims_sl2_genus2"] = moduli_dimension(build_algebra(LieType::A, 1), 2, 0).total == 3;
  bool all = true;
  for (const auto& kv : checks) {
    std::cerr << (kv.second ? "PASS " : "FAIL ") << kv.first << "\n";
    all = all && kv.second;
  }
  return identity_report(Json{{"checks", checks}}, all, "selftest failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operctl: opers, canonical forms and differential operators"};
  app.require_subcommand(1);
  Flags flags;

  struct Cmd {
    const char* name;
    const char* help;
    std::function<Json(const Flags&)> run;
  };
  std::vector<Cmd> cmds = {
      {"normalize", "canonical form and gauge of a connection", cmd_normalize},
      {"normalize-singular", "canonical form of planck*f*d + q (connection, f)", cmd_normalize_singular},
      {"desingularize", "desingularize planck*d + f^-1 qtilde (canonical form, f)", cmd_desingularize},
      {"classify", "divisor multiplicity of a canonical form", cmd_classify},
      {"convert", "differential operator <-> oper connection", cmd_convert},
      {"transpose", "transpose of an operator or symbol", cmd_transpose},
      {"dualize", "dual oper connection", cmd_dualize},
      {"kernel", "bidifferential kernel of an operator", cmd_kernel},
      {"kernel-check", "check K^(4/3) = Ktilde for a density u", cmd_kernel_check},
      {"sl2-o3", "sl(2) to o(3) image of d^2 + u", cmd_sl2_o3},
      {"so-even-build", "SO(2k)-oper from (L, f)", cmd_so_even_build},
      {"so-even-extract", "(L, f) from an SO(2k)-oper", cmd_so_even_extract},
      {"hitchin", "invariants of a planck-0 canonical form", cmd_hitchin},
      {"dims", "dimension table for a curve", cmd_dims},
      {"selftest", "built-in consistency checks", cmd_selftest},
  };
  std::map<std::string, CLI::App*> subs;
  for (const Cmd& c : cmds) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    s->add_option("files", flags.files, "input files");
    s->add_option("--trunc", flags.trunc, "cap on input truncation")->check(CLI::PositiveNumber);
    s->add_option("--planck", flags.planck, "planck override p/q");
    s->add_option("--algebra", flags.algebra, "algebra TYPE:RANK");
    s->add_option("--kind", flags.kind, "gl|sl|sp|so_odd|so_even");
    s->add_option("--depth", flags.depth, "extra orders for kernel lifts")->check(CLI::NonNegativeNumber);
    s->add_option("--power", flags.power, "kernel exponent p/q");
    s->add_option("--parity", flags.parity, "skew|symmetric kernel lift");
    s->add_option("--genus", flags.genus, "curve genus")->check(CLI::NonNegativeNumber);
    s->add_option("--degree", flags.degree, "degree of the divisor");
    s->add_option("-o,--out", flags.out, "output file (default stdout)");
    subs[c.name] = s;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    fail_code(ErrorCode::kMalformedInput, "MalformedInput", e.what());
    return static_cast<int>(ErrorCode::kMalformedInput);
  }

  for (const Cmd& c : cmds) {
    if (!subs[c.name]->parsed()) continue;
    try {
      Json out = stamp(c.run(flags), c.name);
      std::string text = io::dump(out);
      if (flags.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream os(flags.out);
        if (!os) throw MalformedInput("cannot write '" + flags.out + "'");
        os << text;
      }
      return 0;
    } catch (const OpersError& e) {
      fail_code(e.code(), e.kind(), e.what());
      return static_cast<int>(e.code());
    } catch (const Json::exception& e) {
      fail_code(ErrorCode::kMalformedInput, "MalformedInput", e.what());
      return static_cast<int>(ErrorCode::kMalformedInput);
    }
  }
  return 0;
}
