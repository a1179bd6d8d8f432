// Copyright 2026 The alg2d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

namespace alg2d::cli {

namespace {

std::string field(const std::string& where, const std::string& name) {
  return where.empty() ? name : where + "." + name;
}

Json rows_json(const auto& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(double(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

template <int R, int C>
Eigen::Matrix<double, R, C> matrix_from(const Json& j, const std::string& name) {
  Eigen::Matrix<double, R, C> m;
  if (!j.is_array() || j.size() != std::size_t(R)) {
    throw ParseError("field \"" + name + "\": expected " + std::to_string(R) +
                     " rows");
  }
  for (int r = 0; r < R; ++r) {
    const auto& row = j[std::size_t(r)];
    const std::string rname = name + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != std::size_t(C)) {
      throw ParseError("field \"" + rname + "\": expected " +
                       std::to_string(C) + " numbers");
    }
    for (int c = 0; c < C; ++c) {
      const auto& x = row[std::size_t(c)];
      if (!x.is_number()) {
        throw ParseError("field \"" + rname + "[" + std::to_string(c) +
                         "]\": not a number");
      }
      m(r, c) = x.get<double>();
    }
  }
  return m;
}

std::vector<double> doubles_from(const Json& j, const std::string& name) {
  if (!j.is_array()) throw ParseError("field \"" + name + "\": expected array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError("field \"" + name + "\": not a number");
    out.push_back(x.get<double>());
  }
  return out;
}

const Json& member(const Json& j, const std::string& key,
                   const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError("missing field \"" + field(where, key) + "\"");
  }
  return j.at(key);
}

void dump_to(std::ostringstream& os, const Json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent >= 0) os << '\n' << std::string(std::size_t(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << Json(it.key()).dump() << (indent >= 0 ? ": " : ":");
        dump_to(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Rows of numbers stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(),
                                    [](const Json& x) { return x.is_primitive(); });
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << (flat && indent >= 0 ? ", " : ",");
        if (!flat) newline(depth + 1);
        dump_to(os, j[i], indent, depth + 1);
      }
      if (!flat) newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      char buf[32];
      const double x = j.get<double>();
      std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no -0
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

bool looks_inline(const std::string& s) {
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

}  // namespace

Input parse_input(const Json& j, const std::string& where) {
  if (!j.is_object()) {
    throw ParseError((where.empty() ? std::string("input") : where) +
                     ": expected an object with field \"msc\"");
  }
  Input in;
  const std::string name = field(where, "msc");
  in.msc = Msc(matrix_from<2, 4>(member(j, "msc", where), name));
  if (j.contains("tolerance")) {
    const auto& t = j.at("tolerance");
    if (!t.is_number() || !(t.get<double>() > 0)) {
      throw ParseError("field \"" + field(where, "tolerance") +
                       "\": expected a positive number");
    }
    in.tolerance = t.get<double>();
  }
  return in;
}

std::vector<Input> parse_inputs(const Json& j) {
  std::vector<Input> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      out.push_back(parse_input(j[i], "[" + std::to_string(i) + "]"));
  } else {
    out.push_back(parse_input(j));
  }
  return out;
}

Json load_json(const std::string& source) {
  std::string text;
  if (looks_inline(source)) {
    text = source;
  } else if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(source);
    if (!f) throw ParseError("cannot read input file " + source);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  dump_to(os, j, indent, 0);
  return os.str();
}

Json to_json(const Msc& m) { return rows_json(m.matrix()); }
Json to_json(const Mat2& m) { return rows_json(m); }

Json to_json(const CanonicalForm& c) {
  return {{"label", to_string(c.label)},
          {"params", c.params},
          {"witness", to_json(c.witness.matrix())}};
}

Json to_json(const EvolutionClass& c) {
  return {{"label", to_string(c.label)},
          {"params", c.params},
          {"witness", to_json(c.witness.matrix())}};
}

Json to_json(const LinearFamily& f) {
  Json gens = Json::array();
  for (const auto& g : f.generators) gens.push_back(to_json(g));
  Json j = {{"kind", to_string(f.kind)},
            {"parameters", f.parameters},
            {"generators", gens},
            {"constraints", f.constraint_text()}};
  if (f.kind != FamilyKind::kFiniteSet) j["base"] = to_json(f.base);
  if (f.kind == FamilyKind::kGroupFamily) j["exponents"] = f.exponents;
  return j;
}

Report make_report(const Msc& a, const Tolerances& tol) {
  Report r;
  r.input = a;
  r.subset = to_int(subset_of(a, tol));
  r.canonical = canonicalize(a, tol);
  r.division = division_data(a);
  r.evolution = evolution_class(a, tol);
  r.flags.commutative = is_commutative(a, tol);
  r.flags.jordan = is_commutative_jordan(a, tol);
  r.flags.division = is_division(r.division);
  r.flags.evolution = r.evolution.has_value();
  r.derivation_dim = int(derivations(a, tol).generators.size());
  const auto m = boundary_margins(a);
  r.margins = {m.det_p, {m.tr1_norm, m.tr2_norm}};
  r.commutative_label = commutative_label(r.canonical, tol);
  if (auto j = jordan_label(r.canonical, tol)) r.jordan_label = j->name;
  return r;
}

Json to_json(const Report& r) {
  Json j;
  j["input"] = to_json(r.input);
  j["subset"] = r.subset;
  j["canonical"] = to_json(r.canonical);
  j["flags"] = {{"commutative", r.flags.commutative},
                {"jordan", r.flags.jordan},
                {"division", r.flags.division},
                {"evolution", r.flags.evolution}};
  j["division"] = {{"delta_l", r.division.delta_l},
                   {"delta_m", r.division.delta_m},
                   {"delta_r", r.division.delta_r},
                   {"discriminant", r.division.discriminant}};
  if (r.evolution) j["evolution"] = to_json(*r.evolution);
  j["derivation_dim"] = r.derivation_dim;
  j["margins"] = {{"det_P", r.margins.det_p},
                  {"trace_norms", r.margins.trace_norms}};
  if (r.commutative_label) {
    j["commutative_label"] = {{"label", to_string(r.commutative_label->family)},
                              {"params", r.commutative_label->params}};
  }
  if (r.jordan_label) j["jordan_label"] = *r.jordan_label;
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  r.input = Msc(matrix_from<2, 4>(member(j, "input", ""), "input"));
  r.subset = member(j, "subset", "").get<int>();

  const Json& c = member(j, "canonical", "");
  const auto label = family_from_string(member(c, "label", "canonical").get<std::string>());
  if (!label) throw ParseError("field \"canonical.label\": unknown family");
  r.canonical.label = *label;
  r.canonical.params = doubles_from(member(c, "params", "canonical"), "canonical.params");
  r.canonical.witness = Gl2(
      matrix_from<2, 2>(member(c, "witness", "canonical"), "canonical.witness"), 0.0);

  const Json& f = member(j, "flags", "");
  r.flags = {member(f, "commutative", "flags").get<bool>(),
             member(f, "jordan", "flags").get<bool>(),
             member(f, "division", "flags").get<bool>(),
             member(f, "evolution", "flags").get<bool>()};

  const Json& d = member(j, "division", "");
  r.division = {member(d, "delta_l", "division").get<double>(),
                member(d, "delta_m", "division").get<double>(),
                member(d, "delta_r", "division").get<double>(),
                member(d, "discriminant", "division").get<double>()};

  if (j.contains("evolution")) {
    const Json& e = j.at("evolution");
    const auto el = evolution_family_from_string(
        member(e, "label", "evolution").get<std::string>());
    if (!el) throw ParseError("field \"evolution.label\": unknown family");
    r.evolution = EvolutionClass{
        *el, doubles_from(member(e, "params", "evolution"), "evolution.params"),
        Gl2(matrix_from<2, 2>(member(e, "witness", "evolution"),
                              "evolution.witness"),
            0.0)};
  }
  r.derivation_dim = member(j, "derivation_dim", "").get<int>();
  const Json& m = member(j, "margins", "");
  r.margins = {member(m, "det_P", "margins").get<double>(),
               doubles_from(member(m, "trace_norms", "margins"), "margins.trace_norms")};
  if (j.contains("commutative_label")) {
    const Json& cl = j.at("commutative_label");
    const std::string name = member(cl, "label", "commutative_label").get<std::string>();
    std::optional<CommutativeFamily> fam;
    for (int k = 1; k <= 9; ++k)
      if (to_string(CommutativeFamily(k)) == name) fam = CommutativeFamily(k);
    if (!fam) throw ParseError("field \"commutative_label.label\": unknown label");
    r.commutative_label = CommutativeLabel{
        *fam, doubles_from(member(cl, "params", "commutative_label"),
                           "commutative_label.params")};
  }
  if (j.contains("jordan_label")) r.jordan_label = j.at("jordan_label").get<std::string>();
  return r;
}

bool operator==(const Report& a, const Report& b) {
  auto same_evo = [](const std::optional<EvolutionClass>& x,
                     const std::optional<EvolutionClass>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->label == y->label && x->params == y->params &&
                  x->witness.matrix() == y->witness.matrix());
  };
  auto same_comm = [](const std::optional<CommutativeLabel>& x,
                      const std::optional<CommutativeLabel>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || (x->family == y->family && x->params == y->params);
  };
  return a.input == b.input && a.subset == b.subset &&
         a.canonical.label == b.canonical.label &&
         a.canonical.params == b.canonical.params &&
         a.canonical.witness.matrix() == b.canonical.witness.matrix() &&
         a.flags.commutative == b.flags.commutative &&
         a.flags.jordan == b.flags.jordan &&
         a.flags.division == b.flags.division &&
         a.flags.evolution == b.flags.evolution &&
         a.division.delta_l == b.division.delta_l &&
         a.division.delta_m == b.division.delta_m &&
         a.division.delta_r == b.division.delta_r &&
         a.division.discriminant == b.division.discriminant &&
         same_evo(a.evolution, b.evolution) &&
         a.derivation_dim == b.derivation_dim &&
         a.margins.det_p == b.margins.det_p &&
         a.margins.trace_norms == b.margins.trace_norms &&
         same_comm(a.commutative_label, b.commutative_label) &&
         a.jordan_label == b.jordan_label;
}

namespace {

struct Settings {
  std::string input;
  std::optional<double> tolerance;
  std::uint64_t seed = 42;
  std::size_t budget = 200;
  std::size_t count = 100;
  bool pretty = false;
};

class Failure : public std::runtime_error {
 public:
  Failure(int code, const std::string& what)
      : std::runtime_error(what), code(code) {}
  int code;
};

Tolerances tolerances_for(const Input& in, const Settings& s) {
  Tolerances tol;
  if (const char* env = std::getenv("ALG2D_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || !(v > 0)) {
      throw ParseError("ALG2D_TOLERANCE: expected a positive number");
    }
    tol.zero = v;
  }
  if (s.tolerance) tol.zero = *s.tolerance;
  if (in.tolerance) tol.zero = *in.tolerance;
  return tol;
}

// Runs `fn` on every input. Single inputs give a single JSON value, arrays
// give an array in input order; a failing entry becomes {"error": ...} and
// the first failure decides the exit code.
template <typename Fn>
int each_input(const Settings& s, std::ostream& out, std::ostream& err, Fn fn) {
  const Json doc = load_json(s.input);
  const auto inputs = parse_inputs(doc);
  Json results = Json::array();
  int code = kOk;
  for (const auto& in : inputs) {
    const Tolerances tol = tolerances_for(in, s);
    try {
      if (in.msc.is_trivial()) throw TrivialAlgebraError();
      results.push_back(fn(in.msc, tol));
    } catch (const Failure& f) {
      err << "error: " << f.what() << '\n';
      results.push_back({{"error", f.what()}});
      if (code == kOk) code = f.code;
    } catch (const TrivialAlgebraError& e) {
      err << "error: " << e.what() << '\n';
      results.push_back({{"error", e.what()}});
      if (code == kOk) code = kTrivialAlgebra;
    }
  }
  out << dump(doc.is_array() ? results : results[0], s.pretty ? 2 : -1) << '\n';
  return code;
}

Json classify_json(const Msc& a, const Tolerances& tol) {
  return to_json(make_report(a, tol));
}

Json evolution_json(const Msc& a, const Tolerances& tol) {
  const auto g = find_natural_basis(a, tol);
  Json j = {{"evolution", g.has_value()}};
  if (g) {
    EvolutionClass cls =
        classify_evolution(EvolutionMsc::corners(act(*g, a)), tol);
    cls.witness = cls.witness * *g;
    j["natural_basis"] = to_json(g->inverse().matrix());
    j["class"] = to_json(cls);
  }
  return j;
}

Json aut_json(const Msc& a, const Tolerances& tol) {
  const auto cls = evolution_class(a, tol);
  if (!cls) {
    throw Failure(kUndefinedTable,
                  "automorphism table undefined; use oracle search");
  }
  return {{"class", to_json(*cls)},
          {"automorphisms", to_json(automorphism_family(*cls, tol))},
          // Aut(input) = conjugation^-1 F conjugation
          {"conjugation", to_json(cls->witness.matrix())}};
}

Json der_json(const Msc& a, const Tolerances& tol) {
  const LinearFamily d = derivations(a, tol);
  Json basis = Json::array();
  for (const auto& g : d.generators) basis.push_back(to_json(g));
  return {{"dimension", d.generators.size()}, {"basis", basis}};
}

int cmd_iso(const std::vector<std::string>& sources, const Settings& s,
            std::ostream& out, std::ostream& err) {
  const Input a = parse_input(load_json(sources.at(0)), "a");
  const Input b = parse_input(load_json(sources.at(1)), "b");
  if (a.msc.is_trivial() || b.msc.is_trivial()) {
    err << "error: trivial algebra\n";
    return kTrivialAlgebra;
  }
  Tolerances tol = tolerances_for(a, s);
  if (b.tolerance) tol.zero = std::max(tol.zero, *b.tolerance);
  const CanonicalForm ca = canonicalize(a.msc, tol);
  const CanonicalForm cb = canonicalize(b.msc, tol);
  const bool iso = same_class(ca, cb, tol.match);
  Json j = {{"isomorphic", iso},
            {"canonical_a", to_json(ca)},
            {"canonical_b", to_json(cb)},
            {"witness", nullptr}};
  if (iso) {
    // act(wb^-1 wa, a) = b
    const Gl2 g = cb.witness.inverse() * ca.witness;
    j["classifier_witness"] = {{"g", to_json(g.matrix())},
                               {"residual", iso_residual(g, a.msc, b.msc)}};
    SearchOptions opt;
    opt.seed = s.seed;
    if (auto w = brute_iso_search(a.msc, b.msc, s.budget, opt)) {
      j["witness"] = {{"g", to_json(w->g.matrix())}, {"residual", w->residual}};
    }
  }
  out << dump(j, s.pretty ? 2 : -1) << '\n';
  return kOk;
}

int cmd_orbit_test(const Settings& s, std::ostream& out, std::ostream& err) {
  return each_input(s, out, err, [&](const Msc& a, const Tolerances& tol) {
    OrbitSampler sampler;
    sampler.seed = s.seed;
    sampler.count = s.count;
    const OrbitTestResult r = orbit_test(a, sampler, tol);
    Json j = {{"pass", r.pass()},
              {"samples", r.samples},
              {"failures", r.failures},
              {"expected",
               {{"label", to_string(r.expected.label)},
                {"params", r.expected.params}}}};
    if (r.first_failure) j["first_failure"] = *r.first_failure;
    if (!r.pass()) {
      throw Failure(kOrbitTestFailed, "orbit test failed: " + dump(j));
    }
    return j;
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Classify two-dimensional real algebras given by structure "
               "constants."};
  app.name("alg2d");
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  bool compact = false;
  app.add_option("--tolerance", s.tolerance,
                 "relative zero-test tolerance (default 1e-9, or ALG2D_TOLERANCE)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", s.seed, "random seed for oracle commands")
      ->capture_default_str();
  app.add_option("--budget", s.budget, "restarts for the isomorphism search")
      ->capture_default_str();
  app.add_flag("--pretty", s.pretty, "indented JSON output");
  app.add_flag("--json", compact, "single-line JSON output (default)");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("-i,--input,input", s.input,
                    "JSON file, '-' for stdin, or inline JSON")
        ->required();
  };
  auto* classify = app.add_subcommand("classify", "canonical form and properties");
  add_input(classify);
  auto* evolution = app.add_subcommand("evolution", "natural basis and E-class");
  add_input(evolution);
  auto* aut = app.add_subcommand("aut", "automorphism group of an evolution algebra");
  add_input(aut);
  auto* der = app.add_subcommand("der", "derivation algebra");
  add_input(der);
  auto* orbit = app.add_subcommand("orbit-test", "canonical form along a random orbit");
  add_input(orbit);
  orbit->add_option("--count", s.count, "orbit samples")->capture_default_str();
  std::vector<std::string> iso_inputs;
  auto* iso = app.add_subcommand("iso", "isomorphism test for two algebras");
  iso->add_option("inputs", iso_inputs, "two inputs (files or inline JSON)")
      ->expected(2)
      ->required();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  if (compact) s.pretty = false;

  try {
    if (*classify) return each_input(s, out, err, classify_json);
    if (*evolution) return each_input(s, out, err, evolution_json);
    if (*aut) return each_input(s, out, err, aut_json);
    if (*der) {
      // Derivations are defined for the zero algebra too.
      const Json doc = load_json(s.input);
      const auto inputs = parse_inputs(doc);
      Json results = Json::array();
      for (const auto& in : inputs)
        results.push_back(der_json(in.msc, tolerances_for(in, s)));
      out << dump(doc.is_array() ? results : results[0], s.pretty ? 2 : -1)
          << '\n';
      return kOk;
    }
    if (*orbit) return cmd_orbit_test(s, out, err);
    if (*iso) return cmd_iso(iso_inputs, s, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kParseError;
}

}  // namespace alg2d::cli
