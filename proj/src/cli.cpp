#include "cartier/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "cartier/serialize.hpp"

namespace cartier::cli {

namespace {

struct Options {
  std::uint32_t p = 2;
  std::uint32_t d = 1;
  std::uint32_t e = 1;
  std::string modulus;
  std::string vars = "x";
  std::string f = "1";
  std::optional<std::string> ideal;
  std::string expr;
  std::vector<std::string> modules;
  std::optional<std::uint64_t> cap;
  unsigned jobs = 1;
  bool json = false;
  bool crystal = false;
  std::string input;
  std::string corpus;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& ex) {
    throw UsageError("malformed JSON in " + what + ": " + ex.what());
  }
}

std::vector<std::string> split_list(std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return c == '[' || c == ']' || c == ' '; }),
             text.end());
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Values from --input override the flags; each conflict is reported.
void merge_input(Options& o, const CLI::App& sub, std::ostream& err) {
  const Json j = parse_json(read_file(o.input), o.input);
  if (!j.is_object()) throw UsageError("input file must hold a JSON object");
  auto take = [&](const char* key, auto& slot, auto convert) {
    if (!j.contains(key)) return;
    auto value = convert(j.at(key));
    if (sub.count(std::string("--") + key) > 0) {
      err << "warning: --" << key << " overridden by " << o.input << "\n";
    }
    slot = std::move(value);
  };
  auto as_string = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto as_list = [&](const Json& v) {
    if (!v.is_array()) return as_string(v);
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + as_string(x);
    return s;
  };
  take("p", o.p, [](const Json& v) { return v.get<std::uint32_t>(); });
  take("d", o.d, [](const Json& v) { return v.get<std::uint32_t>(); });
  take("e", o.e, [](const Json& v) { return v.get<std::uint32_t>(); });
  take("modulus", o.modulus, as_list);
  take("vars", o.vars, as_list);
  take("f", o.f, as_string);
  take("expr", o.expr, as_string);
  take("ideal", o.ideal, [&](const Json& v) { return std::optional<std::string>(as_list(v)); });
  take("cap", o.cap, [](const Json& v) { return std::optional<std::uint64_t>(v.get<std::uint64_t>()); });
  take("jobs", o.jobs, [](const Json& v) { return v.get<unsigned>(); });
  take("module", o.modules, [](const Json& v) {
    std::vector<std::string> out;
    if (v.is_array()) {
      for (const auto& m : v) out.push_back(m.is_string() ? m.get<std::string>() : m.dump());
    } else {
      out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    return out;
  });
}

FieldPtr field_from(const Options& o, std::uint32_t e) {
  FieldSpec spec = default_field_spec(o.p, o.d, e);
  if (!o.modulus.empty()) {
    spec.modulus.clear();
    for (const auto& c : split_list(o.modulus)) {
      try {
        spec.modulus.push_back(static_cast<std::uint32_t>(std::stoul(c)));
      } catch (const std::exception&) {
        throw UsageError("bad modulus coefficient '" + c + "'");
      }
    }
  }
  return GaloisField::create(spec);
}

RingPtr ring_from(const Options& o) { return PolynomialRing::create(field_from(o, 1), split_list(o.vars)); }

CartierOperator operator_from(const Options& o) {
  const RingPtr ring = ring_from(o);
  return CartierOperator(parse_polynomial(ring, o.f), o.e);
}

std::vector<SemilinearModule> modules_from(const Options& o) {
  std::vector<SemilinearModule> out;
  const FieldPtr fallback = field_from(o, o.e);
  for (const auto& m : o.modules) {
    const bool inline_json = m.find_first_not_of(" \t\n") != std::string::npos && m[m.find_first_not_of(" \t\n")] == '{';
    const Json j = inline_json ? parse_json(m, "--module") : parse_json(read_file(m), m);
    out.push_back(module_from_json(j, fallback));
  }
  return out;
}

std::string element_text(const GaloisField& f, Elem a) {
  return f.d() == 1 ? std::to_string(a) : f.to_string(a);
}

std::string vector_text(const GaloisField& f, const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + element_text(f, v[i]);
  return s + ")";
}

std::string matrix_text(const Matrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) s += (r ? ", " : "") + vector_text(*m.field(), m.row_vector(r));
  return s + "]";
}

std::string subspace_text(const Subspace& s) {
  std::string out = "span{";
  const auto basis = s.basis_vectors();
  for (std::size_t i = 0; i < basis.size(); ++i) out += (i ? ", " : "") + vector_text(*s.field(), basis[i]);
  return out + "}";
}

std::string nilord_text(const Nilord& n) { return n ? std::to_string(*n) : "none"; }
Json nilord_json(const Nilord& n) { return n ? Json(*n) : Json(nullptr); }

std::string ideal_text(const Ideal& i) {
  auto gens = i.to_strings();
  std::sort(gens.begin(), gens.end());
  if (gens.empty()) return "(0)";
  std::string s = "(";
  for (std::size_t k = 0; k < gens.size(); ++k) s += (k ? ", " : "") + gens[k];
  return s + ")";
}

struct Report {
  Json json;
  std::string text;
};

using Handler = std::function<Report(const Options&)>;

const SemilinearModule& one_module(const std::vector<SemilinearModule>& ms) {
  if (ms.size() != 1) throw UsageError("expected exactly one --module");
  return ms.front();
}

Report field_info(const Options& o) {
  const FieldPtr f = field_from(o, o.e);
  Json twist = Json::array();
  for (auto a : f->twist_subfield_elements()) twist.push_back(element_to_json(*f, a));
  std::ostringstream text;
  text << "field: GF(" << f->size() << ")\np: " << f->p() << "\nd: " << f->d() << "\ne: " << f->e()
       << "\nq: " << f->q() << "\nmodulus: " << to_json(f->spec())["modulus"].dump()
       << "\ngenerator: " << f->to_string(f->generator()) << "\n";
  return {{{"field", to_json(f->spec())},
           {"size", f->size()},
           {"q", f->q()},
           {"generator", element_to_json(*f, f->generator())},
           {"twist_subfield", twist}},
          text.str()};
}

Report semilinear_analyze(const Options& o) {
  const auto ms = modules_from(o);
  const auto& m = one_module(ms);
  const auto dec = decompose(m);
  const auto [stable, steps] = stable_image_chain(m);
  const auto fix = fixed_points(m);
  const auto minimal = minimal_rep(m);
  Json fix_json = Json::array();
  for (const auto& v : fix) fix_json.push_back(vector_to_json(*m.field(), v));
  std::ostringstream text;
  text << "dim: " << m.dim() << "\nnilord: " << nilord_text(dec.nilord)
       << "\nnilpotent_part: " << subspace_text(dec.nilpotent) << "\nstable_image: " << subspace_text(dec.stable)
       << "\nstable_iterations: " << steps << "\nfixed_points_dim: " << fix.size() << "\nfixed_points:";
  for (const auto& v : fix) text << " " << vector_text(*m.field(), v);
  text << "\nminimal_dim: " << minimal.dim() << "\n";
  return {{{"dim", m.dim()},
           {"nilord", nilord_json(dec.nilord)},
           {"nilpotent", dec.nilord.has_value()},
           {"nilpotent_part", to_json(dec.nilpotent)},
           {"stable_image", to_json(dec.stable)},
           {"stable_iterations", steps},
           {"fixed_points", fix_json},
           {"fixed_points_dim", fix.size()},
           {"minimal_dim", minimal.dim()}},
          text.str()};
}

Report semilinear_hom(const Options& o) {
  const auto ms = modules_from(o);
  if (ms.size() != 2) throw UsageError("semilinear-hom needs two --module arguments (source, target)");
  const HomSpace h = o.crystal ? hom_crys(ms[0], ms[1]) : hom_space(ms[0], ms[1]);
  std::ostringstream text;
  text << "dim: " << h.basis.size() << "\nq: " << h.q << "\ncardinality: " << h.cardinality() << "\n";
  for (const auto& b : h.basis) text << "basis: " << matrix_text(b) << "\n";
  return {to_json(h), text.str()};
}

Report semilinear_lattice(const Options& o) {
  const auto ms = modules_from(o);
  const auto& m = one_module(ms);
  const auto entries = enumerate_submodules(m, o.cap.value_or(kDefaultSubspaceCap), o.jobs);
  Json list = Json::array();
  std::size_t fixed = 0;
  std::ostringstream body;
  for (const auto& entry : entries) {
    fixed += entry.surjective;
    list.push_back({{"space", to_json(entry.space)}, {"surjective", entry.surjective}});
    body << subspace_text(entry.space) << (entry.surjective ? " C(N)=N" : " C(N)<N") << "\n";
  }
  const bool anti = fixed == entries.size();
  std::ostringstream text;
  text << "submodules: " << entries.size() << "\nfixed: " << fixed << "\nanti_nilpotent: " << std::boolalpha << anti
       << "\n"
       << body.str();
  return {{{"submodules", list}, {"count", entries.size()}, {"fixed_count", fixed}, {"anti_nilpotent", anti}},
          text.str()};
}

Report crystal_minimal(const Options& o) {
  const auto ms = modules_from(o);
  const auto& m = one_module(ms);
  const auto minimal = minimal_rep(m);
  const auto series = nil_series(m, o.cap.value_or(kDefaultSubspaceCap));
  Json series_json = Json::array();
  std::ostringstream text;
  text << "minimal_dim: " << minimal.dim() << "\nminimal_matrix: " << matrix_text(minimal.matrix())
       << "\nnil_series:\n";
  for (const auto& s : series) {
    series_json.push_back(to_json(s));
    text << "  " << subspace_text(s) << "\n";
  }
  return {{{"minimal_rep", to_json(minimal)}, {"nil_series", series_json}}, text.str()};
}

Report crystal_quasilength(const Options& o) {
  const auto ms = modules_from(o);
  const auto report = jordan_holder(one_module(ms), o.cap.value_or(kDefaultSubspaceCap));
  std::ostringstream text;
  text << "quasi_length: " << report.quasi_length << "\nlattice_size: " << report.lattice.size()
       << "\nfactor_dims:";
  for (auto d : report.factor_dims) text << " " << d;
  text << "\nedges:";
  auto edges = report.cover_edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) text << " " << a << "-" << b;
  text << "\n";
  for (std::size_t i = 0; i < report.lattice.size(); ++i) text << i << ": " << subspace_text(report.lattice[i]) << "\n";
  return {to_json(report), text.str()};
}

Report poly_cartier(const Options& o) {
  const auto op = operator_from(o);
  if (o.expr.empty()) throw UsageError("poly-cartier needs --expr");
  const auto result = op(parse_polynomial(op.ring(), o.expr)).to_string();
  return {{{"result", result}}, result + "\n"};
}

Ideal ideal_from(const Options& o, const RingPtr& ring, const char* fallback) {
  return Ideal::parse(ring, o.ideal.value_or(fallback));
}

Report poly_image(const Options& o) {
  const auto op = operator_from(o);
  const auto image = image_ideal(op, ideal_from(o, op.ring(), "1"));
  return {{{"image", to_json(image)}}, ideal_text(image) + "\n"};
}

Report poly_stable_image(const Options& o) {
  const auto op = operator_from(o);
  const auto s = stable_image(op, ideal_from(o, op.ring(), "1"), o.cap.value_or(kDefaultIterationCap));
  return {{{"ideal", to_json(s.ideal)}, {"iterations", s.iterations}},
          ideal_text(s.ideal) + "\niterations: " + std::to_string(s.iterations) + "\n"};
}

Report poly_smallest(const Options& o) {
  const auto op = operator_from(o);
  const auto s = smallest_submodule_containing(op, ideal_from(o, op.ring(), "0"), o.cap.value_or(kDefaultIterationCap));
  return {{{"ideal", to_json(s)}}, ideal_text(s) + "\n"};
}

Report poly_compatible(const Options& o) {
  const auto op = operator_from(o);
  const auto i = ideal_from(o, op.ring(), "0");
  const bool compatible = is_compatible(op, i);
  const bool fixed = is_fixed(op, i);
  std::ostringstream text;
  text << std::boolalpha << "compatible: " << compatible << "\nfixed: " << fixed << "\n";
  return {{{"compatible", compatible}, {"fixed", fixed}}, text.str()};
}

Report poly_enum_compatible(const Options& o) {
  const auto op = operator_from(o);
  const auto ideals = enumerate_compatible_monomial(op, o.cap.value_or(100000));
  Json list = Json::array();
  std::string text;
  for (const auto& i : ideals) {
    list.push_back(to_json(i));
    text += ideal_text(i) + "\n";
  }
  return {{{"count", ideals.size()}, {"ideals", list}}, text};
}

Report poly_split(const Options& o) {
  const auto op = operator_from(o);
  const auto h = find_splitting(op);
  std::string text = std::string("split: ") + (h ? "true" : "false") + "\n";
  if (h) text += "witness: " + h->to_string() + "\n";
  return {{{"split", h.has_value()}, {"witness", h ? Json(h->to_string()) : Json(nullptr)}}, text};
}

Report poly_supp(const Options& o) {
  const auto op = operator_from(o);
  const IdealModule m(op, ideal_from(o, op.ring(), "0"));
  const auto cap = o.cap.value_or(kDefaultIterationCap);
  const auto nil = quotient_nilpotence(m, cap);
  const auto supp = supp_crys(m, cap);
  std::ostringstream text;
  text << "nilord: " << nilord_text(nil.order) << "\nstable: " << ideal_text(nil.stable)
       << "\nann: " << ideal_text(supp.ann) << "\niterations: " << nil.iterations << "\n";
  return {{{"nilpotent", nil.nilpotent()},
           {"nilord", nilord_json(nil.order)},
           {"stable", to_json(nil.stable)},
           {"ann", to_json(supp.ann)},
           {"iterations", nil.iterations}},
          text.str()};
}

int corpus_run(const Options& o, std::ostream& out, std::ostream& err) {
  const Json cases = parse_json(read_file(o.corpus), o.corpus);
  if (!cases.is_array()) throw UsageError("corpus must be a JSON array of cases");
  std::size_t passed = 0;
  for (const auto& c : cases) {
    const auto name = c.value("name", std::string("<unnamed>"));
    const auto args = c.at("args").get<std::vector<std::string>>();
    std::ostringstream case_out, case_err;
    const int code = run(args, case_out, case_err);
    std::string why;
    if (code != c.value("exit", 0)) {
      why = "exit " + std::to_string(code);
    } else if (c.contains("stdout") && case_out.str() != c.at("stdout").get<std::string>()) {
      why = "stdout differs: " + case_out.str();
    } else if (c.contains("json")) {
      const Json got = Json::parse(case_out.str(), nullptr, false);
      if (got.is_discarded() || got != c.at("json")) why = "json differs: " + case_out.str();
    }
    if (why.empty()) {
      ++passed;
      out << "PASS " << name << "\n";
    } else {
      while (!why.empty() && why.back() == '\n') why.pop_back();
      out << "FAIL " << name << ": " << why << "\n";
      err << case_err.str();
    }
  }
  out << passed << "/" << cases.size() << " cases passed\n";
  return passed == cases.size() ? 0 : 1;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "field characteristic");
  sub->add_option("--d", o.d, "field degree over F_p");
  sub->add_option("--modulus", o.modulus, "modulus coefficients, low degree first (e.g. 1,1,1)");
  sub->add_option("--e", o.e, "twist exponent (semilinear) or operator level (poly)");
  sub->add_option("--vars", o.vars, "comma-separated ring variables");
  sub->add_option("--f", o.f, "operator multiplier f");
  sub->add_option("--ideal", o.ideal, "comma-separated ideal generators");
  sub->add_option("--expr", o.expr, "polynomial to evaluate");
  sub->add_option("--module", o.modules, "module JSON file or inline JSON object (repeatable)");
  sub->add_option("--cap", o.cap, "enumeration or iteration cap");
  sub->add_option("--jobs", o.jobs, "worker threads for enumeration");
  sub->add_flag("--json", o.json, "canonical JSON output");
  sub->add_option("--input", o.input, "JSON file with option values; overrides flags");
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::resource: return 3;
    case ErrorKind::invariant: return 4;
    default: return 2;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Cartier modules over finite fields and polynomial rings", "cartier");
  app.require_subcommand(1);

  const std::map<std::string, std::pair<std::string, Handler>> commands = {
      {"field-info", {"describe GF(p^d)", field_info}},
      {"semilinear-analyze", {"nilpotent part, stable image, fixed points", semilinear_analyze}},
      {"semilinear-hom", {"Hom space between two modules", semilinear_hom}},
      {"semilinear-lattice", {"all C-stable subspaces", semilinear_lattice}},
      {"crystal-minimal", {"minimal representative and nil series", crystal_minimal}},
      {"crystal-quasilength", {"quasi-length and submodule lattice", crystal_quasilength}},
      {"poly-cartier", {"apply the operator to --expr", poly_cartier}},
      {"poly-image", {"image ideal of --ideal", poly_image}},
      {"poly-stable-image", {"stable image of --ideal (default R)", poly_stable_image}},
      {"poly-smallest", {"smallest compatible ideal containing --ideal", poly_smallest}},
      {"poly-compatible", {"test compatibility of --ideal", poly_compatible}},
      {"poly-enum-compatible", {"compatible squarefree monomial ideals", poly_enum_compatible}},
      {"poly-split", {"Frobenius splitting test with witness", poly_split}},
      {"poly-supp", {"nilpotence and support of R/--ideal", poly_supp}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    subs[name] = app.add_subcommand(name, entry.first);
    add_common(subs[name], o);
  }
  subs["semilinear-hom"]->add_flag("--crystal", o.crystal, "Hom between minimal representatives");
  auto* corpus = app.add_subcommand("corpus-run", "run a JSON corpus of CLI cases");
  corpus->add_option("file", o.corpus, "corpus file")->required();

  if (!args.empty() && !args.front().starts_with("-") && !commands.contains(args.front()) &&
      args.front() != "corpus-run") {
    out << Json{{"error", {{"kind", "usage"}, {"detail", "unknown subcommand '" + args.front() + "'"}}}}.dump() << "\n";
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    out << Json{{"error", {{"kind", "usage"}, {"detail", ex.what()}}}}.dump() << "\n";
    return 2;
  }

  try {
    if (corpus->parsed()) return corpus_run(o, out, err);
    for (const auto& [name, entry] : commands) {
      if (!subs[name]->parsed()) continue;
      if (!o.input.empty()) merge_input(o, *subs[name], err);
      const Report r = entry.second(o);
      if (o.json) {
        out << r.json.dump() << "\n";
      } else {
        out << r.text;
      }
      return 0;
    }
    throw UsageError("no subcommand");
  } catch (const Error& ex) {
    out << Json{{"error", {{"kind", to_string(ex.kind())}, {"detail", ex.what()}}}}.dump() << "\n";
    return exit_code(ex.kind());
  } catch (const Json::exception& ex) {
    out << Json{{"error", {{"kind", "usage"}, {"detail", ex.what()}}}}.dump() << "\n";
    return 2;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace cartier::cli
