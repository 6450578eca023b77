#include "k3cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <cctype>
#include <map>
#include <set>

#include <CLI11.hpp>

namespace k3::cli {

namespace {

using ellsurf::WeierstrassModel;

Int parse_int(const std::string& s) {
  Int n;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty() || n.set_str(t, 10) != 0) throw UsageError("not an integer: '" + s + "'");
  return n;
}

bqf::Form form_from(const std::vector<std::string>& v, std::size_t at = 0) {
  return bqf::make_form(parse_int(v.at(at)), parse_int(v.at(at + 1)), parse_int(v.at(at + 2)));
}

Poly poly_from_text(const std::string& text, long m) {
  RationalFunction f = parse_rational_function(text, m);
  if (!f.is_polynomial()) throw UsageError("expected a polynomial, got '" + text + "'");
  return exact_div(f.num(), f.den());
}

struct ModelOpts {
  std::string file;
  std::string a1 = "0", a2 = "0", a3 = "0", a4 = "0", a6 = "0";
  long m = 1;

  void attach(CLI::App* sub) {
    sub->add_option("model,--model", file, "model JSON as written by --emit-model");
    sub->add_option("--a1", a1);
    sub->add_option("--a2", a2);
    sub->add_option("--a3", a3);
    sub->add_option("--a4", a4);
    sub->add_option("--a6", a6);
    sub->add_option("--field", m, "squarefree m for K = Q(sqrt m)");
  }

  WeierstrassModel build() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw DomainError("cannot read model file " + file);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw UsageError(std::string("malformed model JSON: ") + e.what());
      }
      return model_from_json(j.contains("model") ? j["model"] : j);
    }
    check_field(m);
    return WeierstrassModel(m, poly_from_text(a1, m), poly_from_text(a2, m), poly_from_text(a3, m),
                            poly_from_text(a4, m), poly_from_text(a6, m));
  }
};

void collect_anchors(const json& j, std::set<std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "paper_anchor" && it.value().is_string()) out.insert(it.value().get<std::string>());
      collect_anchors(it.value(), out);
    }
  } else if (j.is_array()) {
    for (const auto& e : j) collect_anchors(e, out);
  }
}

json fqf_json(const lattice::FiniteQuadraticForm& f, bool values) {
  json gens = json::array();
  for (std::size_t i = 0; i < f.ngens(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < f.ngens(); ++k) row.push_back(to_string(f.gen_pairing(i, k)));
    gens.push_back(row);
  }
  json j{{"invariant_factors", json::array()}, {"order", int_json(f.order())}, {"generator_gram", gens}};
  for (const auto& d : f.invariant_factors()) j["invariant_factors"].push_back(int_json(d));
  if (values) {
    if (f.order() > 10000) throw DomainError("discriminant group too large to list values");
    std::map<std::string, long> counts;
    for (const auto& x : f.elements())
      if (!f.is_zero(x)) ++counts[to_string(f.q(x))];
    j["nonzero_values"] = counts;
  }
  return j;
}

// A lattice expression, or a JSON file holding the Gram matrix as integer rows.
lattice::EvenLattice lattice_arg(const std::string& arg) {
  std::ifstream in(arg);
  if (!in) return lattice::build_lattice(arg);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("malformed Gram JSON in " + arg + ": " + e.what());
  }
  std::vector<std::vector<Int>> rows;
  for (const auto& r : j) {
    std::vector<Int> row;
    for (const auto& x : r) row.push_back(x.is_string() ? parse_int(x.get<std::string>()) : Int(x.get<long>()));
    rows.push_back(row);
  }
  return lattice::make_lattice(lattice::Matrix::from_rows(rows));
}

using Handler = std::function<json()>;

}  // namespace

unsigned default_bits() {
  if (const char* s = std::getenv("K3TOOL_BITS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v >= 64) return static_cast<unsigned>(v);
  }
  return cm::kDefaultBits;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k3tool: singular K3 surfaces, Enriques quotients and their arithmetic", "k3tool"};
  app.fallthrough();
  app.require_subcommand(1);

  bool as_json = false;
  unsigned bits = default_bits();
  int threads = 1;
  app.add_flag("--json", as_json, "emit a JSON report");
  app.add_option("--bits", bits, "working precision in bits (env K3TOOL_BITS)")->check(CLI::Range(64u, 1u << 20));
  app.add_option("--threads", threads, "worker threads for discriminant scans")->check(CLI::Range(1, 256));

  Handler handler;
  std::function<std::string(const json&)> text = render_text;
  std::vector<std::string> pos;
  std::string command_name;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, int npos, Handler h) {
    CLI::App* sub = parent->add_subcommand(name, help);
    if (npos > 0) sub->add_option("args", pos)->expected(npos)->required();
    sub->callback([&, h, sub] {
      handler = h;
      command_name = sub->get_parent() == &app ? sub->get_name() : sub->get_parent()->get_name() + " " + sub->get_name();
    });
    return sub;
  };

  // bqf
  CLI::App* bqf_cmd = app.add_subcommand("bqf", "binary quadratic forms and class groups");
  bqf_cmd->require_subcommand(1);
  leaf(bqf_cmd, "reduce", "reduce a b c", 3, [&] {
    bqf::Reduction r = bqf::reduce(form_from(pos));
    json w = json::array();
    for (const auto& e : r.witness) w.push_back(int_json(e));
    return json{{"reduced", form_json(r.form)}, {"witness", w}, {"d", int_json(r.form.disc())}};
  });
  leaf(bqf_cmd, "classgroup", "class group of discriminant d", 1, [&] {
    bqf::ClassGroup cg = bqf::class_group(parse_int(pos[0]));
    json el = json::array(), st = json::array();
    for (const auto& f : cg.elements) el.push_back(form_json(f));
    for (const auto& s : cg.structure) st.push_back(int_json(s));
    return json{{"d", int_json(cg.d)},
                {"class_number", cg.class_number()},
                {"structure", st},
                {"elements", el},
                {"principal", form_json(cg.principal)}};
  });
  leaf(bqf_cmd, "aut", "automorphism group of a b c", 3, [&] {
    bqf::AutomorphismGroup g = bqf::automorphism_group(form_from(pos));
    json ms = json::array();
    for (const auto& m : g.matrices) {
      json row = json::array();
      for (const auto& e : m) row.push_back(int_json(e));
      ms.push_back(row);
    }
    return json{{"order", g.order}, {"name", g.name}, {"matrices", ms}};
  });
  leaf(bqf_cmd, "genus", "genus of a b c", 3, [&] {
    bqf::GenusInfo g = bqf::genus_info(form_from(pos));
    json mem = json::array();
    for (const auto& f : g.genus_members) mem.push_back(form_json(f));
    return json{{"genus_size", g.genus_size}, {"in_principal_genus", g.in_principal_genus}, {"members", mem}};
  });
  leaf(bqf_cmd, "compose", "compose a b c with a' b' c'", 6, [&] {
    bqf::Form f = bqf::compose(form_from(pos, 0), form_from(pos, 3));
    return json{{"composite", form_json(f)}, {"d", int_json(f.disc())}};
  });
  long scan_bound = 0;
  bool scan_two_torsion = false;
  CLI::App* scan = leaf(bqf_cmd, "scan", "scan discriminants up to a bound", 0, [&] {
    if (scan_bound < 3) throw UsageError("--bound must be at least 3");
    std::vector<long> ds;
    if (scan_two_torsion) {
      ds = bqf::two_torsion_scan(scan_bound, threads);
    } else {
      for (long d = -3; d >= -scan_bound; --d)
        if (bqf::valid_discriminant(Int(d)) && bqf::class_number(d) == 1) ds.push_back(d);
    }
    long even = 0;
    for (long d : ds) even += (d % 2 == 0);
    return json{{"bound", scan_bound},
                {"criterion", scan_two_torsion ? "two-torsion" : "class-number-one"},
                {"discriminants", ds},
                {"count", ds.size()},
                {"even_count", even}};
  });
  scan->add_option("--bound", scan_bound)->required();
  scan->add_flag("--two-torsion", scan_two_torsion, "class group of exponent <= 2 (default: class number one)");

  // lattice
  CLI::App* lat_cmd = app.add_subcommand("lattice", "even lattices and discriminant forms");
  lat_cmd->require_subcommand(1);
  bool list_values = false;
  CLI::App* df = leaf(lat_cmd, "discform", "discriminant form of a lattice expression", 1, [&] {
    lattice::EvenLattice l = lattice_arg(pos[0]);
    auto sig = lattice::signature(l);
    json smith = json::array();
    for (const auto& s : lattice::smith_invariants(l)) smith.push_back(int_json(s));
    return json{{"expression", pos[0]},
                {"rank", l.rank()},
                {"det", int_json(l.det())},
                {"signature", json::array({sig.first, sig.second})},
                {"smith", smith},
                {"discriminant_form", fqf_json(lattice::discriminant_form(l), list_values)}};
  });
  df->add_flag("--values", list_values, "histogram of q on nonzero elements");
  int iso_sign = 1;
  CLI::App* iso = leaf(lat_cmd, "iso", "isometry test of two discriminant forms", 2, [&] {
    auto f1 = lattice::discriminant_form(lattice_arg(pos[0]));
    auto f2 = lattice::discriminant_form(lattice_arg(pos[1]));
    auto r = lattice::disc_forms_isomorphic(f1, f2, iso_sign);
    return json{{"first", pos[0]}, {"second", pos[1]}, {"sign", iso_sign}, {"isomorphic", r.isomorphic}};
  });
  iso->add_option("--sign", iso_sign)->check(CLI::IsMember({-1, 1}));
  std::string ns_text, target_text, disc_text;
  CLI::App* tns = leaf(lat_cmd, "t-from-ns", "transcendental forms from NS or from a target discriminant form", 0, [&] {
    json fs = json::array();
    if (!target_text.empty()) {
      if (disc_text.empty() || !ns_text.empty()) throw UsageError("--target needs --disc and no NS lattice");
      Int d = parse_int(disc_text);
      for (const auto& f : lattice::rank2_forms_by_disc_form(d, lattice::discriminant_form(lattice_arg(target_text)), 1))
        fs.push_back(form_json(f));
      return json{{"target", target_text}, {"d", int_json(d)}, {"forms", fs}};
    }
    if (ns_text.empty()) throw UsageError("give an NS lattice or --disc with --target");
    lattice::EvenLattice ns = lattice_arg(ns_text);
    if (lattice::signature(ns) != std::pair<int, int>{1, static_cast<int>(ns.rank()) - 1})
      throw DomainError("expected a hyperbolic lattice");
    Int det = ns.det();
    Int d = det < 0 ? det : Int(-det);
    if (!disc_text.empty() && parse_int(disc_text) != d) throw DomainError("NS determinant does not match --disc");
    for (const auto& f : lattice::rank2_forms_by_disc_form(d, lattice::discriminant_form(ns), -1)) fs.push_back(form_json(f));
    return json{{"expression", ns_text}, {"d", int_json(d)}, {"forms", fs}};
  });
  tns->add_option("ns", ns_text, "NS lattice expression or Gram file");
  tns->add_option("--disc", disc_text, "discriminant of the transcendental form");
  tns->add_option("--target", target_text, "lattice (expression or Gram file) whose discriminant form is the target");

  // ellsurf
  CLI::App* es_cmd = app.add_subcommand("ellsurf", "elliptic surfaces over K(t)");
  es_cmd->require_subcommand(1);
  ModelOpts mo;
  std::string subst, gamma, sx, sy;
  mo.attach(leaf(es_cmd, "fibers", "singular fibre survey", 0, [&] {
    WeierstrassModel w = mo.build();
    return json{{"model", model_json(w)}, {"survey", survey_json(ellsurf::fiber_survey(w))}};
  }));
  CLI::App* bc = leaf(es_cmd, "basechange", "base change t = phi(s)", 0, [&] {
    WeierstrassModel w = mo.build();
    ellsurf::BaseChange b = ellsurf::base_change(w, parse_rational_function(subst, w.field()));
    return json{{"model", model_json(b.model)},
                {"scale", b.scale.str("s")},
                {"survey", survey_json(ellsurf::fiber_survey(b.model))}};
  });
  mo.attach(bc);
  bc->add_option("--subst", subst, "phi(s), e.g. -8*s^2/(s^2-1)")->required();
  CLI::App* tw = leaf(es_cmd, "twist", "quadratic twist by a polynomial", 0, [&] {
    WeierstrassModel w = mo.build();
    WeierstrassModel t = ellsurf::quadratic_twist(w, poly_from_text(gamma, w.field()));
    return json{{"model", model_json(t)}, {"survey", survey_json(ellsurf::fiber_survey(t))}};
  });
  mo.attach(tw);
  tw->add_option("--gamma", gamma)->required();
  CLI::App* ht = leaf(es_cmd, "height", "height of a section", 0, [&] {
    WeierstrassModel w = mo.build();
    auto a = ellsurf::analyze_section(w, parse_rational_function(sx, w.field()),
                                      parse_rational_function(sy, w.field()));
    return section_json(a);
  });
  mo.attach(ht);
  ht->add_option("--x", sx)->required();
  ht->add_option("--y", sy)->required();
  std::string st_fibers;
  int st_rank = 0;
  std::string st_torsion = "1", st_mwl = "1";
  CLI::App* st = leaf(es_cmd, "shioda-tate", "Picard number and NS discriminant", 0, [&] {
    std::vector<ellsurf::KodairaFiber> fs;
    std::string s = st_fibers;
    std::size_t at = 0;
    while (at <= s.size()) {
      std::size_t comma = s.find(',', at);
      std::string tok = s.substr(at, comma == std::string::npos ? std::string::npos : comma - at);
      at = comma == std::string::npos ? s.size() + 1 : comma + 1;
      std::size_t k = 0;
      while (k < tok.size() && std::isdigit(static_cast<unsigned char>(tok[k]))) ++k;
      // a leading count is a multiplicity unless the token is I_n itself
      int mult = 1;
      if (k > 0 && k < tok.size()) {
        mult = std::stoi(tok.substr(0, k));
        tok = tok.substr(k);
      }
      for (int i = 0; i < mult; ++i) fs.push_back(ellsurf::parse_fiber(tok));
    }
    auto r = ellsurf::shioda_tate(fs, st_rank, parse_int(st_torsion), rat_from_string(st_mwl));
    return json{{"rho", r.rho}, {"ns_disc", to_string(r.ns_disc)}};
  });
  st->add_option("--fibers", st_fibers, "e.g. 3I2,3I6")->required();
  st->add_option("--rank", st_rank);
  st->add_option("--torsion", st_torsion);
  st->add_option("--mwl-disc", st_mwl);

  // k3
  CLI::App* k3_cmd = app.add_subcommand("k3", "singular K3 surfaces and Enriques quotients");
  k3_cmd->require_subcommand(1);
  leaf(k3_cmd, "report", "classification report for a b c", 3,
       [&] { return report_json(enriques::enriques_report(form_from(pos), bits)); });
  std::string emit;
  CLI::App* ino = leaf(k3_cmd, "inose", "Inose pencil data", 3, [&] {
    enriques::InoseData d = enriques::inose_pencil(form_from(pos), bits);
    json j = inose_json(d);
    if (!emit.empty()) {
      if (!d.model) throw DomainError("A^3 and B^2 are not rational here; no model over Q");
      std::ofstream o(emit);
      if (!o) throw DomainError("cannot write " + emit);
      o << model_json(*d.model).dump(2) << "\n";
      j["emitted"] = emit;
    }
    return j;
  });
  ino->add_option("--emit-model", emit, "write the model over Q as JSON");
  leaf(k3_cmd, "cm", "CM points and j-invariants", 3, [&] {
    cm::CMPair p = cm::cm_points(form_from(pos));
    auto jv = [&](const cm::CMPoint& t) {
      cm::JValue v = cm::j_cm(t, bits);
      json j{{"point", t.str()}, {"certified", v.certified}, {"terms", v.terms}};
      if (v.certified)
        j["j"] = int_json(v.integer);
      else
        j["j"] = json{{"re", num::to_string(v.value.re, 40)}, {"im", num::to_string(v.value.im, 40)}};
      return j;
    };
    return json{{"tau", jv(p.tau)}, {"tau_prime", jv(p.tau_prime)}, {"e_isomorphic_eprime", p.e_isomorphic_eprime}};
  });
  leaf(k3_cmd, "classpoly", "Hilbert class polynomial of d", 1, [&] {
    Int d = parse_int(pos[0]);
    auto c = cm::hilbert_class_poly(d, bits);
    json cs = json::array();
    for (const auto& x : c) cs.push_back(x.get_str());
    return json{{"d", int_json(d)}, {"degree", c.size() - 1}, {"coefficients", cs}, {"bits", bits}};
  });
  leaf(k3_cmd, "exceptions", "exceptional forms diag(2,|d|/2)", 0, [&] {
    json fs = json::array();
    for (const auto& f : enriques::exception_list(threads)) fs.push_back(form_json(f));
    return json{{"forms", fs},
                {"count", fs.size()},
                {"caveat", enriques::kExceptionCaveat},
                {"paper_anchor", "exceptional idoneal discriminants"}};
  });
  leaf(k3_cmd, "fields", "field degrees for a b c", 3,
       [&] { return fields_json(enriques::fields_report(form_from(pos))); });
  leaf(k3_cmd, "brauer", "Brauer example lattice for M N", 2, [&] {
    auto b = enriques::brauer_example(parse_int(pos[0]), parse_int(pos[1]));
    return json{{"ns_expression", b.ns_expression},
                {"d", int_json(b.d)},
                {"det", int_json(b.ns.det())},
                {"rank", b.ns.rank()},
                {"notes", b.notes}};
  });
  leaf(k3_cmd, "class-number-one", "discriminants of class number one", 0, [&] {
    auto ds = enriques::class_number_one_discriminants(threads);
    return json{{"discriminants", ds}, {"count", ds.size()}};
  });

  // fixtures
  std::string fixture_dir = default_fixture_dir();
  std::optional<std::string> filter;
  bool fixtures_failed = false;
  CLI::App* fx = leaf(&app, "fixtures", "run the fixture corpus", 0, [&] {
    FixtureSummary s = run_fixtures(fixture_dir, filter);
    json rows = json::array();
    for (const auto& o : s.outcomes)
      rows.push_back(json{{"name", o.name}, {"file", o.file}, {"passed", o.passed}, {"mismatches", o.mismatches}});
    fixtures_failed = s.failed() > 0;
    text = [](const json& r) {
      std::string o;
      for (const auto& f : r["fixtures"]) {
        o += (f["passed"].get<bool>() ? "PASS " : "FAIL ") + f["name"].get<std::string>();
        for (const auto& m : f["mismatches"]) o += "\n    " + m.get<std::string>();
        o += "\n";
      }
      return o + std::to_string(r["passed"].get<std::size_t>()) + " passed, " +
             std::to_string(r["failed"].get<std::size_t>()) + " failed\n";
    };
    return json{{"fixtures", rows}, {"passed", s.passed()}, {"failed", s.failed()}};
  });
  fx->add_option("--fixtures", fixture_dir, "fixture directory");
  fx->add_option("--filter", filter, "substring of fixture names");

  std::vector<std::string> full{"k3tool"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<char*> cargv;
  for (auto& s : full) cargv.push_back(s.data());

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << "subcommands: bqf {reduce,classgroup,aut,genus,compose,scan}, lattice {discform,iso,t-from-ns}, "
           "ellsurf {fibers,basechange,twist,height,shioda-tate}, "
           "k3 {report,inose,cm,classpoly,exceptions,fields,brauer,class-number-one}, fixtures\n";
    return 2;
  }

  json result;
  try {
    if (!handler) throw UsageError("no command given");
    result = handler();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }

  if (as_json) {
    std::set<std::string> anchors;
    collect_anchors(result, anchors);
    json env{{"schema_version", kSchemaVersion},
             {"command", args},
             {"result", result},
             {"provenance", json{{"tool", "k3tool"}, {"subcommand", command_name}, {"anchors", anchors}}}};
    out << env.dump(2) << "\n";
  } else {
    out << text(result);
  }
  return fixtures_failed ? 1 : 0;
}

}  // namespace k3::cli
