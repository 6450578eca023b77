// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "k3/enriques.hpp"
#include "k3/mwl.hpp"
#include "k3cli/cli.hpp"

using namespace k3;
using namespace k3::ellsurf;
using bqf::Form;

namespace {

struct Failures {
  std::vector<std::string> items;
  void expect(bool ok, const std::string& what) {
    if (!ok) items.push_back(what);
  }
};

Poly P(const std::string& s, long m = 1) {
  RationalFunction f = parse_rational_function(s, m);
  return exact_div(f.num(), f.den());
}
RationalFunction R(const std::string& s, long m = 1) { return parse_rational_function(s, m); }

WeierstrassModel gamma1_6() { return WeierstrassModel(1, P("t-2"), P("-t"), P("-t*(t-1)"), Poly(1), Poly(1)); }
WeierstrassModel inose_23() { return WeierstrassModel::short_model(1, P("-6*t^4"), P("t^5*(t^2-6*t+1)")); }

std::map<std::string, int> counts(const Survey& s) {
  std::map<std::string, int> out;
  for (const auto& e : s.fibers) ++out[e.fiber.symbol()];
  if (s.residual_i1 > 0) out["I1"] += s.residual_i1;
  return out;
}

std::string show(const std::map<std::string, int>& c) {
  std::string out;
  for (const auto& [k, v] : c) out += (out.empty() ? "" : " + ") + std::to_string(v) + k;
  return out;
}

bool identity_holds(const WeierstrassModel& w) {
  const Invariants& v = w.invariants();
  return FieldElement(1728) * v.disc == v.c4 * v.c4 * v.c4 - v.c6 * v.c6;
}

std::vector<long> discriminants(long bound) {
  std::vector<long> ds;
  for (long d = -3; d >= -bound; --d)
    if (((d % 4) + 4) % 4 <= 1) ds.push_back(d);
  return ds;
}

// Independent statement of the classification rule.
bool admissible_rule(const Form& r) {
  long d = r.disc().get_si();
  if (((d % 8) + 8) % 8 == 5) return false;
  if (d == -4 || d == -8) return false;
  return !(d == -16 && r == Form{1, 0, 4});
}

WeierstrassModel gamma1_6_k3() { return base_change(gamma1_6(), R("-8*s^2/(s^2-1)")).model; }

void c1(Failures& f) {
  Survey s = fiber_survey(gamma1_6());
  f.expect(s.configuration() == "I1@-8, I3@0, I2@1, I6@inf", "configuration " + s.configuration());
  f.expect(s.euler_sum == 12, "euler sum");
}

void c2(Failures& f) {
  BaseChange bc = base_change(gamma1_6(), R("-8*s^2/(s^2-1)"));
  Survey s = fiber_survey(bc.model);
  f.expect(counts(s) == std::map<std::string, int>{{"I2", 3}, {"I6", 3}}, "fibres " + show(counts(s)));
  std::vector<KodairaFiber> fibers;
  for (const auto& e : s.fibers) fibers.push_back(e.fiber);
  ShiodaTate st = shioda_tate(fibers, 0, 12, 1);
  f.expect(st.rho == 20, "rho " + std::to_string(st.rho));
  f.expect(st.ns_disc == -12, "ns disc " + to_string(st.ns_disc));

  // NS from the trivial lattice glued by the 6-torsion and 2-torsion sections
  const WeierstrassModel& w = bc.model;
  SectionAnalysis p6 = analyze_section(w, bc.transport_x(R("0")), bc.transport_y(R("0")));
  RationalFunction x2 = R("-4*t^2*(3*t+1)*(t-1)");
  RationalFunction y2 = RationalFunction(Poly::constant(FieldElement(Rat(-1, 2)), 1)) *
                        (RationalFunction(w.a1()) * x2 + RationalFunction(w.a3()));
  SectionAnalysis p2 = analyze_section(w, x2, y2);
  lattice::EvenLattice ns = ns_overlattice(s, {p6, p2});
  f.expect(ns.det() == -12, "glued NS det " + to_string(ns.det()));
  auto forms = lattice::rank2_forms_by_disc_form(Int(-12), lattice::discriminant_form(ns), -1);
  f.expect(forms == std::vector<Form>{Form{1, 0, 3}}, "transcendental form not (1,0,3)");
}

void c3(Failures& f) {
  Survey s = fiber_survey(inose_23());
  f.expect(counts(s) == std::map<std::string, int>{{"II*", 2}, {"I1", 4}}, "fibres " + show(counts(s)));
  f.expect(s.euler_sum == 24, "euler sum");
  Survey u = fiber_survey(base_change(inose_23(), R("u^2")).model);
  auto c = counts(u);
  f.expect(c["IV*"] == 2 && c.count("II*") == 0, "after u^2 " + show(c));
  f.expect(u.euler_sum == 24, "euler sum after u^2");
}

void c4(Failures& f) {
  WeierstrassModel w(1, Poly(1), P("t^2"), Poly(1), P("t^3*(t-1)^2"), Poly(1));
  Survey s = fiber_survey(w);
  std::map<std::string, std::string> at;
  for (const auto& e : s.fibers)
    if (e.fiber.symbol() != "I1") at[e.place.str()] = e.fiber.symbol();
  f.expect(at == std::map<std::string, std::string>{{"0", "III*"}, {"inf", "III*"}, {"1", "I4"}},
           "configuration " + s.configuration());
  f.expect(s.euler_sum == 24, "euler sum");
}

void c5(Failures& f) {
  WeierstrassModel w(-3, Poly(-3), P("t^2", -3), Poly(-3), P("t^3*(t-1/9)^2", -3), Poly(-3));
  RationalFunction x = R("-12*t^3/(9*t-1)^2", -3);
  RationalFunction y = R("(2/9)*sqrt(-3)*t^3*(9*t+1)*(81*t^2-36*t+1)/(9*t-1)^3", -3);
  f.expect(w.on_curve(x, y), "point not on the curve");
  SectionAnalysis a = analyze_section(w, x, y);
  f.expect(a.height == 3, "height " + to_string(a.height));
}

void c6(Failures& f) {
  int checked = 0;
  for (long d : discriminants(1000))
    for (const auto& q : bqf::reduced_forms(Int(d), false)) {
      ++checked;
      if (enriques::enriques_admissible(q).value != admissible_rule(q)) f.expect(false, "mismatch at " + q.str());
    }
  f.expect(checked > 1000, "too few forms");
  f.expect(enriques::enriques_admissible(Form{2, 0, 2}).value, "(2,0,2) not admissible");
}

void c7(Failures& f) {
  auto scan = bqf::two_torsion_scan(7392);
  long even = std::count_if(scan.begin(), scan.end(), [](long d) { return d % 2 == 0; });
  f.expect(scan.size() == 101, "scan length " + std::to_string(scan.size()));
  f.expect(even == 65, "even count " + std::to_string(even));
  auto ex = enriques::exception_list();
  f.expect(ex.size() == 62, "exception count " + std::to_string(ex.size()));
  f.expect(std::find(ex.begin(), ex.end(), Form{1, 0, 1848}) != ex.end(), "(1,0,1848) missing");
}

void c8(Failures& f) {
  auto ds = enriques::class_number_one_discriminants();
  f.expect(ds.size() == 13, "count " + std::to_string(ds.size()));
}

void c9(Failures& f) {
  struct Case {
    cm::CMPoint tau;
    Int j;
  };
  const Case cases[] = {{{1, 1, 2, -3}, 0}, {{0, 1, 1, -1}, 1728}, {{0, 1, 1, -3}, 54000}};
  for (const auto& c : cases) {
    auto a = cm::j_cm(c.tau, 128), b = cm::j_cm(c.tau, 256), e = cm::j_cm(c.tau, 512);
    f.expect(a.certified && b.certified && e.certified, "not certified at " + c.tau.str());
    f.expect(a.integer == c.j && b.integer == c.j && e.integer == c.j, "j mismatch at " + c.tau.str());
  }
}

void c10(Failures& f) {
  auto in = enriques::inose_pencil(Form{1, 0, 3});
  f.expect(in.exact, "not exact");
  f.expect(in.A_cubed == Rat(15625, 16), "A^3 " + to_string(in.A_cubed));
  f.expect(in.B_squared == Rat(14641, 16), "B^2 " + to_string(in.B_squared));
  f.expect(in.mw_rank == 1 && in.extra_fibers == "I2", "rank/extra " + std::to_string(in.mw_rank) + "/" + in.extra_fibers);
}

void c11(Failures& f) {
  const std::pair<Form, int> cases[] = {{Form{1, 1, 2}, 1}, {Form{1, 0, 3}, 2}, {Form{1, 1, 3}, 3}};
  for (const auto& [q, deg] : cases) {
    int got = enriques::fields_report(q).deg_H4d_over_Hd;
    f.expect(got == deg, q.str() + " degree " + std::to_string(got));
  }
}

void c12(Failures& f) {
  auto d4 = lattice::discriminant_form(lattice::build_lattice("D4(-1)"));
  for (const auto& x : d4.elements())
    if (!d4.is_zero(x) && d4.q(x) != 1) f.expect(false, "D4(-1) value " + to_string(d4.q(x)));
  auto q1 = lattice::discriminant_form(lattice::build_lattice("Q(1,0,3)"));
  auto q2 = lattice::discriminant_form(lattice::build_lattice("Q(2,2,2)"));
  f.expect(q1.invariant_factors() == std::vector<Int>{2, 6}, "Smith invariants of (1,0,3)");
  f.expect(q1.invariant_factors() == q2.invariant_factors(), "Smith invariants differ");
  f.expect(!lattice::disc_forms_isomorphic(q1, q2).isomorphic, "forms reported isomorphic");
}

bool ambiguous(const Form& q) { return q.b == 0 || q.a == q.b || q.a == q.c; }

void c13(Failures& f) {
  // composition axioms and the two-torsion equivalence
  for (long d : discriminants(500)) {
    auto cg = bqf::class_group(Int(d));
    const auto& e = cg.principal;
    for (const auto& x : cg.elements) {
      if (bqf::compose(x, e) != x || bqf::compose(x, bqf::inverse(x)) != e) f.expect(false, "identity/inverse at " + x.str());
      bool two = bqf::form_order(x) <= 2;
      if ((bqf::automorphism_group(x).order > 2) != two || ambiguous(x) != two)
        f.expect(false, "two-torsion equivalence at " + x.str());
      if (cg.elements.size() > 12) continue;
      for (const auto& y : cg.elements) {
        if (bqf::compose(x, y) != bqf::compose(y, x)) f.expect(false, "commutativity at " + std::to_string(d));
        for (const auto& z : cg.elements)
          if (bqf::compose(bqf::compose(x, y), z) != bqf::compose(x, bqf::compose(y, z)))
            f.expect(false, "associativity at " + std::to_string(d));
      }
    }
  }
  // associativity on a sample for the larger groups
  std::mt19937 rng(11);
  for (long d : discriminants(500)) {
    auto cg = bqf::class_group(Int(d));
    if (cg.elements.size() <= 12) continue;
    std::uniform_int_distribution<std::size_t> pick(0, cg.elements.size() - 1);
    for (int i = 0; i < 200; ++i) {
      const Form &x = cg.elements[pick(rng)], &y = cg.elements[pick(rng)], &z = cg.elements[pick(rng)];
      if (bqf::compose(bqf::compose(x, y), z) != bqf::compose(x, bqf::compose(y, z)) || bqf::compose(x, y) != bqf::compose(y, x))
        f.expect(false, "group law at " + std::to_string(d));
    }
  }

  // 1728 disc = c4^3 - c6^2 for the library's own constructions
  std::vector<WeierstrassModel> models{gamma1_6_k3(), base_change(inose_23(), R("u^2")).model,
                                       base_change(gamma1_6(), R("s^2")).model, quadratic_twist(inose_23(), P("5")),
                                       quadratic_twist(WeierstrassModel::short_model(1, P("-3"), P("2+t")), P("t"))};
  for (long d : enriques::class_number_one_discriminants())
    if (auto m = enriques::inose_pencil(bqf::principal_form(Int(d))).model) models.push_back(*m);
  for (const auto& w : models) f.expect(identity_holds(w), "discriminant identity fails on " + w.str());

  // fixture corpus: every survey has Euler sum 12 chi with chi in {1, 2}, every
  // emitted model satisfies the identity
  namespace fs = std::filesystem;
  int surveys = 0;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(K3_ACCEPTANCE_FIXTURES))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    cli::json doc;
    std::ifstream(p) >> doc;
    if (!doc.is_array()) doc = cli::json::array({doc});
    for (const auto& fx : doc) {
      std::vector<std::string> args = fx["command"].get<std::vector<std::string>>();
      if (args.empty() || args[0] != "ellsurf") continue;
      args.push_back("--json");
      std::ostringstream out, err;
      if (cli::run_command(args, out, err) != 0) continue;
      cli::json r = cli::json::parse(out.str())["result"];
      if (r.contains("survey")) {
        ++surveys;
        int e = r["survey"]["euler_sum"], chi = r["survey"]["chi"];
        f.expect(e == 12 * chi && (e == 12 || e == 24), fx["name"].get<std::string>() + " euler sum " + std::to_string(e));
      }
      if (r.contains("model"))
        f.expect(identity_holds(cli::model_from_json(r["model"])), fx["name"].get<std::string>() + " identity");
    }
  }
  f.expect(surveys >= 5, "too few fixture surveys");
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Failures&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "rational Gamma1(6) surface fibres", 1, c1},
      {2, "quadratic base change to a singular K3", 5, c2},
      {3, "Inose pencil and its u^2 pullback", 5, c3},
      {4, "family member a = 1", 5, c4},
      {5, "section of height 3", 10, c5},
      {6, "Enriques admissibility for |d| <= 1000", 30, c6},
      {7, "two-torsion scan and exception list", 300, c7},
      {8, "class number one discriminants", 60, c8},
      {9, "certified j-values", 10, c9},
      {10, "Inose coefficients for (1,0,3)", 10, c10},
      {11, "degrees of H(4d) over H(d)", 1, c11},
      {12, "discriminant forms", 1, c12},
      {13, "property suites", 120, c13},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Failures f;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(f);
    } catch (const std::exception& e) {
      f.items.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "over time budget of %.0f s", c.budget_s);
      f.items.push_back(buf);
    }
    bool ok = f.items.empty();
    failed += !ok;
    std::printf("%s %2d %s (%.2f s)", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs);
    if (!ok) {
      std::printf(":");
      for (std::size_t i = 0; i < f.items.size() && i < 5; ++i) std::printf(" [%s]", f.items[i].c_str());
      if (f.items.size() > 5) std::printf(" ... %zu more", f.items.size() - 5);
    }
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%zu passed, %d failed\n", criteria.size() - failed, failed);
  return failed == 0 ? 0 : 1;
}
