#include <doctest.h>

#include <map>
#include <random>

#include "k3/mwl.hpp"

using namespace k3;
using namespace k3::ellsurf;

namespace {

Poly P(const std::string& s, long m = 1) {
  RationalFunction f = parse_rational_function(s, m);
  return exact_div(f.num(), f.den());
}
RationalFunction R(const std::string& s, long m = 1) { return parse_rational_function(s, m); }

WeierstrassModel gamma1_6() { return WeierstrassModel(1, P("t-2"), P("-t"), P("-t*(t-1)"), Poly(1), Poly(1)); }
WeierstrassModel inose_23() { return WeierstrassModel::short_model(1, P("-6*t^4"), P("t^5*(t^2-6*t+1)")); }

void check_identity(const WeierstrassModel& w) {
  const Invariants& v = w.invariants();
  CHECK(FieldElement(1728) * v.disc == v.c4 * v.c4 * v.c4 - v.c6 * v.c6);
}

std::map<std::string, int> counts(const Survey& s) {
  std::map<std::string, int> out;
  for (const auto& e : s.fibers) ++out[e.fiber.symbol()];
  if (s.residual_i1 > 0) out["I1"] += s.residual_i1;
  return out;
}

Poly random_poly(std::mt19937& rng, int deg, long m) {
  std::uniform_int_distribution<int> c(-6, 6);
  std::vector<FieldElement> cs;
  for (int i = 0; i <= deg; ++i)
    cs.push_back(m == 1 ? FieldElement(c(rng)) : FieldElement(Rat(c(rng)), Rat(c(rng)), m));
  return Poly(cs, m);
}

}  // namespace

TEST_CASE("polynomial division and gcd") {
  std::mt19937 rng(3);
  for (long m : {1L, -3L, 5L}) {
    for (int t = 0; t < 30; ++t) {
      Poly a = random_poly(rng, 2 + t % 5, m), b = random_poly(rng, 1 + t % 3, m);
      if (b.is_zero()) continue;
      auto [q, r] = divmod(a, b);
      CHECK(q * b + r == a);
      CHECK(r.degree() < b.degree());
      Poly g = random_poly(rng, 2, m);
      if (g.degree() < 1) continue;
      Poly ga = g * a, gb = g * b;
      CHECK(divides(gcd(ga, gb), ga));
      CHECK(divides(g.monic(), gcd(ga, gb)));
    }
  }
}

TEST_CASE("squarefree decomposition and valuations") {
  Poly f = P("(t-1)^3*(t+2)^2*(t^2+1)");
  auto sf = squarefree_decomposition(f);
  Poly back = Poly::constant(f.leading(), 1);
  for (const auto& [g, e] : sf) back *= g.pow(static_cast<unsigned>(e));
  CHECK(back == f);
  CHECK(valuation_at(f, P("t-1")) == 3);
  CHECK(valuation_at(f, P("t^2+1")) == 1);
}

TEST_CASE("roots in quadratic fields") {
  auto r = roots_in_field(P("t^2+t+1", -3));
  REQUIRE(r.size() == 2);
  for (const auto& x : r) CHECK(P("t^2+t+1", -3).eval(x).is_zero());
  CHECK(roots_in_field(P("t^2+t+1")).empty());
  auto s = roots_in_field(P("(t^2-5)*(3*t-1)", 5));
  CHECK(s.size() == 3);
  CHECK(roots_in_field(P("(t-1/9)*(t+8)")).size() == 2);
}

TEST_CASE("rational functions") {
  RationalFunction f = R("(t^2-1)/(t-1)");
  CHECK(f == R("t+1"));
  CHECK(R("1/t").valuation_at_zero() == -1);
  CHECK(R("t^2/(t^3+1)").valuation_at_infinity() == 1);
  CHECK(substitute(R("t^2"), R("(s+1)/s")) == R("(s+1)^2/s^2"));
  CHECK_THROWS(R("x*y", 1));
  CHECK_THROWS(R("t+", 1));
  CHECK_THROWS(R("sqrt(2)*t", -3));
  CHECK(R("sqrt(-3)^2", -3) == R("-3", -3));
}

TEST_CASE("invariants and the discriminant identity") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    std::array<Poly, 5> a;
    for (auto& p : a) p = random_poly(rng, t % 4, t % 2 ? -3 : 1);
    try {
      WeierstrassModel w(a[0].field(), a[0], a[1], a[2], a[3], a[4]);
      check_identity(w);
    } catch (const DomainError&) {
    }
  }
  CHECK(WeierstrassModel::short_model(1, Poly(1), P("1")).invariants().disc == P("-432"));
  CHECK_THROWS_AS(WeierstrassModel::short_model(1, Poly(1), Poly(1)), DomainError);

  Poly d = gamma1_6().invariants().disc;
  CHECK(valuation_at(d, P("t")) == 3);
  CHECK(valuation_at(d, P("t-1")) == 2);
  CHECK(valuation_at(d, P("t+8")) == 1);

  Invariants v = inose_23().invariants();
  CHECK(v.c4.valuation() == 4);
  CHECK(v.c6.valuation() == 5);
  CHECK(v.disc.valuation() == 10);
}

TEST_CASE("Kodaira table") {
  struct Row {
    int v4, v6, vd;
    std::string sym;
    int euler, comps, group;
  };
  const Row rows[] = {
      {0, 0, 1, "I1", 1, 1, 1},   {0, 0, 6, "I6", 6, 6, 6},    {1, 1, 2, "II", 2, 1, 1},
      {3, 1, 2, "II", 2, 1, 1},   {1, 2, 3, "III", 3, 2, 2},   {1, 7, 3, "III", 3, 2, 2},
      {2, 2, 4, "IV", 4, 3, 3},   {5, 2, 4, "IV", 4, 3, 3},    {2, 3, 6, "I0*", 6, 5, 4},
      {3, 3, 6, "I0*", 6, 5, 4},  {2, 4, 6, "I0*", 6, 5, 4},   {2, 3, 9, "I3*", 9, 8, 4},
      {3, 4, 8, "IV*", 8, 7, 3},  {3, 5, 9, "III*", 9, 8, 2},  {3, 8, 9, "III*", 9, 8, 2},
      {4, 5, 10, "II*", 10, 9, 1}, {7, 5, 10, "II*", 10, 9, 1},
  };
  for (const auto& r : rows) {
    KodairaFiber f = classify(r.v4, r.v6, r.vd);
    CHECK(f.symbol() == r.sym);
    CHECK(f.euler() == r.euler);
    CHECK(f.components() == r.comps);
    CHECK(f.group_order() == r.group);
    CHECK(parse_fiber(r.sym) == f);
  }
  CHECK(classify(0, 0, 0).symbol() == "I0");
  CHECK_THROWS(classify(4, 6, 12));
  CHECK_THROWS(classify(1, 1, 5));
}

TEST_CASE("the Gamma1(6) rational surface") {
  Survey s = fiber_survey(gamma1_6());
  CHECK(s.configuration() == "I1@-8, I3@0, I2@1, I6@inf");
  CHECK(s.euler_sum == 12);
  CHECK(s.chi == 1);
  CHECK(kodaira_type(gamma1_6(), Place::at_infinity()).symbol() == "I6");
  CHECK(localize_minimal(gamma1_6(), Place::at_infinity()).v_disc == 6);
}

TEST_CASE("localization strips a full period") {
  auto w = WeierstrassModel::short_model(1, P("t^4"), P("t^6"));
  LocalModel lm = localize_minimal(w, Place::at_root(FieldElement(0), 1));
  CHECK(lm.reductions == 1);
  CHECK(lm.v_disc == 0);
  CHECK(kodaira_type(w, Place::at_root(FieldElement(0), 1)).symbol() == "I0");
  LocalModel inf = localize_minimal(inose_23(), Place::at_root(FieldElement(0), 1));
  CHECK(inf.reductions == 0);
  CHECK(inf.v_disc == 10);
}

TEST_CASE("extremal rational surfaces") {
  Survey a = fiber_survey(WeierstrassModel::short_model(1, Poly(1), P("t^5")));
  CHECK(a.configuration() == "II*@0, II@inf");
  Survey b = fiber_survey(WeierstrassModel::short_model(1, P("t"), Poly(1)));
  CHECK(b.configuration() == "III@0, III*@inf");
  CHECK(b.euler_sum == 12);
}

TEST_CASE("non-linear places") {
  // I1 fibres at the roots of an irreducible quadratic
  Survey s = fiber_survey(inose_23());
  CHECK(s.residual_i1 == 4);
  CHECK(counts(s) == std::map<std::string, int>{{"II*", 2}, {"I1", 4}});
  // a double root over Q(sqrt 2) is refused over Q
  auto w = WeierstrassModel::short_model(1, P("-3*(t^2-2)^2"), P("2*(t^2-2)^3 + (t^2-2)^4"));
  CHECK_THROWS_AS(fiber_survey(w), DomainError);
  CHECK_NOTHROW(fiber_survey(WeierstrassModel::short_model(2, P("-3*(t^2-2)^2", 2), P("2*(t^2-2)^3 + (t^2-2)^4", 2))));
}

TEST_CASE("quadratic base change") {
  BaseChange bc = base_change(gamma1_6(), R("-8*s^2/(s^2-1)"));
  Survey s = fiber_survey(bc.model);
  CHECK(counts(s) == std::map<std::string, int>{{"I2", 3}, {"I6", 3}});
  CHECK(s.euler_sum == 24);
  check_identity(bc.model);

  BaseChange id = base_change(gamma1_6(), R("s"));
  CHECK(fiber_survey(id.model).configuration() == fiber_survey(gamma1_6()).configuration());

  BaseChange sq = base_change(inose_23(), R("u^2"));
  CHECK(counts(fiber_survey(sq.model)) == std::map<std::string, int>{{"IV*", 2}, {"I1", 8}});
  check_identity(sq.model);

  // chi doubles; reducible fibres at a non-split place are refused
  BaseChange d = base_change(gamma1_6(), R("s^2"));
  CHECK(fiber_survey(d.model).configuration() == "I2@-1, I6@0, I2@1, I12@inf, 2*I1");
  CHECK(fiber_survey(d.model).euler_sum == 24);
  CHECK_THROWS_AS(fiber_survey(base_change(gamma1_6(), R("s^2+2")).model), DomainError);
  CHECK_THROWS(base_change(gamma1_6(), R("3")));
}

TEST_CASE("sections survive base change") {
  BaseChange bc = base_change(gamma1_6(), R("-8*s^2/(s^2-1)"));
  RationalFunction x = bc.transport_x(R("0")), y = bc.transport_y(R("0"));
  CHECK(bc.model.on_curve(x, y));
  RationalFunction tx = bc.transport_x(R("t-1")), ty = bc.transport_y(R("t-1"));
  CHECK(bc.model.on_curve(tx, ty));
}

TEST_CASE("quadratic twists") {
  WeierstrassModel w = inose_23();
  CHECK(quadratic_twist(w, P("1")).coeffs() == w.coeffs());
  WeierstrassModel w5 = quadratic_twist(w, P("5"));
  check_identity(w5);
  CHECK(counts(fiber_survey(w5)) == counts(fiber_survey(w)));

  // (1, sqrt5 t) on y^2 = x^3 + t x + 5t^2 - 1 - t
  WeierstrassModel e = WeierstrassModel::short_model(1, P("t"), P("5*t^2-1-t"));
  WeierstrassModel e5 = quadratic_twist(e, P("5"));
  auto [U, V] = twist_section(R("1"), R("t"), P("5"));
  CHECK(U == R("5"));
  CHECK(V == R("25*t"));
  CHECK(e5.on_curve(U, V));

  // twisting at t turns I0 into I0* and I_n into I_n*
  WeierstrassModel tw = quadratic_twist(WeierstrassModel::short_model(1, P("-3"), P("2+t")), P("t"));
  CHECK(kodaira_type(tw, Place::at_root(FieldElement(0), 1)).symbol() == "I1*");
  CHECK_THROWS(quadratic_twist(gamma1_6(), P("2")));
  CHECK_THROWS(quadratic_twist(w, Poly(1)));
}

TEST_CASE("local contributions") {
  CHECK(local_contribution(parse_fiber("I2"), 1) == Rat(1, 2));
  CHECK(local_contribution(parse_fiber("I4"), 2) == 1);
  CHECK(local_contribution(parse_fiber("I6"), 0) == 0);
  CHECK(local_contribution(parse_fiber("I0*"), 2) == 1);
  CHECK(local_contribution(parse_fiber("I2*"), 1) == 1);
  CHECK(local_contribution(parse_fiber("I2*"), 2) == Rat(3, 2));
  CHECK(local_contribution(parse_fiber("III*"), 1) == Rat(3, 2));
  CHECK(local_contribution(parse_fiber("IV*"), 2) == Rat(4, 3));
  CHECK(local_pairing(parse_fiber("I6"), 2, 3) == 1);
  CHECK(local_pairing(parse_fiber("IV"), 1, 2) == Rat(1, 3));
  CHECK_THROWS(local_contribution(parse_fiber("II*"), 1));
  CHECK_THROWS(local_contribution(parse_fiber("I3"), 3));
}

TEST_CASE("height formula") {
  CHECK(height_from_data(2, 0, {Rat(1, 2)}) == Rat(7, 2));
  CHECK(height_from_data(2, 0, {}) == 4);
  // 4 + 2 - 3/2 - 3/2 - 1; the section of height 3 has no I4 contribution
  CHECK(height_from_data(2, 1, {Rat(3, 2), Rat(3, 2), Rat(1)}) == 2);
  CHECK(height_from_data(2, 1, {Rat(3, 2), Rat(3, 2)}) == 3);
  CHECK_THROWS(height_from_data(0, 0, {}));
  CHECK_THROWS(height_from_data(2, -1, {}));
}

TEST_CASE("Shioda-Tate") {
  auto f = [](const std::string& s, int k) { return std::vector<KodairaFiber>(k, parse_fiber(s)); };
  std::vector<KodairaFiber> x = f("I6", 3);
  for (auto& e : f("I2", 3)) x.push_back(e);
  ShiodaTate a = shioda_tate(x, 0, 12, 1);
  CHECK(a.rho == 20);
  CHECK(a.ns_disc == -12);
  ShiodaTate b = shioda_tate(f("II*", 1), 0, 1, 1);
  CHECK(b.rho == 10);
  CHECK(b.ns_disc == -1);
  ShiodaTate c = shioda_tate(f("II*", 2), 2, 1, 23);
  CHECK(c.rho == 20);
  CHECK(c.ns_disc == -23);
  CHECK_THROWS(shioda_tate(f("I2", 1), 0, 2, 1));
}

TEST_CASE("section analysis on the Gamma1(6) K3") {
  BaseChange bc = base_change(gamma1_6(), R("-8*s^2/(s^2-1)"));
  const WeierstrassModel& w = bc.model;
  // two-torsion section induced from (t-1, t-1)
  RationalFunction x = R("(1-9*t^2)*(t^2-1)"), y = R("(1-9*t^2)*(t^2-1)^2");
  REQUIRE(w.on_curve(x, y));
  SectionAnalysis a = analyze_section(w, x, y);
  CHECK(a.height == 0);
  for (const auto& c : a.components)
    if (c.place.str() == "0" || c.place.str() == "inf") CHECK(c.component == 0);
  SectionAnalysis z = analyze_zero_section(w);
  CHECK(z.zero_section);
  CHECK(z.height == 0);

  RationalFunction x2 = R("-4*t^2*(3*t+1)*(t-1)");
  RationalFunction y2 = RationalFunction(Poly::constant(FieldElement(Rat(-1, 2)), 1)) *
                        (RationalFunction(w.a1()) * x2 + RationalFunction(w.a3()));
  SectionAnalysis b = analyze_section(w, x2, y2);
  CHECK(b.height == 0);
  Survey s = fiber_survey(w);
  SectionAnalysis p6 = analyze_section(w, bc.transport_x(R("0")), bc.transport_y(R("0")));
  lattice::EvenLattice ns = ns_overlattice(s, {p6, b});
  CHECK(ns.det() == -12);
  CHECK(torsion_embeds(fiber_survey(w).fibers.empty() ? std::vector<KodairaFiber>{} : [&] {
    std::vector<KodairaFiber> fs;
    for (const auto& e : s.fibers) fs.push_back(e.fiber);
    return fs;
  }(), {Int(2), Int(6)}));
  CHECK_THROWS(analyze_section(w, R("1"), R("1")));
}

TEST_CASE("height 3 section over Q(sqrt -3)") {
  WeierstrassModel w(-3, Poly(-3), P("t^2", -3), Poly(-3), P("t^3*(t-1/9)^2", -3), Poly(-3));
  RationalFunction x = R("-12*t^3/(9*t-1)^2", -3);
  RationalFunction y = R("(2/9)*sqrt(-3)*t^3*(9*t+1)*(81*t^2-36*t+1)/(9*t-1)^3", -3);
  REQUIRE(w.on_curve(x, y));
  SectionAnalysis a = analyze_section(w, x, y);
  CHECK(a.chi == 2);
  CHECK(a.po == 1);
  CHECK(a.height == 3);
  std::vector<Rat> contribs;
  for (const auto& c : a.components) contribs.push_back(c.contribution);
  CHECK(height_from_data(a.chi, a.po, contribs) == a.height);
}

TEST_CASE("torsion embedding helper") {
  std::vector<KodairaFiber> fs{parse_fiber("I6"), parse_fiber("I3"), parse_fiber("I2"), parse_fiber("I1")};
  CHECK(torsion_embeds(fs, {Int(6)}));
  CHECK_FALSE(torsion_embeds(fs, {Int(2), Int(6)}));
}
