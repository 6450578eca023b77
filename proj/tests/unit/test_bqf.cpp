#include <doctest.h>

#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "k3/bqf.hpp"

using namespace k3;
using bqf::Form;

namespace {

// Reduced forms by direct enumeration, no shared code with the library.
std::vector<Form> enumerate_reduced(long d, bool primitive_only) {
  std::vector<Form> out;
  for (long a = 1; 3 * a * a <= -d; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      if ((b * b - d) % (4 * a) != 0) continue;
      long c = (b * b - d) / (4 * a);
      if (c < a || (a == c && b < 0)) continue;
      if (primitive_only && std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      out.push_back(Form{a, b, c});
    }
  return out;
}

// Dirichlet composition for forms with gcd(a1, a2, (b1+b2)/2) = 1: find B
// with B = b1 (2a1), B = b2 (2a2), B^2 = d (4 a1 a2) by search.
std::optional<Form> dirichlet(const Form& f, const Form& g) {
  long a1 = f.a.get_si(), b1 = f.b.get_si(), a2 = g.a.get_si(), b2 = g.b.get_si();
  long d = f.disc().get_si();
  if (std::gcd(std::gcd(a1, a2), std::labs((b1 + b2) / 2)) != 1) return std::nullopt;
  long m = 4 * a1 * a2;
  for (long B = -2 * a1 * a2; B < 2 * a1 * a2; ++B) {
    if (((B - b1) % (2 * a1)) != 0 || ((B - b2) % (2 * a2)) != 0) continue;
    if (((B * B - d) % m) != 0) continue;
    return Form{a1 * a2, B, (B * B - d) / m};
  }
  return std::nullopt;
}

std::vector<long> discriminants(long bound) {
  std::vector<long> ds;
  for (long d = -3; d >= -bound; --d)
    if (((d % 4) + 4) % 4 <= 1) ds.push_back(d);
  return ds;
}

bool ambiguous(const Form& f) { return f.b == 0 || f.a == f.b || f.a == f.c; }

}  // namespace

TEST_CASE("reduction keeps the discriminant and has an SL2 witness") {
  for (const Form& q : {Form{3, 4, 2}, Form{10, 31, 25}, Form{101, 200, 100}, Form{7, -13, 9}}) {
    auto r = bqf::reduce(q);
    CHECK(r.form.is_reduced());
    CHECK(r.form.disc() == q.disc());
    CHECK(bqf::mat_det(r.witness) == 1);
    CHECK(bqf::act(q, r.witness) == r.form);
  }
  CHECK(bqf::reduce(Form{3, 4, 2}).form == Form{1, 0, 2});
}

TEST_CASE("make_form rejects indefinite and degenerate input") {
  CHECK_THROWS_AS(bqf::make_form(1, 3, 1), DomainError);
  CHECK_THROWS_AS(bqf::make_form(0, 1, 1), DomainError);
  CHECK_THROWS_AS(bqf::make_form(-1, 0, -1), DomainError);
}

TEST_CASE("class numbers agree with enumeration for |d| <= 500") {
  for (long d : discriminants(500)) {
    auto forms = enumerate_reduced(d, true);
    auto cg = bqf::class_group(Int(d));
    REQUIRE(cg.class_number() == forms.size());
    CHECK(bqf::class_number(d) == static_cast<long>(forms.size()));
    Int prod = 1;
    for (const auto& s : cg.structure) prod *= s;
    CHECK(prod == Int(static_cast<long>(forms.size())));
    for (std::size_t i = 0; i + 1 < cg.structure.size(); ++i) CHECK(cg.structure[i + 1] % cg.structure[i] == 0);
    std::set<std::string> a, b;
    for (const auto& f : forms) a.insert(f.str());
    for (const auto& f : cg.elements) b.insert(f.str());
    CHECK(a == b);
  }
}

TEST_CASE("known class groups") {
  CHECK(bqf::class_group(Int(-23)).class_number() == 3);
  CHECK(bqf::class_group(Int(-56)).structure == std::vector<Int>{4});
  CHECK(bqf::class_group(Int(-84)).structure == std::vector<Int>{2, 2});
  CHECK(bqf::class_group(Int(-3)).principal == Form{1, 1, 1});
  CHECK_THROWS_AS(bqf::class_group(Int(5)), DomainError);
  CHECK_THROWS_AS(bqf::class_group(Int(-6)), DomainError);
}

TEST_CASE("composition matches Dirichlet composition") {
  int checked = 0;
  for (long d : discriminants(400)) {
    auto forms = enumerate_reduced(d, true);
    for (const auto& f : forms)
      for (const auto& g : forms) {
        auto o = dirichlet(f, g);
        if (!o) continue;
        CHECK(bqf::compose(f, g) == bqf::reduce(*o).form);
        ++checked;
      }
  }
  CHECK(checked > 1000);
}

TEST_CASE("composition is a group law") {
  for (long d : {-23L, -47L, -56L, -84L, -260L, -399L}) {
    auto cg = bqf::class_group(Int(d));
    const auto& e = cg.principal;
    for (const auto& f : cg.elements) {
      CHECK(bqf::compose(f, e) == f);
      CHECK(bqf::compose(f, bqf::inverse(f)) == e);
      for (const auto& g : cg.elements) {
        CHECK(bqf::compose(f, g) == bqf::compose(g, f));
        for (const auto& h : cg.elements)
          CHECK(bqf::compose(bqf::compose(f, g), h) == bqf::compose(f, bqf::compose(g, h)));
      }
    }
  }
}

TEST_CASE("power and order") {
  Form f{2, 1, 3};
  CHECK(bqf::form_order(f) == 3);
  CHECK(bqf::power(f, 3) == Form{1, 1, 6});
  CHECK(bqf::power(f, 4) == bqf::reduce(f).form);
  CHECK(bqf::power(f, -1) == bqf::inverse(f));
}

TEST_CASE("automorphism groups by brute force over GL2") {
  for (long d : discriminants(200)) {
    for (const auto& f : enumerate_reduced(d, true)) {
      int count = 0;
      for (long p = -3; p <= 3; ++p)
        for (long q = -3; q <= 3; ++q)
          for (long r = -3; r <= 3; ++r)
            for (long s = -3; s <= 3; ++s) {
              long det = p * s - q * r;
              if (det != 1 && det != -1) continue;
              if (bqf::act(f, bqf::Mat2{p, q, r, s}) == f) ++count;
            }
      auto g = bqf::automorphism_group(f);
      CHECK(g.order == count);
      static const std::map<std::string, int> orders{{"trivial", 2}, {"klein", 4}, {"D8", 8}, {"D12", 12}};
      CHECK(orders.at(g.name) == g.order);
    }
  }
  CHECK(bqf::automorphism_group(Form{1, 0, 1}).name == "D8");
  CHECK(bqf::automorphism_group(Form{1, 1, 1}).name == "D12");
  CHECK(bqf::automorphism_group(Form{2, 1, 3}).name == "trivial");
  CHECK(bqf::automorphism_group(Form{1, 0, 3}).name == "klein");
}

TEST_CASE("non-trivial automorphisms exactly for two-torsion classes, |d| <= 500") {
  for (long d : discriminants(500))
    for (const auto& f : bqf::class_group(Int(d)).elements) {
      bool aut = bqf::automorphism_group(f).order > 2;
      bool two = bqf::form_order(f) <= 2;
      CHECK(aut == two);
      CHECK(ambiguous(f) == two);
    }
}

TEST_CASE("two-torsion scan agrees with class group structure") {
  std::vector<long> expected;
  for (long d : discriminants(600)) {
    auto st = bqf::class_group(Int(d)).structure;
    if (std::all_of(st.begin(), st.end(), [](const Int& x) { return x <= 2; })) expected.push_back(d);
  }
  CHECK(bqf::two_torsion_scan(600) == expected);
  CHECK(bqf::two_torsion_scan(600, 3) == expected);
}

TEST_CASE("genus size is the number of squares") {
  for (long d : {-23L, -56L, -84L, -119L, -260L, -420L}) {
    auto cg = bqf::class_group(Int(d));
    std::set<std::string> squares;
    for (const auto& f : cg.elements) squares.insert(bqf::compose(f, f).str());
    for (const auto& f : cg.elements) CHECK(bqf::genus_info(f).genus_size == squares.size());
  }
  CHECK(bqf::genus_info(Form{1, 1, 6}).in_principal_genus);
}

TEST_CASE("kronecker symbol at 2") {
  CHECK(bqf::kronecker_at_2(Int(-7)) == 1);
  CHECK(bqf::kronecker_at_2(Int(-15)) == 1);
  CHECK(bqf::kronecker_at_2(Int(-3)) == -1);
  CHECK(bqf::kronecker_at_2(Int(-11)) == -1);
  CHECK(bqf::kronecker_at_2(Int(-12)) == 0);
}

TEST_CASE("sort order of form lists") {
  auto forms = bqf::reduced_forms(Int(-23), true);
  REQUIRE(forms.size() == 3);
  CHECK(forms[1] == Form{2, 1, 3});
  CHECK(forms[2] == Form{2, -1, 3});
  auto all = bqf::reduced_forms(Int(-12), false);
  CHECK(all.size() == 2);
}
