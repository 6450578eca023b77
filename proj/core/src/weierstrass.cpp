#include "k3/weierstrass.hpp"

namespace k3::ellsurf {

namespace {

Poly cst(long x, long m) { return Poly::constant(FieldElement(x), m); }

}  // namespace

Invariants compute_invariants(long m, const std::array<Poly, 5>& a) {
  const Poly &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  Invariants v;
  v.b2 = a1 * a1 + cst(4, m) * a2;
  v.b4 = cst(2, m) * a4 + a1 * a3;
  v.b6 = a3 * a3 + cst(4, m) * a6;
  v.b8 = a1 * a1 * a6 + cst(4, m) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  v.c4 = v.b2 * v.b2 - cst(24, m) * v.b4;
  v.c6 = -(v.b2 * v.b2 * v.b2) + cst(36, m) * v.b2 * v.b4 - cst(216, m) * v.b6;
  v.disc = -(v.b2 * v.b2 * v.b8) - cst(8, m) * v.b4 * v.b4 * v.b4 - cst(27, m) * v.b6 * v.b6 +
           cst(9, m) * v.b2 * v.b4 * v.b6;
  if (v.disc.is_zero()) throw DomainError("discriminant vanishes identically: not an elliptic surface");
  if (cst(1728, m) * v.disc != v.c4 * v.c4 * v.c4 - v.c6 * v.c6)
    throw std::logic_error("invariant identity 1728 disc = c4^3 - c6^2 failed");
  return v;
}

WeierstrassModel::WeierstrassModel(long m, const Poly& a1, const Poly& a2, const Poly& a3,
                                   const Poly& a4, const Poly& a6)
    : m_(check_field(m)) {
  a_ = {a1, a2, a3, a4, a6};
  for (auto& p : a_) {
    join_fields(m_, p.field());
    p = Poly(p.coeffs(), m_);
  }
  inv_ = compute_invariants(m_, a_);
}

WeierstrassModel WeierstrassModel::short_model(long m, const Poly& a4, const Poly& a6) {
  return WeierstrassModel(m, Poly(m), Poly(m), Poly(m), a4, a6);
}

RationalFunction WeierstrassModel::equation(const RationalFunction& x,
                                            const RationalFunction& y) const {
  RationalFunction A1(a1()), A2(a2()), A3(a3()), A4(a4()), A6(a6());
  return y * y + A1 * x * y + A3 * y - (x * x * x + A2 * x * x + A4 * x + A6);
}

bool WeierstrassModel::on_curve(const RationalFunction& x, const RationalFunction& y) const {
  return equation(x, y).is_zero();
}

std::string WeierstrassModel::str(const std::string& var) const {
  std::string s = "y^2";
  auto term = [&](const Poly& p, const std::string& mono, std::string& out) {
    if (p.is_zero()) return;
    out += " + (" + p.str(var) + ")" + mono;
  };
  term(a1(), "*x*y", s);
  term(a3(), "*y", s);
  s += " = x^3";
  term(a2(), "*x^2", s);
  term(a4(), "*x", s);
  term(a6(), "", s);
  return s;
}

ShortForm short_form(const WeierstrassModel& w) {
  const long m = w.field();
  const Invariants& v = w.invariants();
  return ShortForm{Poly::constant(FieldElement(-27), m) * v.c4,
                   Poly::constant(FieldElement(-54), m) * v.c6};
}

RationalFunction ShortForm::map_x(const WeierstrassModel& w, const RationalFunction& x) const {
  long m = w.field();
  return RationalFunction(Poly::constant(FieldElement(36), m)) * x +
         RationalFunction(Poly::constant(FieldElement(3), m) * w.invariants().b2);
}

RationalFunction ShortForm::map_y(const WeierstrassModel& w, const RationalFunction& x,
                                  const RationalFunction& y) const {
  long m = w.field();
  RationalFunction two(Poly::constant(FieldElement(2), m));
  RationalFunction k(Poly::constant(FieldElement(108), m));
  return k * (two * y + RationalFunction(w.a1()) * x + RationalFunction(w.a3()));
}

}  // namespace k3::ellsurf
