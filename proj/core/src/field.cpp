#include "k3/field.hpp"

#include "k3/ratfun.hpp"

namespace k3 {

FieldElement::FieldElement(const Rat& uu, const Rat& vv, long mm) : u(uu), v(vv), m(mm) {
  if (m == 1 && v != 0) {
    u += v;
    v = 0;
  }
}

long join_fields(long m1, long m2) {
  if (m1 == m2 || m2 == 1) return m1;
  if (m1 == 1) return m2;
  throw DomainError("elements of Q(sqrt(" + std::to_string(m1) + ")) and Q(sqrt(" +
                    std::to_string(m2) + ")) cannot be combined");
}

long check_field(long m) {
  if (m == 0) throw DomainError("field tag m = 0 is not allowed");
  if (m != 1 && squarefree_part(Int(m)) != m)
    throw DomainError("field tag m = " + std::to_string(m) + " is not squarefree");
  return m;
}

namespace {

long tag(const FieldElement& x, const FieldElement& y) {
  long a = x.v == 0 ? 1 : x.m;
  long b = y.v == 0 ? 1 : y.m;
  long j = join_fields(a, b);
  if (j != 1) return j;
  // both rational: keep whichever extension tag is carried
  return x.m != 1 ? x.m : y.m;
}

}  // namespace

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  return FieldElement(x.u + y.u, x.v + y.v, tag(x, y));
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  return FieldElement(x.u - y.u, x.v - y.v, tag(x, y));
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  long m = tag(x, y);
  return FieldElement(x.u * y.u + Rat(m) * x.v * y.v, x.u * y.v + x.v * y.u, m);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DomainError("division by zero in field arithmetic");
  Rat n = norm();
  return FieldElement(u / n, -v / n, m);
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) { return x * y.inverse(); }

std::string FieldElement::str() const {
  if (v == 0) return to_string(u);
  std::string s;
  if (u != 0) s = to_string(u) + (v > 0 ? "+" : "-");
  else if (v < 0) s = "-";
  Rat av = abs(v);
  if (av != 1) s += to_string(av) + "*";
  s += "sqrt(" + std::to_string(m) + ")";
  return s;
}

std::optional<FieldElement> field_sqrt(const FieldElement& x, long m) {
  Rat r;
  if (x.is_zero()) return FieldElement(Rat(0), Rat(0), m);
  if (m == 1) {
    if (x.v != 0) throw DomainError("irrational element over Q");
    if (rat_sqrt(x.u, r)) return FieldElement(r);
    return std::nullopt;
  }
  if (x.v == 0) {
    if (rat_sqrt(x.u, r)) return FieldElement(r, Rat(0), m);
    if (rat_sqrt(x.u / Rat(m), r)) return FieldElement(Rat(0), r, m);
    return std::nullopt;
  }
  // (p + q sqrt m)^2 = p^2 + m q^2 + 2pq sqrt m
  Rat n;
  if (!rat_sqrt(x.norm(), n)) return std::nullopt;
  for (int sgn : {1, -1}) {
    Rat p2 = (x.u + Rat(sgn) * n) / 2;
    Rat p;
    if (p2 == 0 || !rat_sqrt(p2, p)) continue;
    Rat q = x.v / (2 * p);
    FieldElement cand(p, q, m);
    if (cand * cand == x) return cand;
  }
  return std::nullopt;
}

FieldElement field_pow(FieldElement x, long e) {
  if (e < 0) return field_pow(x.inverse(), -e);
  FieldElement acc(Rat(1), Rat(0), x.m);
  while (e > 0) {
    if (e & 1) acc = acc * x;
    x = x * x;
    e >>= 1;
  }
  return acc;
}

FieldElement parse_field_element(const std::string& s, long m) {
  RationalFunction f = parse_rational_function(s, m);
  if (f.num().degree() > 0 || f.den().degree() > 0)
    throw UsageError("'" + s + "' is not a constant");
  if (f.num().is_zero()) return FieldElement(Rat(0), Rat(0), m);
  return f.num().coeff(0) / f.den().coeff(0);
}

}  // namespace k3
