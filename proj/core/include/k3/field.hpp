#pragma once

#include <optional>
#include <string>

#include "k3/common.hpp"

namespace k3 {

/*
 * u + v sqrt(m) in Q(sqrt(m)); m squarefree, m = 1 means Q (then v = 0).
 * Rational elements (v = 0) combine with any field tag.
 */
struct FieldElement {
  Rat u, v;
  long m = 1;

  FieldElement() = default;
  FieldElement(long x) : u(x) {}
  FieldElement(const Int& x) : u(x) {}
  FieldElement(const Rat& x) : u(x) {}
  FieldElement(const Rat& uu, const Rat& vv, long mm);

  bool is_zero() const { return u == 0 && v == 0; }
  bool is_rational() const { return v == 0; }
  FieldElement conj() const { return FieldElement(u, -v, m); }
  Rat norm() const { return u * u - Rat(m) * v * v; }
  std::string str() const;

  FieldElement operator-() const { return FieldElement(-u, -v, m); }
  FieldElement inverse() const;
  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  bool operator==(const FieldElement& o) const { return u == o.u && v == o.v; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
};

// Field tag of a combination; throws DomainError on two different extensions.
long join_fields(long m1, long m2);

// Validates a field tag: squarefree and not 0 (1 = Q).
long check_field(long m);

// Square root inside Q(sqrt(m)) when it exists.
std::optional<FieldElement> field_sqrt(const FieldElement& x, long m);

FieldElement field_pow(FieldElement x, long e);

// "3", "-1/2", "[u, v]" style pairs are handled by callers; this parses
// "p/q" and "p/q+r/s*sqrt(m)" forms.
FieldElement parse_field_element(const std::string& s, long m);

}  // namespace k3
