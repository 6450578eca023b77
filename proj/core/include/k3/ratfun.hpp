#pragma once

#include <string>

#include "k3/poly.hpp"

namespace k3 {

// num/den in lowest terms with den monic.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(long m) : num_(m), den_(Poly::constant(FieldElement(1), m)) {}
  RationalFunction(const Poly& n);
  RationalFunction(const Poly& n, const Poly& d);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  long field() const { return join_fields(num_.field(), den_.field()); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  int valuation_at_zero() const { return num_.valuation() - den_.valuation(); }
  int valuation_at_infinity() const { return den_.degree() - num_.degree(); }

  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  RationalFunction pow(long e) const;
  RationalFunction shift(const FieldElement& r) const { return {num_.shift(r), den_.shift(r)}; }
  FieldElement eval(const FieldElement& x) const;
  std::string str(const std::string& var = "t") const;

 private:
  Poly num_, den_;
};

// f(phi) for a polynomial or rational function f.
RationalFunction substitute(const Poly& f, const RationalFunction& phi);
RationalFunction substitute(const RationalFunction& f, const RationalFunction& phi);

// Power series of f at t = 0: returns (v, coefficients c_0..c_{n-1}) with
// f = t^v (c_0 + c_1 t + ...).  f must be nonzero.
std::pair<int, Poly> laurent(const RationalFunction& f, int n);

// Parses expressions in one variable with + - * / ^, parentheses, implicit
// multiplication and sqrt(k) constants, e.g. "-12t^3/(9t-1)^2".
RationalFunction parse_rational_function(const std::string& text, long m);

}  // namespace k3
