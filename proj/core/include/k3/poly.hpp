#pragma once

#include <string>
#include <utility>
#include <vector>

#include "k3/field.hpp"

namespace k3 {

// Dense univariate polynomial over Q(sqrt(m)), coefficients ascending.
class Poly {
 public:
  Poly() = default;
  explicit Poly(long m) : m_(m) {}
  Poly(std::vector<FieldElement> coeffs, long m);
  static Poly constant(const FieldElement& x, long m);
  static Poly variable(long m);  // t
  static Poly monomial(const FieldElement& x, int k, long m);
  static Poly linear_root(const FieldElement& r, long m);  // t - r

  long field() const { return m_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(int i) const;
  FieldElement leading() const;
  int valuation() const;  // order of vanishing at t = 0; large if zero

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const FieldElement& x, const Poly& a);
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  FieldElement eval(const FieldElement& x) const;
  Poly compose(const Poly& inner) const;
  Poly shift(const FieldElement& r) const;  // p(t + r)
  Poly reversed(int n) const;               // t^n p(1/t), needs n >= degree
  Poly shift_down(int k) const;             // p / t^k, exact
  Poly truncate(int n) const;               // mod t^n
  Poly derivative() const;
  Poly monic() const;
  Poly pow(unsigned e) const;
  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<FieldElement> c_;
  long m_ = 1;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly exact_div(const Poly& a, const Poly& b);  // throws unless b | a
bool divides(const Poly& b, const Poly& a);
Poly gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0
int valuation_at(const Poly& f, const Poly& p);  // multiplicity of p in f

// Yun decomposition: f = lc * prod g_i^{e_i} with g_i squarefree, coprime.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

// 1/p mod t^n, p(0) != 0.
Poly series_inverse(const Poly& p, int n);

// Distinct roots of f lying in Q(sqrt(m)), sorted by (u, v).
std::vector<FieldElement> roots_in_field(const Poly& f);

bool field_less(const FieldElement& x, const FieldElement& y);

}  // namespace k3
