#pragma once

#include <array>
#include <string>

#include "k3/ratfun.hpp"

namespace k3::ellsurf {

struct Invariants {
  Poly b2, b4, b6, b8, c4, c6, disc;
};

/*
 * y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over K(t), K = Q(sqrt m).
 * Coefficients are polynomials in t.
 */
class WeierstrassModel {
 public:
  WeierstrassModel() = default;
  WeierstrassModel(long m, const Poly& a1, const Poly& a2, const Poly& a3, const Poly& a4,
                   const Poly& a6);
  static WeierstrassModel short_model(long m, const Poly& a4, const Poly& a6);

  long field() const { return m_; }
  const Poly& a1() const { return a_[0]; }
  const Poly& a2() const { return a_[1]; }
  const Poly& a3() const { return a_[2]; }
  const Poly& a4() const { return a_[3]; }
  const Poly& a6() const { return a_[4]; }
  const std::array<Poly, 5>& coeffs() const { return a_; }
  bool is_short() const { return a_[0].is_zero() && a_[2].is_zero(); }

  const Invariants& invariants() const { return inv_; }

  // Residual of the Weierstrass equation at (x, y).
  RationalFunction equation(const RationalFunction& x, const RationalFunction& y) const;
  bool on_curve(const RationalFunction& x, const RationalFunction& y) const;
  std::string str(const std::string& var = "t") const;

 private:
  long m_ = 1;
  std::array<Poly, 5> a_;
  Invariants inv_;
};

// Throws DomainError when the discriminant vanishes identically.
Invariants compute_invariants(long m, const std::array<Poly, 5>& a);

// The model y^2 = x^3 - 27 c4 x - 54 c6 together with the point map
// x' = 36x + 3 b2, y' = 108 (2y + a1 x + a3).
struct ShortForm {
  Poly A, B;  // y^2 = x^3 + A x + B
  RationalFunction map_x(const WeierstrassModel& w, const RationalFunction& x) const;
  RationalFunction map_y(const WeierstrassModel& w, const RationalFunction& x,
                         const RationalFunction& y) const;
};

ShortForm short_form(const WeierstrassModel& w);

}  // namespace k3::ellsurf
