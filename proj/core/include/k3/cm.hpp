#pragma once

#include <string>
#include <vector>

#include "k3/bqf.hpp"
#include "k3/numeric.hpp"

namespace k3::cm {

// (p + q sqrt(d)) / r with q > 0, r > 0, d < 0: a point of the upper half plane.
struct CMPoint {
  Int p, q, r, d;

  bqf::Form form() const;     // primitive form with root at this point
  Int point_disc() const;     // discriminant of form()
  num::Complex approx(unsigned bits) const;
  std::string str() const;    // "(-1+sqrt(-23))/4"
};

struct CMPair {
  CMPoint tau, tau_prime;
  bool e_isomorphic_eprime = false;
};

CMPair cm_points(const bqf::Form& q);

struct JValue {
  num::Complex value;
  unsigned bits = 0;
  int terms = 0;
  bool certified = false;
  Int integer;  // valid when certified
};

// j(tau) from the q-expansion of E4^3 / Delta after moving tau into the
// fundamental domain.  bits >= 64.
JValue j_cm(const CMPoint& tau, unsigned bits);

// Hilbert class polynomial, coefficients ascending.  Throws PrecisionError
// when rounding is not stable at the given and the doubled precision.
std::vector<Int> hilbert_class_poly(const Int& d, unsigned bits);

constexpr unsigned kDefaultBits = 256;

}  // namespace k3::cm
