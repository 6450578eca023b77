#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

#include "k3/common.hpp"

namespace k3::num {

using Real = boost::multiprecision::mpfr_float;

unsigned digits10_for_bits(unsigned bits);

// Sets the working precision of newly created Reals for its lifetime.
// The underlying default is process wide, so numeric code is single threaded.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

struct Complex {
  Real re, im;
  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}
  Complex(const Real& r, const Real& i) : re(r), im(i) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator-() const { return {-re, -im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Complex operator/(const Complex& o) const {
    Real n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
};

Real to_real(const Int& n);
Real to_real(const Rat& q);
Real abs(const Complex& z);
Complex exp(const Complex& z);
Real pi();
Int round_to_int(const Real& x);
std::string to_string(const Real& x, int digits = 30);

// All complex roots of a polynomial (coefficients ascending, nonzero
// leading term) by Aberth iteration.  Returns roots with multiplicity.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs, unsigned bits);

}  // namespace k3::num
