#include "k3/numeric.hpp"

#include <cmath>
#include <sstream>

namespace k3::num {

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

Real to_real(const Int& n) { return Real(n.get_mpz_t()); }

Real to_real(const Rat& q) { return to_real(q.get_num()) / to_real(q.get_den()); }

Real abs(const Complex& z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

Real pi() { return boost::multiprecision::acos(Real(-1)); }

Int round_to_int(const Real& x) {
  Real r = boost::multiprecision::round(x);
  Int out;
  mpfr_get_z(out.get_mpz_t(), r.backend().data(), MPFR_RNDN);
  return out;
}

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

namespace {

Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
  return acc;
}

}  // namespace

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs, unsigned bits) {
  PrecisionGuard guard(bits);
  std::size_t n = coeffs.size() - 1;
  if (coeffs.empty() || n == 0) return {};
  std::vector<Complex> c(coeffs.size());
  for (std::size_t i = 0; i <= n; ++i) c[i] = Complex(Real(coeffs[i].re), Real(coeffs[i].im));
  std::vector<Complex> dc(n);
  for (std::size_t i = 1; i <= n; ++i) dc[i - 1] = c[i] * Complex(Real(static_cast<unsigned long>(i)));

  // Cauchy bound for the initial circle.
  Real lead = abs(c[n]);
  Real radius = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Real r = abs(c[i]) / lead;
    if (r > radius) radius = r;
  }
  radius += 1;
  std::vector<Complex> z(n);
  Real two_pi = 2 * pi();
  for (std::size_t k = 0; k < n; ++k) {
    Real ang = two_pi * Real(static_cast<unsigned long>(k)) / Real(static_cast<unsigned long>(n)) + Real(0.4);
    z[k] = Complex(radius * boost::multiprecision::cos(ang), radius * boost::multiprecision::sin(ang)) *
           Complex(Real(0.5));
  }
  Real eps = boost::multiprecision::pow(Real(2), -static_cast<int>(bits) + 16);
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Complex p = horner(c, z[k]);
      Complex dp = horner(dc, z[k]);
      if (abs(p) == 0) continue;
      Complex ratio = p / dp;
      Complex s;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) {
          Complex diff = z[k] - z[j];
          if (abs(diff) != 0) s += Complex(Real(1)) / diff;
        }
      Complex w = ratio / (Complex(Real(1)) - ratio * s);
      z[k] -= w;
      Real rel = abs(w) / (abs(z[k]) + 1);
      if (rel > worst) worst = rel;
    }
    if (worst < eps) break;
  }
  return z;
}

}  // namespace k3::num
