#include "k3/cm.hpp"

#include <cmath>

namespace k3::cm {

using num::Complex;
using num::Real;

bqf::Form CMPoint::form() const {
  // r tau - p = q sqrt(d)  =>  r^2 tau^2 - 2pr tau + p^2 - q^2 d = 0
  Int a = r * r, b = -2 * p * r, c = p * p - q * q * d;
  bqf::Form f{a, b, c};
  Int g = f.content();
  return bqf::Form{a / g, b / g, c / g};
}

Int CMPoint::point_disc() const { return form().disc(); }

num::Complex CMPoint::approx(unsigned bits) const {
  num::PrecisionGuard guard(bits);
  Real rr = num::to_real(r);
  return Complex(num::to_real(p) / rr,
                 num::to_real(q) * boost::multiprecision::sqrt(num::to_real(Int(-d))) / rr);
}

std::string CMPoint::str() const {
  std::string num;
  if (p != 0) num = p.get_str() + "+";
  if (q != 1) num += q.get_str() + "*";
  num += "sqrt(" + d.get_str() + ")";
  if (r == 1) return p == 0 ? num : "(" + num + ")";
  return "(" + num + ")/" + r.get_str();
}

namespace {

// Pull square factors out of d and cancel the common content of p, q, r.
CMPoint normalized(Int p, Int q, Int r, const Int& d) {
  Int d0 = squarefree_part(d);
  q *= isqrt(d / d0);
  Int g = gcd(gcd(p, q), r);
  return CMPoint{p / g, q / g, r / g, d0};
}

}  // namespace

CMPair cm_points(const bqf::Form& q) {
  bqf::make_form(q.a, q.b, q.c);
  if (!q.primitive()) throw DomainError("cm_points needs a primitive form, got " + q.str());
  Int d = q.disc();
  CMPair out;
  out.tau = normalized(-q.b, Int(1), 2 * q.a, d);
  out.tau_prime = normalized(q.b, Int(1), Int(2), d);
  out.e_isomorphic_eprime = bqf::is_principal(q);
  return out;
}

namespace {

int choose_terms(const Real& im, unsigned bits) {
  // sum_{n>N} sigma3(n) |q|^n <= sum n^4 |q|^n, with |q| = exp(-2 pi im)
  double lq = -2 * M_PI * static_cast<double>(im) / std::log(2.0);  // log2 |q|
  int N = 8;
  while (4 * std::log2(static_cast<double>(N + 1)) + (N + 1) * lq + 1 > -static_cast<double>(bits)) ++N;
  return std::max(64, N);
}

}  // namespace

JValue j_cm(const CMPoint& tau, unsigned bits) {
  if (bits < 64) throw DomainError("j_cm needs at least 64 bits of precision");
  bqf::Form f = bqf::reduce(tau.form()).form;
  Int D = f.disc();
  JValue out;
  out.bits = bits;
  num::PrecisionGuard guard(bits);
  Real two_a = num::to_real(Int(2 * f.a));
  Real x = -num::to_real(f.b) / two_a;
  Real y = boost::multiprecision::sqrt(num::to_real(Int(-D))) / two_a;
  out.terms = choose_terms(y, bits);

  Complex two_pi_i(Real(0), 2 * num::pi());
  Complex qv = num::exp(two_pi_i * Complex(x, y));
  Complex e4(Real(1)), prod(Real(1)), qn(Real(1));
  for (int n = 1; n <= out.terms; ++n) {
    qn = qn * qv;
    long s3 = 0;
    for (long k = 1; k <= n; ++k)
      if (n % k == 0) s3 += k * k * k;
    e4 += qn * Complex(Real(240 * s3));
    Complex one_minus = Complex(Real(1)) - qn;
    Complex p2 = one_minus * one_minus, p4 = p2 * p2, p8 = p4 * p4, p16 = p8 * p8;
    prod = prod * p16 * p8;
  }
  Complex delta = qv * prod;
  out.value = e4 * e4 * e4 / delta;

  Real near = boost::multiprecision::round(out.value.re);
  Real resid = num::abs(out.value - Complex(near));
  bool class_one = bqf::class_number(to_long(D)) == 1;
  if (class_one) {
    if (resid < Real(1e-10)) {
      out.certified = true;
      out.integer = num::round_to_int(near);
    } else {
      throw PrecisionError("j(" + tau.str() + ") is not resolved at " + std::to_string(bits) +
                           " bits; retry with more precision");
    }
  }
  return out;
}

namespace {

std::vector<Int> class_poly_at(const bqf::ClassGroup& cg, unsigned bits) {
  num::PrecisionGuard guard(bits);
  std::vector<Complex> poly{Complex(Real(1))};
  for (const auto& f : cg.elements) {
    CMPoint t{-f.b, Int(1), 2 * f.a, cg.d};
    JValue j = j_cm(t, bits);
    std::vector<Complex> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * j.value;
    }
    poly = next;
  }
  std::vector<Int> coeffs;
  for (const auto& c : poly) {
    Real r = boost::multiprecision::round(c.re);
    if (num::abs(c - Complex(r)) > Real(1e-6))
      throw PrecisionError("class polynomial coefficient not integral at " + std::to_string(bits) +
                           " bits (residual " + num::to_string(num::abs(c - Complex(r)), 6) + ")");
    coeffs.push_back(num::round_to_int(r));
  }
  return coeffs;
}

}  // namespace

std::vector<Int> hilbert_class_poly(const Int& d, unsigned bits) {
  if (bits < 64) throw DomainError("hilbert_class_poly needs at least 64 bits");
  bqf::ClassGroup cg = bqf::class_group(d);
  std::vector<Int> first = class_poly_at(cg, bits);
  std::vector<Int> second = class_poly_at(cg, 2 * bits);
  if (first != second)
    throw PrecisionError("class polynomial for d = " + d.get_str() + " changed under precision doubling");
  return first;
}

}  // namespace k3::cm
