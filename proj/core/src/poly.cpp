#include "k3/poly.hpp"

#include <algorithm>

#include "k3/numeric.hpp"

namespace k3 {

Poly::Poly(std::vector<FieldElement> coeffs, long m) : c_(std::move(coeffs)), m_(m) {
  for (const auto& x : c_)
    if (!x.is_rational()) m_ = join_fields(m_, x.m);
  trim();
}

Poly Poly::constant(const FieldElement& x, long m) { return Poly({x}, m); }

Poly Poly::variable(long m) { return Poly({FieldElement(0), FieldElement(1)}, m); }

Poly Poly::monomial(const FieldElement& x, int k, long m) {
  std::vector<FieldElement> c(k + 1, FieldElement(0));
  c[k] = x;
  return Poly(c, m);
}

Poly Poly::linear_root(const FieldElement& r, long m) { return Poly({-r, FieldElement(1)}, m); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  for (auto& x : c_) x.m = m_;
}

FieldElement Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return FieldElement(Rat(0), Rat(0), m_);
  return c_[i];
}

FieldElement Poly::leading() const {
  if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return c_.back();
}

int Poly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<int>(i);
  return 1 << 28;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  long m = join_fields(a.m_, b.m_);
  std::vector<FieldElement> c(std::max(a.c_.size(), b.c_.size()), FieldElement(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(c, m);
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  long m = join_fields(a.m_, b.m_);
  if (a.is_zero() || b.is_zero()) return Poly(m);
  std::vector<FieldElement> c(a.c_.size() + b.c_.size() - 1, FieldElement(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(c, m);
}

Poly operator*(const FieldElement& x, const Poly& a) {
  return Poly::constant(x, a.field()) * a;
}

FieldElement Poly::eval(const FieldElement& x) const {
  FieldElement acc(Rat(0), Rat(0), m_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc(join_fields(m_, inner.field()));
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly::constant(c_[i], m_);
  return acc;
}

Poly Poly::shift(const FieldElement& r) const {
  // Horner with t + r
  Poly lin({r, FieldElement(1)}, join_fields(m_, r.is_rational() ? 1 : r.m));
  return compose(lin);
}

Poly Poly::reversed(int n) const {
  if (n < degree()) throw DomainError("reversal degree below polynomial degree");
  std::vector<FieldElement> c(n + 1, FieldElement(0));
  for (int i = 0; i <= degree(); ++i) c[n - i] = c_[i];
  return Poly(c, m_);
}

Poly Poly::shift_down(int k) const {
  if (k == 0 || is_zero()) return *this;
  if (valuation() < k) throw DomainError("polynomial not divisible by t^" + std::to_string(k));
  return Poly(std::vector<FieldElement>(c_.begin() + k, c_.end()), m_);
}

Poly Poly::truncate(int n) const {
  if (degree() < n) return *this;
  return Poly(std::vector<FieldElement>(c_.begin(), c_.begin() + n), m_);
}

Poly Poly::derivative() const {
  std::vector<FieldElement> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(FieldElement(static_cast<long>(i)) * c_[i]);
  return Poly(c, m_);
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  FieldElement inv = leading().inverse();
  return inv * *this;
}

Poly Poly::pow(unsigned e) const {
  Poly acc = Poly::constant(FieldElement(1), m_);
  Poly b = *this;
  while (e) {
    if (e & 1) acc *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return acc;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const FieldElement& x = c_[i];
    if (x.is_zero()) continue;
    std::string cs = x.str();
    bool compound = !x.is_rational() && x.u != 0;
    bool neg = !compound && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (compound) cs = "(" + cs + ")";
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (cs != "1") out += cs + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  long m = join_fields(a.field(), b.field());
  Poly r = a;
  std::vector<FieldElement> q(std::max(0, a.degree() - b.degree() + 1), FieldElement(0));
  FieldElement inv = b.leading().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int k = r.degree() - b.degree();
    FieldElement f = r.leading() * inv;
    q[k] = f;
    r = r - Poly::monomial(f, k, m) * b;
  }
  return {Poly(q, m), r};
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

bool divides(const Poly& b, const Poly& a) { return divmod(a, b).second.is_zero(); }

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

int valuation_at(const Poly& f, const Poly& p) {
  if (f.is_zero()) return 1 << 28;
  if (p.degree() < 1) throw DomainError("valuation at a constant");
  int v = 0;
  Poly g = f;
  for (;;) {
    auto [q, r] = divmod(g, p);
    if (!r.is_zero()) return v;
    g = q;
    ++v;
  }
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  if (f.degree() < 1) return out;
  Poly fm = f.monic();
  Poly a = gcd(fm, fm.derivative());
  Poly b = exact_div(fm, a);
  Poly c = exact_div(fm.derivative(), a);
  Poly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly g = gcd(b, d);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
    if (g.degree() > 0) out.push_back({g, i});
    ++i;
  }
  return out;
}

Poly series_inverse(const Poly& p, int n) {
  if (p.coeff(0).is_zero()) throw DomainError("series inverse needs a unit constant term");
  long m = p.field();
  FieldElement inv0 = p.coeff(0).inverse();
  std::vector<FieldElement> out(n, FieldElement(0));
  for (int k = 0; k < n; ++k) {
    FieldElement s = k == 0 ? FieldElement(1) : FieldElement(0);
    for (int j = 1; j <= k; ++j) s -= p.coeff(j) * out[k - j];
    out[k] = s * inv0;
  }
  return Poly(out, m);
}

bool field_less(const FieldElement& x, const FieldElement& y) {
  if (x.u != y.u) return x.u < y.u;
  return x.v < y.v;
}

namespace {

std::size_t bit_size(const Rat& q) {
  return std::max(mpz_sizeinbase(q.get_num().get_mpz_t(), 2), mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
}

std::vector<num::Complex> embed(const Poly& g, long m, int sign, unsigned bits) {
  num::PrecisionGuard guard(bits);
  num::Real rt = m == 1 ? num::Real(0) : boost::multiprecision::sqrt(num::Real(std::labs(m)));
  std::vector<num::Complex> c;
  for (const auto& x : g.coeffs()) {
    num::Real u = num::to_real(x.u);
    num::Real v = num::to_real(x.v) * rt * sign;
    if (m < 0) c.emplace_back(u, v);
    else c.emplace_back(u + v, num::Real(0));
  }
  return c;
}

}  // namespace

std::vector<FieldElement> roots_in_field(const Poly& f) {
  std::vector<FieldElement> roots;
  if (f.degree() < 1) return roots;
  const long m = f.field();
  Poly g = exact_div(f, gcd(f, f.derivative()));

  // Scale into Z[sqrt m] and make the leading coefficient a rational integer.
  Int den = 1;
  for (const auto& x : g.coeffs()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.u.get_den().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.v.get_den().get_mpz_t());
  }
  g = FieldElement(Rat(den)) * g;
  if (!g.leading().is_rational()) g = g.leading().conj() * g;
  const Int L = g.leading().u.get_num();

  std::size_t maxbits = 0;
  for (const auto& x : g.coeffs()) maxbits = std::max({maxbits, bit_size(x.u), bit_size(x.v)});
  unsigned bits = static_cast<unsigned>(96 + 4 * maxbits + 8 * g.degree());

  auto accept = [&](const FieldElement& r) {
    if (!g.eval(r).is_zero()) return;
    for (const auto& s : roots)
      if (s == r) return;
    roots.push_back(r);
  };

  num::PrecisionGuard guard(bits);
  const num::Real Lr = num::to_real(L);
  if (m == 1 || m < 0) {
    auto z = num::poly_roots(embed(g, m, 1, bits), bits);
    num::Real rt = m == 1 ? num::Real(1) : boost::multiprecision::sqrt(num::Real(std::labs(m)));
    for (const auto& w : z) {
      if (m == 1) {
        if (boost::multiprecision::abs(w.im) > num::Real(1e-6) * (num::abs(w) + 1)) continue;
        Int x = num::round_to_int(Lr * w.re);
        Rat u(x, L);
        u.canonicalize();
        accept(FieldElement(u));
      } else {
        Int x = num::round_to_int(2 * Lr * w.re);
        Int y = num::round_to_int(2 * Lr * w.im / rt);
        Rat u(x, 2 * L), v(y, 2 * L);
        u.canonicalize();
        v.canonicalize();
        accept(FieldElement(u, v, m));
      }
    }
  } else {
    auto z1 = num::poly_roots(embed(g, m, 1, bits), bits);
    auto z2 = num::poly_roots(embed(g, m, -1, bits), bits);
    num::Real rt = boost::multiprecision::sqrt(num::Real(m));
    num::Real tol = num::Real(1e-6);
    for (const auto& a : z1) {
      if (boost::multiprecision::abs(a.im) > tol * (num::abs(a) + 1)) continue;
      for (const auto& b : z2) {
        if (boost::multiprecision::abs(b.im) > tol * (num::abs(b) + 1)) continue;
        Int x = num::round_to_int(Lr * (a.re + b.re));
        Int y = num::round_to_int(Lr * (a.re - b.re) / rt);
        Rat u(x, 2 * L), v(y, 2 * L);
        u.canonicalize();
        v.canonicalize();
        accept(FieldElement(u, v, m));
      }
    }
  }
  for (auto& r : roots) r.m = m;
  std::sort(roots.begin(), roots.end(), field_less);
  return roots;
}

}  // namespace k3
