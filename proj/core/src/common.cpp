#include "k3/common.hpp"

#include <climits>

namespace k3 {

Int isqrt(const Int& n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod(const Int& a, const Int& b) {
  Int r;
  Int ab = abs(b);
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), ab.get_mpz_t());
  return r;
}

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

long to_long(const Int& n) {
  if (!n.fits_slong_p()) throw DomainError("integer out of machine range: " + n.get_str());
  return n.get_si();
}

Rat rat_from_string(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (ch != ' ') t += ch;
  if (t.empty()) throw UsageError("empty rational literal");
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  std::size_t slash = t.find('/');
  auto digits = [](const std::string& u) {
    if (u.empty()) return false;
    for (char ch : u)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  std::string num = t.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw UsageError("bad rational literal '" + s + "'");
  Int n(num), dd(den);
  if (dd == 0) throw UsageError("zero denominator in '" + s + "'");
  if (t[0] == '-') n = -n;
  Rat q(n, dd);
  q.canonicalize();
  return q;
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_pow(const Rat& q, long e) {
  if (e < 0) {
    if (q == 0) throw DomainError("zero to a negative power");
    return rat_pow(Rat(1) / q, -e);
  }
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(e));
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Int int_pow(const Int& q, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), e);
  return r;
}

bool rat_sqrt(const Rat& q, Rat& root) {
  if (q < 0) return false;
  if (!is_square(q.get_num()) || !is_square(q.get_den())) return false;
  root = Rat(isqrt(q.get_num()), isqrt(q.get_den()));
  return true;
}

Int squarefree_part(const Int& n) {
  if (n == 0) return 0;
  Int m = abs(n);
  Int out = 1;
  for (Int p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  out *= m;
  return n < 0 ? Int(-out) : out;
}

Rat frac(const Int& p, const Int& q) {
  if (q == 0) throw DomainError("zero denominator");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace k3
