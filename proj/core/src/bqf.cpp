#include "k3/bqf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>

namespace k3::bqf {

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Mat2 mat_identity() { return {Int(1), Int(0), Int(0), Int(1)}; }

Int mat_det(const Mat2& m) { return m[0] * m[3] - m[1] * m[2]; }

Int Form::content() const {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

bool Form::is_reduced() const {
  if (!(-a < b && b <= a && a <= c)) return false;
  if (a == c && b < 0) return false;
  return true;
}

std::string Form::str() const {
  return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
}

bool form_less(const Form& x, const Form& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.c != y.c) return x.c < y.c;
  Int ax = abs(x.b), ay = abs(y.b);
  if (ax != ay) return ax < ay;
  return x.b > y.b;
}

Form make_form(const Int& a, const Int& b, const Int& c) {
  Form f{a, b, c};
  if (a <= 0 || c <= 0 || f.disc() >= 0)
    throw DomainError("form " + f.str() + " is not positive definite");
  return f;
}

Form act(const Form& q, const Mat2& m) {
  // Q(px + ry, sx + ty) with m = ((p, r), (s, t)).
  const Int& p = m[0];
  const Int& r = m[1];
  const Int& s = m[2];
  const Int& t = m[3];
  Form out;
  out.a = q.value(p, s);
  out.c = q.value(r, t);
  out.b = 2 * q.a * p * r + q.b * (p * t + r * s) + 2 * q.c * s * t;
  return out;
}

Int discriminant(const Form& q) { return q.disc(); }

bool valid_discriminant(const Int& d) {
  if (d >= 0) return false;
  Int r = mod(d, 4);
  return r == 0 || r == 1;
}

Reduction reduce(const Form& q) {
  make_form(q.a, q.b, q.c);
  Form f = q;
  Mat2 w = mat_identity();
  for (;;) {
    // translate b into (-a, a]
    Int k = floor_div(f.a - f.b, 2 * f.a);
    if (k != 0) {
      Mat2 t{Int(1), k, Int(0), Int(1)};
      f = act(f, t);
      w = mat_mul(w, t);
    }
    if (f.a > f.c || (f.a == f.c && f.b < 0)) {
      Mat2 s{Int(0), Int(-1), Int(1), Int(0)};
      f = act(f, s);
      w = mat_mul(w, s);
      continue;
    }
    break;
  }
  return {f, w};
}

Form principal_form(const Int& d) {
  if (!valid_discriminant(d)) throw DomainError("invalid discriminant " + d.get_str());
  Int b = mod(d, 4) == 0 ? Int(0) : Int(1);
  return Form{Int(1), b, (b * b - d) / 4};
}

Form inverse(const Form& q) { return reduce(Form{q.a, -q.b, q.c}).form; }

bool is_principal(const Form& q) {
  return reduce(q).form == principal_form(q.disc());
}

Form compose(const Form& f, const Form& g) {
  if (f.disc() != g.disc())
    throw DomainError("cannot compose forms of discriminants " + f.disc().get_str() +
                      " and " + g.disc().get_str());
  if (!f.primitive() || !g.primitive())
    throw DomainError("composition needs primitive forms");
  const Int D = f.disc();
  Form f1 = f, f2 = g;
  if (f1.a > f2.a) std::swap(f1, f2);
  Int s = (f1.b + f2.b) / 2;
  Int n = f2.b - s;
  Int y1, d;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    Int u, v;
    d = ext_gcd(f2.a, f1.a, u, v);
    y1 = u;
  }
  Int x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    d1 = ext_gcd(s, d, x2, y2);
    y2 = -y2;
  }
  Int v1 = f1.a / d1;
  Int v2 = f2.a / d1;
  Int r = mod(y1 * y2 * n - x2 * f2.c, v1);
  Int b3 = f2.b + 2 * v2 * r;
  Int a3 = v1 * v2;
  Int c3 = (b3 * b3 - D) / (4 * a3);
  return reduce(Form{a3, b3, c3}).form;
}

Form power(const Form& f, Int n) {
  Form base = reduce(f).form;
  if (n < 0) {
    base = inverse(base);
    n = -n;
  }
  Form acc = principal_form(f.disc());
  while (n > 0) {
    if (n % 2 == 1) acc = compose(acc, base);
    n /= 2;
    if (n > 0) base = compose(base, base);
  }
  return acc;
}

std::vector<Form> reduced_forms(const Int& d, bool primitive_only) {
  if (!valid_discriminant(d)) throw DomainError("invalid discriminant " + d.get_str());
  std::vector<Form> out;
  Int amax = isqrt(-d / 3);
  for (Int a = 1; a <= amax; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      Int num = b * b - d;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      Form f{a, b, c};
      if (!f.is_reduced()) continue;
      if (primitive_only && !f.primitive()) continue;
      out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), form_less);
  return out;
}

Int form_order(const Form& q) {
  Form p = principal_form(q.disc());
  Form r = reduce(q).form;
  Form acc = r;
  Int k = 1;
  while (acc != p) {
    acc = compose(acc, r);
    ++k;
  }
  return k;
}

std::vector<Int> structure_from_orders(const std::vector<Int>& orders) {
  Int h = static_cast<unsigned long>(orders.size());
  std::vector<Int> primes;
  Int m = h;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) primes.push_back(m);

  // For each prime, exponents of the cyclic factors, largest first.
  std::vector<std::vector<std::pair<Int, int>>> parts;
  std::size_t width = 0;
  for (const Int& p : primes) {
    int e = 0;
    Int t = h;
    while (t % p == 0) {
      t /= p;
      ++e;
    }
    // count[k] = number of elements whose order divides p^k
    std::vector<long> count(e + 1, 0);
    for (const Int& o : orders) {
      Int pp = 1;
      for (int k = 0; k <= e; ++k) {
        if (pp % o == 0) count[k]++;
        pp *= p;
      }
    }
    // #{factors with exponent >= k} = log_p(count[k] / count[k-1])
    std::vector<int> ge(e + 1, 0);
    for (int k = 1; k <= e; ++k) {
      long ratio = count[k] / count[k - 1];
      int lg = 0;
      Int r = ratio;
      while (r > 1) {
        r /= p;
        ++lg;
      }
      ge[k] = lg;
    }
    std::vector<std::pair<Int, int>> exps;
    for (int k = 1; k <= e; ++k) {
      int exactly = ge[k] - (k < e ? ge[k + 1] : 0);
      for (int i = 0; i < exactly; ++i) exps.push_back({p, k});
    }
    std::sort(exps.begin(), exps.end(),
              [](const auto& x, const auto& y) { return x.second > y.second; });
    width = std::max(width, exps.size());
    parts.push_back(exps);
  }
  std::vector<Int> inv(width, Int(1));
  for (const auto& exps : parts)
    for (std::size_t i = 0; i < exps.size(); ++i) inv[i] *= int_pow(exps[i].first, exps[i].second);
  std::reverse(inv.begin(), inv.end());
  return inv;
}

ClassGroup class_group(const Int& d) {
  if (!valid_discriminant(d))
    throw DomainError("class group needs d < 0 with d = 0,1 mod 4, got " + d.get_str());
  ClassGroup g;
  g.d = d;
  g.elements = reduced_forms(d, true);
  g.principal = principal_form(d);
  std::vector<Int> orders;
  orders.reserve(g.elements.size());
  for (const Form& f : g.elements) orders.push_back(form_order(f));
  g.structure = structure_from_orders(orders);
  return g;
}

namespace {

void small_vectors(const Form& q, const Int& bound, std::vector<std::array<Int, 2>>& out) {
  // Q(x,y) <= bound implies y^2 <= 4a bound/|D| and x^2 <= 4c bound/|D|.
  Int D = -q.disc();
  Int ymax = isqrt(4 * q.a * bound / D) + 1;
  Int xmax = isqrt(4 * q.c * bound / D) + 1;
  for (Int x = -xmax; x <= xmax; ++x)
    for (Int y = -ymax; y <= ymax; ++y)
      if (q.value(x, y) <= bound && (x != 0 || y != 0)) out.push_back({x, y});
}

}  // namespace

AutomorphismGroup automorphism_group(const Form& q) {
  make_form(q.a, q.b, q.c);
  if (!q.is_reduced()) throw DomainError("automorphism_group needs a reduced form, got " + q.str());
  std::vector<std::array<Int, 2>> vecs;
  small_vectors(q, std::max(q.a, q.c), vecs);
  AutomorphismGroup g;
  for (const auto& v : vecs) {
    if (q.value(v[0], v[1]) != q.a) continue;
    for (const auto& w : vecs) {
      if (q.value(w[0], w[1]) != q.c) continue;
      Mat2 m{v[0], w[0], v[1], w[1]};
      Int det = mat_det(m);
      if (det != 1 && det != -1) continue;
      if (act(q, m) == q) g.matrices.push_back(m);
    }
  }
  g.order = static_cast<int>(g.matrices.size());
  if (q.b == 0 && q.a == q.c)
    g.name = "D8";
  else if (q.a == q.b && q.b == q.c)
    g.name = "D12";
  else if (q.b == 0 || q.a == q.b || q.a == q.c)
    g.name = "klein";
  else
    g.name = "trivial";
  return g;
}

GenusInfo genus_info(const Form& q) {
  if (!q.primitive()) throw DomainError("genus_info needs a primitive form");
  ClassGroup cg = class_group(q.disc());
  std::vector<Form> squares;
  for (const Form& f : cg.elements) squares.push_back(compose(f, f));
  std::sort(squares.begin(), squares.end(), form_less);
  squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
  Form r = reduce(q).form;
  GenusInfo info;
  for (const Form& s : squares) info.genus_members.push_back(compose(r, s));
  std::sort(info.genus_members.begin(), info.genus_members.end(), form_less);
  info.genus_size = squares.size();
  info.in_principal_genus = std::binary_search(squares.begin(), squares.end(), r, form_less);
  return info;
}

int kronecker_at_2(const Int& d) {
  Int r = mod(d, 8);
  if (r % 2 == 0) return 0;
  return (r == 1 || r == 7) ? 1 : -1;
}

namespace {

template <class Visit>
void for_each_reduced(long d, Visit&& visit) {
  long n = -d;
  for (long a = 1; 3 * a * a <= n; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b + n;
      if (num % (4 * a)) continue;
      long c = num / (4 * a);
      if (c < a || (a == c && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      if (!visit(a, b, c)) return;
    }
  }
}

bool valid_small(long d) {
  long r = ((d % 4) + 4) % 4;
  return d < 0 && (r == 0 || r == 1);
}

}  // namespace

long class_number(long d) {
  if (!valid_small(d)) throw DomainError("invalid discriminant " + std::to_string(d));
  long h = 0;
  for_each_reduced(d, [&](long, long, long) {
    ++h;
    return true;
  });
  return h;
}

bool is_two_torsion(long d) {
  if (!valid_small(d)) throw DomainError("invalid discriminant " + std::to_string(d));
  // A reduced form is its own inverse exactly when it is ambiguous.
  bool ok = true;
  for_each_reduced(d, [&](long a, long b, long c) {
    if (b == 0 || b == a || a == c) return true;
    ok = false;
    return false;
  });
  return ok;
}

std::vector<long> two_torsion_scan(long bound, int threads) {
  if (bound < 3) return {};
  threads = std::max(1, threads);
  std::vector<std::vector<long>> chunks(threads);
  auto work = [&](int id) {
    for (long n = 3 + id; n <= bound; n += threads) {
      long d = -n;
      if (valid_small(d) && is_two_torsion(d)) chunks[id].push_back(d);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work, i);
    for (auto& t : pool) t.join();
  }
  std::vector<long> out;
  for (auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end(), [](long x, long y) { return -x < -y; });
  return out;
}

}  // namespace k3::bqf
