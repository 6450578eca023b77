#include "k3/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace k3::lattice {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw UsageError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw DomainError("matrix shape mismatch");
  Matrix p(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
    }
  return p;
}

Matrix Matrix::scaled(const Int& s) const {
  Matrix m = *this;
  for (auto& x : m.v_) x *= s;
  return m;
}

std::vector<std::vector<Int>> Matrix::to_rows() const {
  std::vector<std::vector<Int>> out(r_, std::vector<Int>(c_));
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

Int determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  Matrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

SmithForm smith_normal_form(const Matrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  Matrix a = m;
  Matrix u = Matrix::identity(r), v = Matrix::identity(c);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < c; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < r; ++k) std::swap(u(i, k), u(j, k));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < r; ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < c; ++k) std::swap(v(k, i), v(k, j));
  };
  // row_i += f * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Int& f) {
    for (std::size_t k = 0; k < c; ++k) a(i, k) += f * a(j, k);
    for (std::size_t k = 0; k < r; ++k) u(i, k) += f * u(j, k);
  };
  auto add_col = [&](std::size_t i, std::size_t j, const Int& f) {
    for (std::size_t k = 0; k < r; ++k) a(k, i) += f * a(k, j);
    for (std::size_t k = 0; k < c; ++k) v(k, i) += f * v(k, j);
  };

  std::size_t lim = std::min(r, c);
  for (std::size_t t = 0; t < lim; ++t) {
    for (;;) {
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a(i, j) != 0 && (pi == r || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == r) break;
      if (pi != t) swap_rows(t, pi);
      if (pj != t) swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Int q = a(i, t) / a(t, t);
        add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Int q = a(t, j) / a(t, t);
        add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row(t, i, Int(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t k = 0; k < c; ++k) a(t, k) = -a(t, k);
      for (std::size_t k = 0; k < r; ++k) u(t, k) = -u(t, k);
    }
  }
  SmithForm s;
  for (std::size_t t = 0; t < lim; ++t) s.diagonal.push_back(a(t, t));
  s.U = u;
  s.V = v;
  return s;
}

EvenLattice make_lattice(const Matrix& gram) {
  if (gram.rows() != gram.cols()) throw DomainError("Gram matrix must be square");
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (gram(i, i) % 2 != 0) throw DomainError("Gram matrix has odd diagonal entry");
    for (std::size_t j = 0; j < i; ++j)
      if (gram(i, j) != gram(j, i)) throw DomainError("Gram matrix is not symmetric");
  }
  EvenLattice l{gram};
  if (gram.rows() > 0 && l.det() == 0) throw DomainError("Gram matrix is degenerate");
  return l;
}

EvenLattice hyperbolic_plane() {
  return make_lattice(Matrix::from_rows({{0, 1}, {1, 0}}));
}

EvenLattice root_lattice(char family, int n) {
  Matrix g(n > 0 ? n : 0, n > 0 ? n : 0);
  auto link = [&](int i, int j) {
    g(i, j) = -1;
    g(j, i) = -1;
  };
  switch (family) {
    case 'A':
      if (n < 1) throw DomainError("A_n needs n >= 1");
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'D':
      if (n < 4) throw DomainError("D_n needs n >= 4");
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      if (n < 6 || n > 8) throw DomainError("E_n needs n in {6,7,8}");
      // chain 0..n-2, extra node hung on node 2
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(2, n - 1);
      break;
    default:
      throw DomainError(std::string("unknown root lattice family ") + family);
  }
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  return make_lattice(g);
}

EvenLattice rank_one(const Int& value) {
  Matrix g(1, 1);
  g(0, 0) = value;
  return make_lattice(g);
}

EvenLattice from_form(const bqf::Form& q) {
  return make_lattice(Matrix::from_rows({{2 * q.a, q.b}, {q.b, 2 * q.c}}));
}

EvenLattice rescale(const EvenLattice& l, const Int& n) {
  if (n == 0) throw DomainError("rescaling by 0");
  return make_lattice(l.gram.scaled(n));
}

EvenLattice direct_sum(const std::vector<EvenLattice>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  Matrix g(n, n);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram(i, j);
    off += p.rank();
  }
  return EvenLattice{g};
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char ch) {
    skip();
    if (i < s.size() && s[i] == ch) {
      ++i;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  Int integer() {
    skip();
    std::size_t st = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::string tok = s.substr(st, i - st);
    if (tok.empty() || tok == "-" || tok == "+") fail("integer expected");
    if (tok[0] == '+') tok.erase(0, 1);
    return Int(tok);
  }
  [[noreturn]] void fail(const std::string& why) {
    throw UsageError("lattice expression '" + s + "': " + why + " at offset " + std::to_string(i));
  }
};

std::string normalize_expr(const std::string& in) {
  std::string out;
  for (std::size_t i = 0; i < in.size();) {
    // UTF-8 angle brackets and circled plus
    if (in.compare(i, 3, "⟨") == 0) { out += '<'; i += 3; continue; }
    if (in.compare(i, 3, "⟩") == 0) { out += '>'; i += 3; continue; }
    if (in.compare(i, 3, "⊕") == 0) { out += '+'; i += 3; continue; }
    if (in.compare(i, 3, "−") == 0) { out += '-'; i += 3; continue; }
    out += in[i++];
  }
  return out;
}

EvenLattice parse_term(Cursor& cur) {
  Int mult = 1;
  if (cur.peek_digit()) mult = cur.integer();
  cur.skip();
  if (cur.i >= cur.s.size()) cur.fail("lattice name expected");
  EvenLattice base;
  char ch = cur.s[cur.i];
  if (ch == 'U') {
    ++cur.i;
    base = hyperbolic_plane();
  } else if (ch == 'A' || ch == 'D' || ch == 'E') {
    ++cur.i;
    if (!cur.peek_digit()) cur.fail("rank expected after root lattice name");
    base = root_lattice(ch, to_long(cur.integer()));
  } else if (ch == '<') {
    ++cur.i;
    Int v = cur.integer();
    if (!cur.eat('>')) cur.fail("'>' expected");
    base = rank_one(v);
  } else if (ch == 'Q') {
    ++cur.i;
    if (!cur.eat('(')) cur.fail("'(' expected");
    Int a = cur.integer();
    if (!cur.eat(',')) cur.fail("',' expected");
    Int b = cur.integer();
    if (!cur.eat(',')) cur.fail("',' expected");
    Int c = cur.integer();
    if (!cur.eat(')')) cur.fail("')' expected");
    base = from_form(bqf::make_form(a, b, c));
  } else {
    cur.fail(std::string("unknown lattice name '") + ch + "'");
  }
  while (cur.eat('(')) {
    Int n = cur.integer();
    if (!cur.eat(')')) cur.fail("')' expected");
    base = rescale(base, n);
  }
  if (mult < 1) cur.fail("multiplicity must be positive");
  std::vector<EvenLattice> copies(to_long(mult), base);
  return direct_sum(copies);
}

}  // namespace

EvenLattice build_lattice(const std::string& expr) {
  std::string s = normalize_expr(expr);
  Cursor cur{s};
  std::vector<EvenLattice> parts;
  parts.push_back(parse_term(cur));
  while (cur.eat('+')) parts.push_back(parse_term(cur));
  cur.skip();
  if (cur.i != s.size()) cur.fail("trailing input");
  return make_lattice(direct_sum(parts).gram);
}

std::vector<Int> smith_invariants(const EvenLattice& l) {
  if (l.det() == 0) throw DomainError("smith_invariants of a singular Gram matrix");
  std::vector<Int> out;
  for (const Int& d : smith_normal_form(l.gram).diagonal)
    if (d != 1) out.push_back(d);
  return out;
}

std::pair<int, int> signature(const EvenLattice& l) {
  std::size_t n = l.rank();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = l.gram(i, j);
  int pos = 0, neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][p] == 0) ++p;
      if (p < n) {
        std::swap(a[k], a[p]);
        for (auto& row : a) std::swap(row[k], row[p]);
      } else {
        p = k + 1;
        while (p < n && a[k][p] == 0) ++p;
        if (p == n) continue;  // degenerate direction
        // e_k += e_p makes the diagonal 2 a[k][p] + a[p][p] = 2 a[k][p]
        for (std::size_t j = 0; j < n; ++j) a[k][j] += a[p][j];
        for (std::size_t j = 0; j < n; ++j) a[j][k] += a[j][p];
      }
    }
    const Rat piv = a[k][k];
    (piv > 0 ? pos : neg)++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rat f = a[i][k] / piv;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      for (std::size_t j = k; j < n; ++j) a[j][i] = a[i][j];
    }
  }
  return {pos, neg};
}

Rat mod2(const Rat& x) {
  Int n = x.get_num(), d = x.get_den();
  Rat r(mod(n, 2 * d), d);
  r.canonicalize();
  return r;
}

Rat mod1(const Rat& x) {
  Int n = x.get_num(), d = x.get_den();
  Rat r(mod(n, d), d);
  r.canonicalize();
  return r;
}

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<Int> factors,
                                         std::vector<std::vector<Rat>> gen_gram)
    : factors_(std::move(factors)), gram_(std::move(gen_gram)) {}

Int FiniteQuadraticForm::order() const {
  Int o = 1;
  for (const Int& d : factors_) o *= d;
  return o;
}

std::vector<FiniteQuadraticForm::Element> FiniteQuadraticForm::elements() const {
  std::vector<Element> out;
  Element x(factors_.size(), Int(0));
  for (;;) {
    out.push_back(x);
    std::size_t i = 0;
    while (i < x.size()) {
      if (++x[i] < factors_[i]) break;
      x[i] = 0;
      ++i;
    }
    if (i == x.size()) break;
  }
  return out;
}

Rat FiniteQuadraticForm::q(const Element& x) const {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    s += Rat(x[i] * x[i]) * gram_[i][i];
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[j] != 0) s += Rat(2 * x[i] * x[j]) * gram_[i][j];
  }
  return mod2(s);
}

Rat FiniteQuadraticForm::b(const Element& x, const Element& y) const {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) s += Rat(x[i] * y[j]) * gram_[i][j];
  }
  return mod1(s);
}

FiniteQuadraticForm::Element FiniteQuadraticForm::add(const Element& x, const Element& y) const {
  Element z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod(x[i] + y[i], factors_[i]);
  return z;
}

FiniteQuadraticForm::Element FiniteQuadraticForm::neg(const Element& x) const {
  Element z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod(-x[i], factors_[i]);
  return z;
}

bool FiniteQuadraticForm::is_zero(const Element& x) const {
  for (const Int& v : x)
    if (v != 0) return false;
  return true;
}

FiniteQuadraticForm FiniteQuadraticForm::negated() const {
  auto g = gram_;
  for (auto& row : g)
    for (auto& v : row) v = -v;
  return FiniteQuadraticForm(factors_, g);
}

FiniteQuadraticForm discriminant_form(const EvenLattice& l) {
  if (l.det() == 0) throw DomainError("discriminant form of a degenerate lattice");
  SmithForm s = smith_normal_form(l.gram);
  Matrix w = s.V.transpose() * l.gram * s.V;
  std::vector<std::size_t> keep;
  std::vector<Int> factors;
  for (std::size_t i = 0; i < s.diagonal.size(); ++i)
    if (s.diagonal[i] != 1) {
      keep.push_back(i);
      factors.push_back(s.diagonal[i]);
    }
  std::vector<std::vector<Rat>> g(keep.size(), std::vector<Rat>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) {
      Rat v(w(keep[i], keep[j]), factors[i] * factors[j]);
      v.canonicalize();
      g[i][j] = v;
    }
  return FiniteQuadraticForm(factors, g);
}

IsoResult disc_forms_isomorphic(const FiniteQuadraticForm& f1, const FiniteQuadraticForm& f2,
                                int sign, long max_order) {
  IsoResult res;
  if (f1.invariant_factors() != f2.invariant_factors()) return res;
  if (f1.order() > max_order)
    throw DomainError("discriminant group of order " + f1.order().get_str() +
                      " exceeds the exhaustive search limit");
  const FiniteQuadraticForm g2 = sign < 0 ? f2.negated() : f2;
  const std::size_t n = f1.ngens();
  auto elems = g2.elements();

  auto times = [&](const FiniteQuadraticForm::Element& x, const Int& k) {
    FiniteQuadraticForm::Element z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod(x[i] * k, g2.invariant_factors()[i]);
    return z;
  };

  std::vector<std::vector<std::size_t>> cand(n);
  for (std::size_t i = 0; i < n; ++i) {
    FiniteQuadraticForm::Element gi(n, Int(0));
    gi[i] = 1;
    Rat qi = f1.q(gi);
    for (std::size_t k = 0; k < elems.size(); ++k) {
      if (!g2.is_zero(times(elems[k], f1.invariant_factors()[i]))) continue;
      if (g2.q(elems[k]) == qi) cand[i].push_back(k);
    }
  }

  std::vector<std::size_t> pick(n);
  auto unit = [&](std::size_t i) {
    FiniteQuadraticForm::Element gi(n, Int(0));
    gi[i] = 1;
    return gi;
  };
  auto bijective = [&]() {
    std::vector<FiniteQuadraticForm::Element> seen;
    for (const auto& x : f1.elements()) {
      FiniteQuadraticForm::Element img(n, Int(0));
      for (std::size_t i = 0; i < n; ++i) img = g2.add(img, times(elems[pick[i]], x[i]));
      seen.push_back(img);
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == n) return bijective();
    for (std::size_t k : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = g2.b(elems[k], elems[pick[j]]) == f1.b(unit(i), unit(j));
      if (!ok) continue;
      pick[i] = k;
      if (search(i + 1)) return true;
    }
    return false;
  };
  if (search(0)) {
    res.isomorphic = true;
    for (std::size_t i = 0; i < n; ++i) res.images.push_back(elems[pick[i]]);
  }
  return res;
}

namespace {

// Row Hermite-style echelon basis of the integer row span.
std::vector<std::vector<Int>> row_basis(std::vector<std::vector<Int>> rows, std::size_t ncols) {
  std::size_t top = 0;
  for (std::size_t col = 0; col < ncols && top < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q = floor_div(rows[i][col], rows[top][col]);
        for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) {
        ++top;
        break;
      }
    }
  }
  rows.resize(top);
  return rows;
}

}  // namespace

EvenLattice overlattice(const EvenLattice& l, const std::vector<std::vector<Rat>>& glue) {
  const std::size_t n = l.rank();
  Int den = 1;
  for (const auto& v : glue) {
    if (v.size() != n) throw DomainError("glue vector has wrong length");
    for (const Rat& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  }
  std::vector<std::vector<Int>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Int> r(n, Int(0));
    r[i] = den;
    rows.push_back(r);
  }
  for (const auto& v : glue) {
    std::vector<Int> r(n);
    for (std::size_t j = 0; j < n; ++j) {
      Rat t = v[j] * den;
      r[j] = t.get_num();
    }
    rows.push_back(r);
  }
  auto basis = row_basis(rows, n);
  if (basis.size() != n) throw DomainError("overlattice lost rank");
  Matrix b = Matrix::from_rows(basis);
  Matrix g = b * l.gram * b.transpose();
  Int den2 = den * den;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (g(i, j) % den2 != 0) throw DomainError("glue vectors do not give an integral overlattice");
      out(i, j) = g(i, j) / den2;
    }
  return make_lattice(out);
}

std::optional<bqf::Form> is_two_divisible(const bqf::Form& q) {
  if (q.a % 2 == 0 && q.b % 2 == 0 && q.c % 2 == 0) return bqf::Form{q.a / 2, q.b / 2, q.c / 2};
  return std::nullopt;
}

std::vector<bqf::Form> rank2_forms_by_disc_form(const Int& d, const FiniteQuadraticForm& target,
                                                int sign) {
  if (d >= 0) throw DomainError("rank2_forms_by_disc_form needs d < 0");
  std::vector<bqf::Form> out;
  for (Int k = 1; k * k <= -d; ++k) {
    if (d % (k * k) != 0) continue;
    Int d0 = d / (k * k);
    if (!bqf::valid_discriminant(d0)) continue;
    for (const auto& f : bqf::reduced_forms(d0, true)) {
      bqf::Form s{k * f.a, k * f.b, k * f.c};
      if (disc_forms_isomorphic(discriminant_form(from_form(s)), target, sign).isomorphic)
        out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), bqf::form_less);
  return out;
}

}  // namespace k3::lattice
