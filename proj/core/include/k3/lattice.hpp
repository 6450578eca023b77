#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3/bqf.hpp"
#include "k3/common.hpp"

namespace k3::lattice {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), v_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Int>>& rows);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Int& operator()(std::size_t i, std::size_t j) { return v_[i * c_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return v_[i * c_ + j]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Int& s) const;
  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && v_ == o.v_; }
  std::vector<std::vector<Int>> to_rows() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Int> v_;
};

Int determinant(const Matrix& m);  // fraction free elimination

struct SmithForm {
  std::vector<Int> diagonal;  // full diagonal d_1 | d_2 | ...
  Matrix U, V;                // U * M * V = diag
};

SmithForm smith_normal_form(const Matrix& m);

struct EvenLattice {
  Matrix gram;
  std::size_t rank() const { return gram.rows(); }
  Int det() const { return determinant(gram); }
};

// Throws DomainError unless symmetric, even diagonal and nondegenerate.
EvenLattice make_lattice(const Matrix& gram);

EvenLattice hyperbolic_plane();
EvenLattice root_lattice(char family, int n);  // 'A', 'D', 'E', positive definite
EvenLattice rank_one(const Int& value);        // <value>, value even
EvenLattice from_form(const bqf::Form& q);     // ((2a,b),(b,2c))
EvenLattice rescale(const EvenLattice& l, const Int& n);
EvenLattice direct_sum(const std::vector<EvenLattice>& parts);

// Formal sums such as "U + 2E8(-1) + A2(-1) + <-4> + Q(1,0,3)(2)".
EvenLattice build_lattice(const std::string& expr);

std::vector<Int> smith_invariants(const EvenLattice& l);  // without the 1s
std::pair<int, int> signature(const EvenLattice& l);

/*
 * Discriminant group L^v/L as a product of cyclic groups Z/d_i with chosen
 * generators g_i.  gen_gram(i,j) = g_i . g_j as an exact rational; values
 * are reduced only when queried (q mod 2, b mod 1).
 */
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() = default;
  FiniteQuadraticForm(std::vector<Int> factors, std::vector<std::vector<Rat>> gen_gram);

  const std::vector<Int>& invariant_factors() const { return factors_; }
  std::size_t ngens() const { return factors_.size(); }
  Int order() const;
  const Rat& gen_pairing(std::size_t i, std::size_t j) const { return gram_[i][j]; }

  using Element = std::vector<Int>;
  std::vector<Element> elements() const;  // mixed radix order
  Rat q(const Element& x) const;           // in [0, 2)
  Rat b(const Element& x, const Element& y) const;  // in [0, 1)
  Element add(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  bool is_zero(const Element& x) const;

  FiniteQuadraticForm negated() const;

 private:
  std::vector<Int> factors_;
  std::vector<std::vector<Rat>> gram_;
};

Rat mod2(const Rat& x);
Rat mod1(const Rat& x);

FiniteQuadraticForm discriminant_form(const EvenLattice& l);

struct IsoResult {
  bool isomorphic = false;
  std::vector<FiniteQuadraticForm::Element> images;  // image of each generator of F1
};

// Isometry search F1 -> sign*F2.  Groups above max_order are refused.
IsoResult disc_forms_isomorphic(const FiniteQuadraticForm& f1, const FiniteQuadraticForm& f2,
                                int sign = 1, long max_order = 10000);

// Overlattice of l spanned by its basis and rational glue vectors given in
// basis coordinates.  Throws DomainError if the result is not even integral.
EvenLattice overlattice(const EvenLattice& l, const std::vector<std::vector<Rat>>& glue);

// Q = Q'(2) for an even form Q'.
std::optional<bqf::Form> is_two_divisible(const bqf::Form& q);

// Reduced even forms (primitive and imprimitive) of discriminant d whose
// discriminant form is isometric to sign*target.
std::vector<bqf::Form> rank2_forms_by_disc_form(const Int& d, const FiniteQuadraticForm& target,
                                                int sign);

}  // namespace k3::lattice
