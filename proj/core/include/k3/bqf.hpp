#pragma once

#include <array>
#include <string>
#include <vector>

#include "k3/common.hpp"

namespace k3::bqf {

// 2x2 integer matrix, row major: {m00, m01, m10, m11}.
using Mat2 = std::array<Int, 4>;

Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 mat_identity();
Int mat_det(const Mat2& m);

/*
 * Positive definite form a x^2 + b xy + c y^2.  The associated even
 * lattice has Gram matrix ((2a, b), (b, 2c)).
 */
struct Form {
  Int a, b, c;

  Int disc() const { return b * b - 4 * a * c; }
  Int content() const;
  bool primitive() const { return content() == 1; }
  bool is_reduced() const;
  Int value(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
  std::array<Int, 4> gram() const { return {2 * a, b, b, 2 * c}; }
  std::string str() const;  // "(a,b,c)"

  bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator!=(const Form& o) const { return !(*this == o); }
};

// Sort key used for all form lists: a, then c, then |b|, positive b first.
bool form_less(const Form& x, const Form& y);

// Throws DomainError unless a > 0, c > 0 and b^2 - 4ac < 0.
Form make_form(const Int& a, const Int& b, const Int& c);

// Form transported by M: R(v) = Q(Mv), i.e. G_R = M^T G_Q M.
Form act(const Form& q, const Mat2& m);

struct Reduction {
  Form form;
  Mat2 witness;  // in SL2(Z), G_form = witness^T G_input witness
};

Int discriminant(const Form& q);
Reduction reduce(const Form& q);
bool valid_discriminant(const Int& d);  // d < 0, d = 0,1 mod 4

Form principal_form(const Int& d);
Form inverse(const Form& q);  // reduced representative of (a,-b,c)
bool is_principal(const Form& q);

// Reduced composite of two primitive forms of equal discriminant.
Form compose(const Form& f, const Form& g);
Form power(const Form& f, Int n);

// Reduced forms of discriminant d, sorted by form_less.
std::vector<Form> reduced_forms(const Int& d, bool primitive_only);

struct ClassGroup {
  Int d;
  std::vector<Form> elements;
  std::vector<Int> structure;  // invariant factors, each divides the next
  Form principal;
  std::size_t class_number() const { return elements.size(); }
};

ClassGroup class_group(const Int& d);

// Order of the class of a primitive form.
Int form_order(const Form& q);

// Abelian group invariants from the multiset of element orders.
std::vector<Int> structure_from_orders(const std::vector<Int>& orders);

struct AutomorphismGroup {
  int order = 0;
  std::string name;  // trivial, klein, D8, D12
  std::vector<Mat2> matrices;
};

AutomorphismGroup automorphism_group(const Form& q);

struct GenusInfo {
  std::vector<Form> genus_members;
  std::size_t genus_size = 0;
  bool in_principal_genus = false;
};

GenusInfo genus_info(const Form& q);

int kronecker_at_2(const Int& d);

// Fast machine-integer helpers for discriminant scans.
long class_number(long d);
bool is_two_torsion(long d);

// Discriminants d with |d| <= bound whose class group has exponent <= 2,
// sorted by |d|.  threads > 1 splits the range across workers.
std::vector<long> two_torsion_scan(long bound, int threads = 1);

}  // namespace k3::bqf
