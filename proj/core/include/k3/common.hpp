#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3 {

using Int = mpz_class;
using Rat = mpq_class;

// Precondition or mathematical failure on valid syntax (CLI exit 1).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical result could not be certified at the requested precision.
// Callers may retry with more bits.
class PrecisionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed input text or arguments (CLI exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Int isqrt(const Int& n);
bool is_square(const Int& n);
Int floor_div(const Int& a, const Int& b);
Int mod(const Int& a, const Int& b);  // result in [0, |b|)
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y);
long to_long(const Int& n);  // throws DomainError when out of range

// Canonical p/q.
Rat frac(const Int& p, const Int& q);

Rat rat_from_string(const std::string& s);  // "p", "p/q", "-p/q"
std::string to_string(const Int& n);
std::string to_string(const Rat& q);

Rat rat_pow(const Rat& q, long e);
Int int_pow(const Int& q, unsigned long e);

// Rational square root when it exists.
bool rat_sqrt(const Rat& q, Rat& root);

// Squarefree part with sign (m such that n = m*k^2).
Int squarefree_part(const Int& n);

}  // namespace k3
