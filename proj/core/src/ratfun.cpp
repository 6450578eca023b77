#include "k3/ratfun.hpp"

#include <cctype>
#include <optional>

namespace k3 {

RationalFunction::RationalFunction(const Poly& n)
    : num_(n), den_(Poly::constant(FieldElement(1), n.field())) {}

RationalFunction::RationalFunction(const Poly& n, const Poly& d) {
  if (d.is_zero()) throw DomainError("rational function with zero denominator");
  long m = join_fields(n.field(), d.field());
  if (n.is_zero()) {
    num_ = Poly(m);
    den_ = Poly::constant(FieldElement(1), m);
    return;
  }
  Poly g = gcd(n, d);
  num_ = exact_div(n, g);
  den_ = exact_div(d, g);
  FieldElement lc = den_.leading().inverse();
  num_ = lc * num_;
  den_ = lc * den_;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DomainError("division by the zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::pow(long e) const {
  if (e < 0) {
    if (is_zero()) throw DomainError("zero to a negative power");
    return RationalFunction(den_.pow(-e), num_.pow(-e));
  }
  return RationalFunction(num_.pow(e), den_.pow(e));
}

FieldElement RationalFunction::eval(const FieldElement& x) const {
  FieldElement d = den_.eval(x);
  if (d.is_zero()) throw DomainError("rational function has a pole at " + x.str());
  return num_.eval(x) / d;
}

std::string RationalFunction::str(const std::string& var) const {
  if (is_polynomial()) return (den_.coeff(0).inverse() * num_).str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RationalFunction substitute(const Poly& f, const RationalFunction& phi) {
  long m = join_fields(f.field(), phi.field());
  if (f.is_zero()) return RationalFunction(Poly(m));
  const int n = f.degree();
  // sum c_k P^k Q^(n-k) / Q^n
  Poly acc(m);
  Poly pk = Poly::constant(FieldElement(1), m);
  std::vector<Poly> qpow(n + 1, Poly::constant(FieldElement(1), m));
  for (int i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * phi.den();
  for (int k = 0; k <= n; ++k) {
    acc += f.coeff(k) * (pk * qpow[n - k]);
    pk *= phi.num();
  }
  return RationalFunction(acc, qpow[n]);
}

RationalFunction substitute(const RationalFunction& f, const RationalFunction& phi) {
  return substitute(f.num(), phi) / substitute(f.den(), phi);
}

std::pair<int, Poly> laurent(const RationalFunction& f, int n) {
  if (f.is_zero()) throw DomainError("expansion of the zero function");
  int vn = f.num().valuation();
  int vd = f.den().valuation();
  Poly a = f.num().shift_down(vn);
  Poly b = f.den().shift_down(vd);
  Poly s = (a * series_inverse(b, n)).truncate(n);
  return {vn - vd, s};
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, long m) : s_(normalize(text)), m_(m) {}

  RationalFunction run() {
    RationalFunction r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  static std::string normalize(const std::string& in) {
    std::string out;
    for (std::size_t i = 0; i < in.size();) {
      if (in.compare(i, 3, "−") == 0) {
        out += '-';
        i += 3;
      } else if (in.compare(i, 2, "²") == 0) {
        out += "^2";
        i += 2;
      } else if (in.compare(i, 2, "³") == 0) {
        out += "^3";
        i += 2;
      } else if (in.compare(i, 2, "·") == 0) {
        out += '*';
        i += 2;
      } else if (in[i] == '*' && i + 1 < in.size() && in[i + 1] == '*') {
        out += '^';
        i += 2;
      } else {
        out += in[i++];
      }
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw UsageError("cannot parse '" + s_ + "': " + why);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool at(char ch) {
    skip();
    return i_ < s_.size() && s_[i_] == ch;
  }

  RationalFunction one() const { return RationalFunction(Poly::constant(FieldElement(1), m_)); }

  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      if (at('+')) {
        ++i_;
        acc = acc + term();
      } else if (at('-')) {
        ++i_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  bool starts_factor() {
    skip();
    if (i_ >= s_.size()) return false;
    char ch = s_[i_];
    return ch == '(' || std::isalnum(static_cast<unsigned char>(ch));
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      if (at('*')) {
        ++i_;
        acc = acc * unary();
      } else if (at('/')) {
        ++i_;
        acc = acc / unary();
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (at('-')) {
      ++i_;
      return -unary();
    }
    if (at('+')) {
      ++i_;
      return unary();
    }
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (at('^')) {
      ++i_;
      skip();
      bool neg = false;
      if (at('-')) {
        neg = true;
        ++i_;
      }
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("exponent expected");
      long e = std::stol(s_.substr(st, i_ - st));
      return base.pow(neg ? -e : e);
    }
    return base;
  }

  RationalFunction primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[i_];
    if (ch == '(') {
      ++i_;
      RationalFunction r = expr();
      if (!at(')')) fail("')' expected");
      ++i_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      Rat q(Int(s_.substr(st, i_ - st)));
      return RationalFunction(Poly::constant(FieldElement(q), m_));
    }
    if (s_.compare(i_, 5, "sqrt(") == 0) {
      i_ += 5;
      skip();
      bool neg = false;
      if (at('-')) {
        neg = true;
        ++i_;
      }
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("integer expected inside sqrt");
      Int k(s_.substr(st, i_ - st));
      if (neg) k = -k;
      if (!at(')')) fail("')' expected after sqrt argument");
      ++i_;
      return RationalFunction(Poly::constant(sqrt_const(k), m_));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      if (i_ + 1 < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_ + 1])))
        fail("unknown identifier");
      if (var_ && *var_ != ch) fail("more than one variable");
      var_ = ch;
      ++i_;
      return RationalFunction(Poly::variable(m_));
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  FieldElement sqrt_const(const Int& k) {
    if (k == 0) return FieldElement(0);
    Int sf = squarefree_part(k);
    Int sq = isqrt(k / sf);
    if (sf == 1) return FieldElement(Rat(sq));
    if (!sf.fits_slong_p() || sf.get_si() != m_)
      throw DomainError("sqrt(" + k.get_str() + ") is not in the field Q(sqrt(" + std::to_string(m_) + "))");
    return FieldElement(Rat(0), Rat(sq), m_);
  }

  std::string s_;
  long m_;
  std::size_t i_ = 0;
  std::optional<char> var_;
};

}  // namespace

RationalFunction parse_rational_function(const std::string& text, long m) {
  return Parser(text, m).run();
}

}  // namespace k3
