#include "k3/fibers.hpp"

#include <algorithm>

namespace k3::ellsurf {

namespace {

constexpr int kInf = 1 << 28;

int val(const Poly& p) { return p.is_zero() ? kInf : p.valuation(); }

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

Poly shortdisc(const Poly& A, const Poly& B) {
  long m = join_fields(A.field(), B.field());
  return Poly::constant(FieldElement(4), m) * A * A * A + Poly::constant(FieldElement(27), m) * B * B;
}

RationalFunction s_power(int e, long m) {
  RationalFunction s(Poly::variable(m));
  return s.pow(e);
}

}  // namespace

Place Place::at_root(const FieldElement& r, long m) {
  return Place{false, Poly::linear_root(r, m), r};
}

std::string Place::str() const {
  if (infinite) return "inf";
  if (p.degree() == 1) return root.str();
  return "(" + p.str() + ")";
}

int KodairaFiber::components() const {
  switch (kind) {
    case Kodaira::I0: return 1;
    case Kodaira::In: return n;
    case Kodaira::II: return 1;
    case Kodaira::III: return 2;
    case Kodaira::IV: return 3;
    case Kodaira::I0s: return 5;
    case Kodaira::Ins: return 5 + n;
    case Kodaira::IVs: return 7;
    case Kodaira::IIIs: return 8;
    case Kodaira::IIs: return 9;
  }
  return 1;
}

int KodairaFiber::euler() const {
  switch (kind) {
    case Kodaira::I0: return 0;
    case Kodaira::In: return n;
    case Kodaira::II: return 2;
    case Kodaira::III: return 3;
    case Kodaira::IV: return 4;
    case Kodaira::I0s: return 6;
    case Kodaira::Ins: return 6 + n;
    case Kodaira::IVs: return 8;
    case Kodaira::IIIs: return 9;
    case Kodaira::IIs: return 10;
  }
  return 0;
}

int KodairaFiber::group_order() const {
  switch (kind) {
    case Kodaira::I0: return 1;
    case Kodaira::In: return n;
    case Kodaira::II: return 1;
    case Kodaira::III: return 2;
    case Kodaira::IV: return 3;
    case Kodaira::I0s: return 4;
    case Kodaira::Ins: return 4;
    case Kodaira::IVs: return 3;
    case Kodaira::IIIs: return 2;
    case Kodaira::IIs: return 1;
  }
  return 1;
}

std::string KodairaFiber::symbol() const {
  switch (kind) {
    case Kodaira::I0: return "I0";
    case Kodaira::In: return "I" + std::to_string(n);
    case Kodaira::II: return "II";
    case Kodaira::III: return "III";
    case Kodaira::IV: return "IV";
    case Kodaira::I0s: return "I0*";
    case Kodaira::Ins: return "I" + std::to_string(n) + "*";
    case Kodaira::IVs: return "IV*";
    case Kodaira::IIIs: return "III*";
    case Kodaira::IIs: return "II*";
  }
  return "?";
}

std::pair<char, int> KodairaFiber::root_type() const {
  switch (kind) {
    case Kodaira::In: return {'A', n - 1};
    case Kodaira::III: return {'A', 1};
    case Kodaira::IV: return {'A', 2};
    case Kodaira::I0s: return {'D', 4};
    case Kodaira::Ins: return {'D', n + 4};
    case Kodaira::IVs: return {'E', 6};
    case Kodaira::IIIs: return {'E', 7};
    case Kodaira::IIs: return {'E', 8};
    default: return {'A', 0};
  }
}

KodairaFiber classify(int v4, int v6, int vd) {
  auto bad = [&](const char* why) -> KodairaFiber {
    throw DomainError(std::string(why) + " valuation triple (" + std::to_string(v4) + "," +
                      std::to_string(v6) + "," + std::to_string(vd) + ")");
  };
  if (v4 >= 4 && v6 >= 6) return bad("non-minimal");
  KodairaFiber f;
  if (vd == 0) return f;
  if (v4 == 0) {
    if (v6 != 0) return bad("inconsistent");
    f.kind = Kodaira::In;
    f.n = vd;
    return f;
  }
  switch (vd) {
    case 2:
      if (v6 == 1) { f.kind = Kodaira::II; return f; }
      break;
    case 3:
      if (v4 == 1 && v6 >= 2) { f.kind = Kodaira::III; return f; }
      break;
    case 4:
      if (v4 >= 2 && v6 == 2) { f.kind = Kodaira::IV; return f; }
      break;
    case 6:
      if (v4 >= 2 && v6 >= 3 && (v4 == 2 || v6 == 3)) { f.kind = Kodaira::I0s; return f; }
      break;
    case 8:
      if (v4 >= 3 && v6 == 4) { f.kind = Kodaira::IVs; return f; }
      break;
    case 9:
      if (v4 == 3 && v6 >= 5) { f.kind = Kodaira::IIIs; return f; }
      break;
    case 10:
      if (v4 >= 4 && v6 == 5) { f.kind = Kodaira::IIs; return f; }
      break;
    default:
      break;
  }
  if (vd > 6 && v4 == 2 && v6 == 3) {
    f.kind = Kodaira::Ins;
    f.n = vd - 6;
    return f;
  }
  return bad("inconsistent");
}

KodairaFiber parse_fiber(const std::string& s) {
  static const std::pair<const char*, Kodaira> fixed[] = {
      {"II", Kodaira::II},     {"III", Kodaira::III}, {"IV", Kodaira::IV},
      {"IV*", Kodaira::IVs},   {"III*", Kodaira::IIIs}, {"II*", Kodaira::IIs}};
  for (const auto& [name, k] : fixed)
    if (s == name) return KodairaFiber{k, 0, std::nullopt};
  if (s.size() >= 2 && s[0] == 'I') {
    bool star = s.back() == '*';
    std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      int n = std::stoi(digits);
      if (star) return KodairaFiber{n == 0 ? Kodaira::I0s : Kodaira::Ins, n, std::nullopt};
      return KodairaFiber{n == 0 ? Kodaira::I0 : Kodaira::In, n, std::nullopt};
    }
  }
  throw UsageError("unknown Kodaira symbol '" + s + "'");
}

int model_weight(const ShortForm& sf) {
  Poly d = shortdisc(sf.A, sf.B);
  return std::max({ceil_div(sf.A.degree(), 4), ceil_div(sf.B.degree(), 6), ceil_div(d.degree(), 12)});
}

RationalFunction LocalModel::local_x(const RationalFunction& X) const {
  long m = join_fields(A.field(), X.field());
  RationalFunction moved;
  if (place.infinite) {
    RationalFunction inv = s_power(-1, m);
    moved = substitute(X, inv) * s_power(2 * weight, m);
  } else {
    moved = X.shift(place.root);
  }
  return moved * s_power(-2 * reductions, m);
}

RationalFunction LocalModel::local_y(const RationalFunction& Y) const {
  long m = join_fields(A.field(), Y.field());
  RationalFunction moved;
  if (place.infinite) {
    RationalFunction inv = s_power(-1, m);
    moved = substitute(Y, inv) * s_power(3 * weight, m);
  } else {
    moved = Y.shift(place.root);
  }
  return moved * s_power(-3 * reductions, m);
}

LocalModel localize_minimal(const WeierstrassModel& w, const Place& p) {
  ShortForm sf = short_form(w);
  LocalModel lm;
  lm.place = p;
  if (p.infinite) {
    lm.weight = model_weight(sf);
    lm.A = sf.A.is_zero() ? sf.A : sf.A.reversed(4 * lm.weight);
    lm.B = sf.B.is_zero() ? sf.B : sf.B.reversed(6 * lm.weight);
  } else {
    if (p.p.degree() != 1) throw DomainError("local model requested at the non-linear place " + p.str());
    lm.A = sf.A.shift(p.root);
    lm.B = sf.B.shift(p.root);
  }
  while (val(lm.A) >= 4 && val(lm.B) >= 6) {
    lm.A = lm.A.shift_down(4);
    lm.B = lm.B.shift_down(6);
    ++lm.reductions;
  }
  lm.v_c4 = val(lm.A);
  lm.v_c6 = val(lm.B);
  lm.v_disc = val(shortdisc(lm.A, lm.B));
  return lm;
}

namespace {

KodairaFiber fiber_of(const LocalModel& lm, long m) {
  KodairaFiber f = classify(lm.v_c4, lm.v_c6, lm.v_disc);
  if (f.kind == Kodaira::In) {
    // node at x0 = -3B/(2A); the branches are rational iff 3 x0 is a square
    FieldElement A0 = lm.A.coeff(0), B0 = lm.B.coeff(0);
    FieldElement t = -B0 / (FieldElement(2) * A0);
    f.split = field_sqrt(t, m).has_value();
  }
  return f;
}

}  // namespace

KodairaFiber kodaira_type(const WeierstrassModel& w, const Place& p) {
  return fiber_of(localize_minimal(w, p), w.field());
}

std::string Survey::configuration() const {
  std::string s;
  for (const auto& e : fibers) {
    if (!s.empty()) s += ", ";
    s += e.fiber.symbol() + "@" + e.place.str();
  }
  if (residual_i1 > 0) {
    if (!s.empty()) s += ", ";
    s += std::to_string(residual_i1) + "*I1";
  }
  return s;
}

Survey fiber_survey(const WeierstrassModel& w) {
  const long m = w.field();
  ShortForm sf = short_form(w);
  Poly d = shortdisc(sf.A, sf.B);
  Survey sv;
  sv.residual = Poly::constant(FieldElement(1), m);
  int reductions = 0;

  auto parts = squarefree_decomposition(d);
  Poly rad = Poly::constant(FieldElement(1), m);
  for (const auto& [g, e] : parts) rad *= g;
  std::vector<FieldElement> roots = roots_in_field(rad);

  for (const auto& r : roots) {
    LocalModel lm = localize_minimal(w, Place::at_root(r, m));
    reductions += lm.reductions;
    KodairaFiber f = fiber_of(lm, m);
    sv.euler_sum += lm.v_disc;
    if (f.kind != Kodaira::I0) sv.fibers.push_back({lm.place, f});
  }
  for (const auto& [g, e] : parts) {
    Poly rest = g;
    for (const auto& r : roots)
      if (g.eval(r).is_zero()) rest = exact_div(rest, Poly::linear_root(r, m));
    if (rest.degree() < 1) continue;
    if (e != 1 || gcd(rest, sf.A).degree() > 0)
      throw DomainError("additive or multiple fiber at the non-linear place (" + rest.str() +
                        "); extend the base field so the place splits");
    sv.residual *= rest;
    sv.residual_i1 += rest.degree();
    sv.euler_sum += rest.degree();
  }

  LocalModel inf = localize_minimal(w, Place::at_infinity());
  reductions += inf.reductions;
  KodairaFiber finf = fiber_of(inf, m);
  sv.euler_sum += inf.v_disc;
  if (finf.kind != Kodaira::I0) sv.fibers.push_back({inf.place, finf});

  int expected = 12 * (model_weight(sf) - reductions);
  if (sv.euler_sum != expected)
    throw std::logic_error("Euler checksum mismatch: fibers give " + std::to_string(sv.euler_sum) +
                           ", degrees give " + std::to_string(expected));
  sv.chi = sv.euler_sum / 12;
  return sv;
}

RationalFunction BaseChange::transport_x(const RationalFunction& x) const {
  return scale * scale * substitute(x, phi);
}

RationalFunction BaseChange::transport_y(const RationalFunction& y) const {
  return scale * scale * scale * substitute(y, phi);
}

BaseChange base_change(const WeierstrassModel& w, const RationalFunction& phi) {
  if (phi.num().degree() < 1 && phi.den().degree() < 1)
    throw DomainError("base change by a constant map");
  const long m = join_fields(w.field(), phi.field());
  static const int weights[5] = {1, 2, 3, 4, 6};
  const Poly& P = phi.num();
  const Poly& Q = phi.den();
  int k0 = 0;
  for (int i = 0; i < 5; ++i)
    if (!w.coeffs()[i].is_zero()) k0 = std::max(k0, ceil_div(w.coeffs()[i].degree(), weights[i]));

  std::array<Poly, 5> a;
  for (int i = 0; i < 5; ++i) {
    const Poly& f = w.coeffs()[i];
    a[i] = Poly(m);
    if (f.is_zero()) continue;
    int n = f.degree();
    Poly pk = Poly::constant(FieldElement(1), m);
    std::vector<Poly> qpow(n + 1, Poly::constant(FieldElement(1), m));
    for (int j = 1; j <= n; ++j) qpow[j] = qpow[j - 1] * Q;
    Poly acc(m);
    for (int k = 0; k <= n; ++k) {
      acc += f.coeff(k) * (pk * qpow[n - k]);
      pk *= P;
    }
    a[i] = acc * Q.pow(weights[i] * k0 - n);
  }
  RationalFunction scale(Q.pow(k0));

  auto strip = [&](const Poly& g) {
    for (;;) {
      bool all = true;
      for (int i = 0; i < 5 && all; ++i)
        if (!a[i].is_zero() && !divides(g.pow(weights[i]), a[i])) all = false;
      if (!all) return;
      for (int i = 0; i < 5; ++i)
        if (!a[i].is_zero()) a[i] = exact_div(a[i], g.pow(weights[i]));
      scale = scale / RationalFunction(g);
    }
  };
  if (Q.degree() > 0) {
    Poly sq = exact_div(Q, gcd(Q, Q.derivative())).monic();
    Poly rest = sq;
    for (const auto& r : roots_in_field(sq)) {
      Poly g = Poly::linear_root(r, m);
      rest = exact_div(rest, g);
      strip(g);
    }
    if (rest.degree() > 0) strip(rest);
  }
  BaseChange bc;
  bc.model = WeierstrassModel(m, a[0], a[1], a[2], a[3], a[4]);
  bc.phi = phi;
  bc.scale = scale;
  return bc;
}

WeierstrassModel quadratic_twist(const WeierstrassModel& w, const Poly& gamma) {
  if (gamma.is_zero()) throw DomainError("quadratic twist by zero");
  if (!w.is_short()) throw DomainError("quadratic twist needs a1 = a3 = 0; complete the square first");
  long m = join_fields(w.field(), gamma.field());
  return WeierstrassModel(m, Poly(m), gamma * w.a2(), Poly(m), gamma * gamma * w.a4(),
                          gamma * gamma * gamma * w.a6());
}

std::pair<RationalFunction, RationalFunction> twist_section(const RationalFunction& U,
                                                            const RationalFunction& V,
                                                            const Poly& gamma) {
  RationalFunction g(gamma);
  return {g * U, g * g * V};
}

}  // namespace k3::ellsurf
