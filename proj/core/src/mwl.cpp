#include "k3/mwl.hpp"

#include <algorithm>
#include <map>

namespace k3::ellsurf {

namespace {

int simple_count(const KodairaFiber& f) {
  switch (f.kind) {
    case Kodaira::In: return f.n;
    case Kodaira::I0s:
    case Kodaira::Ins: return 4;
    default: return f.group_order();
  }
}

void check_component(const KodairaFiber& f, int i) {
  if (i < 0 || i >= std::max(1, simple_count(f)))
    throw DomainError("component " + std::to_string(i) + " is not a simple component of " + f.symbol());
}

}  // namespace

Rat local_contribution(const KodairaFiber& f, int i) {
  check_component(f, i);
  if (i == 0) return 0;
  switch (f.kind) {
    case Kodaira::In: return frac(i * (f.n - i), f.n);
    case Kodaira::I0s: return 1;
    case Kodaira::Ins: return i == 1 ? Rat(1) : Rat(1) + frac(f.n, 4);
    case Kodaira::III: return Rat(1, 2);
    case Kodaira::IV: return Rat(2, 3);
    case Kodaira::IVs: return Rat(4, 3);
    case Kodaira::IIIs: return Rat(3, 2);
    default: return 0;
  }
}

Rat local_pairing(const KodairaFiber& f, int i, int j) {
  check_component(f, i);
  check_component(f, j);
  if (i == 0 || j == 0) return 0;
  if (i == j) return local_contribution(f, i);
  switch (f.kind) {
    case Kodaira::In: {
      int a = std::min(i, j), b = std::max(i, j);
      return frac(a * (f.n - b), f.n);
    }
    case Kodaira::I0s: return Rat(1, 2);
    case Kodaira::Ins: return (i == 1 || j == 1) ? Rat(1, 2) : Rat(1, 2) + frac(f.n, 4);
    case Kodaira::IV: return Rat(1, 3);
    case Kodaira::IVs: return Rat(2, 3);
    default: return 0;
  }
}

Rat height_from_data(int chi, const Rat& po, const std::vector<Rat>& contribs) {
  if (chi < 1) throw DomainError("height needs chi >= 1");
  if (po < 0) throw DomainError("negative intersection with the zero section");
  Rat h = Rat(2 * chi) + 2 * po;
  for (const Rat& c : contribs) h -= c;
  return h;
}

ShiodaTate shioda_tate(const std::vector<KodairaFiber>& fibers, int mw_rank, const Int& torsion_order,
                       const Rat& mwl_disc) {
  if (mw_rank < 0 || torsion_order < 1) throw DomainError("invalid Mordell-Weil data");
  ShiodaTate st;
  st.rho = 2 + mw_rank;
  Int prod = 1;
  for (const auto& f : fibers) {
    st.rho += f.rank_contribution();
    prod *= f.group_order();
  }
  Rat d = Rat(prod) * abs(mwl_disc) / Rat(torsion_order * torsion_order);
  if (d.get_den() != 1)
    throw DomainError("Shioda-Tate bookkeeping gives the non-integral discriminant " + to_string(d));
  st.ns_disc = (st.rho - 1) % 2 ? -d : d;
  return st;
}

namespace {

// Simple root of x^3 + A x + B in K[[s]] mod s^N lifting rho0.
Poly lift_root(const Poly& A, const Poly& B, const FieldElement& rho0, int N, long m) {
  Poly rho = Poly::constant(rho0, m);
  Poly three = Poly::constant(FieldElement(3), m);
  for (int prec = 1; prec < 2 * N; prec *= 2) {
    Poly f = (rho * rho * rho + A * rho + B).truncate(N);
    Poly df = (three * rho * rho + A).truncate(N);
    rho = (rho - (f * series_inverse(df, N)).truncate(N)).truncate(N);
  }
  return rho;
}

Poly series_of(const RationalFunction& f, int N) {
  if (f.is_zero()) return Poly(f.field());
  auto [v, ser] = laurent(f, N);
  if (v < 0) throw std::logic_error("series_of called on a function with a pole");
  return (Poly::monomial(FieldElement(1), v, f.field()) * ser).truncate(N);
}

PlaceComponent component_at(const WeierstrassModel& w, const SurveyEntry& e,
                            const RationalFunction& X, const RationalFunction& Y) {
  const long m = w.field();
  PlaceComponent pc;
  pc.place = e.place;
  pc.fiber = e.fiber;
  pc.component = 0;
  pc.contribution = 0;
  if (e.fiber.group_order() == 1) return pc;

  LocalModel lm = localize_minimal(w, e.place);
  RationalFunction Xl = lm.local_x(X), Yl = lm.local_y(Y);
  int vx = Xl.is_zero() ? (1 << 28) : Xl.valuation_at_zero();
  if (vx < 0) return pc;

  if (!e.fiber.additive()) {
    const int n = e.fiber.n;
    FieldElement A0 = lm.A.coeff(0), B0 = lm.B.coeff(0);
    FieldElement x0 = FieldElement(-3) * B0 / (FieldElement(2) * A0);
    FieldElement X0 = vx > 0 ? FieldElement(0) : series_of(Xl, 1).coeff(0);
    if (X0 != x0) return pc;
    const int N = n + 3;
    Poly rho = lift_root(lm.A, lm.B, FieldElement(-2) * x0, N, m);
    Poly xi = (series_of(Xl, N) + Poly::constant(FieldElement(Rat(1, 2)), m) * rho).truncate(N);
    int i = xi.is_zero() ? N : xi.valuation();
    if (2 * i >= n) {
      if (n % 2) throw std::logic_error("odd I_n fiber met at its middle");
      pc.component = n / 2;
    } else {
      Poly ys = series_of(Yl, N);
      FieldElement c = ys.coeff(i) / xi.coeff(i);
      auto sigma = field_sqrt(FieldElement(3) * x0, m);
      if (!sigma || (c != *sigma && c != -*sigma))
        throw std::logic_error("tangent slope at the node does not match its branches");
      pc.component = c == *sigma ? i : n - i;
    }
  } else {
    if (vx < 1) return pc;
    switch (e.fiber.kind) {
      case Kodaira::III:
      case Kodaira::IIIs:
        pc.component = 1;
        break;
      case Kodaira::IV:
      case Kodaira::IVs:
      case Kodaira::I0s:
        pc.component = 1;
        pc.labelled = false;
        break;
      default:
        throw DomainError("cannot decide which non-identity component of " + e.fiber.symbol() +
                          " at " + e.place.str() + " the section meets");
    }
  }
  pc.contribution = local_contribution(e.fiber, pc.component);
  return pc;
}

}  // namespace

SectionAnalysis analyze_zero_section(const WeierstrassModel& w) {
  SectionAnalysis a;
  a.zero_section = true;
  a.chi = fiber_survey(w).chi;
  a.po = 0;
  a.height = 0;
  return a;
}

SectionAnalysis analyze_section(const WeierstrassModel& w, const RationalFunction& x,
                                const RationalFunction& y) {
  const long m = join_fields(w.field(), join_fields(x.field(), y.field()));
  if (m != w.field())
    throw DomainError("section coordinates live outside the base field of the model");
  if (!w.on_curve(x, y)) throw DomainError("the point is not on the curve");
  Survey sv = fiber_survey(w);
  ShortForm sf = short_form(w);
  RationalFunction X = sf.map_x(w, x), Y = sf.map_y(w, x, y);

  SectionAnalysis out;
  out.chi = sv.chi;
  out.po = 0;

  // Intersection with O: poles of x in the minimal model at every place.
  Poly disc = Poly::constant(FieldElement(4), m) * sf.A * sf.A * sf.A +
              Poly::constant(FieldElement(27), m) * sf.B * sf.B;
  Poly support = X.den() * disc;
  auto parts = squarefree_decomposition(support);
  Poly rad = Poly::constant(FieldElement(1), m);
  for (const auto& [g, e] : parts) rad *= g;
  auto roots = roots_in_field(rad);
  for (const auto& r : roots) {
    LocalModel lm = localize_minimal(w, Place::at_root(r, m));
    RationalFunction Xl = lm.local_x(X);
    if (Xl.is_zero()) continue;
    int v = Xl.valuation_at_zero();
    if (v < 0) out.po += frac(-v, 2);
  }
  for (const auto& [g, e] : squarefree_decomposition(X.den())) {
    Poly rest = g;
    for (const auto& r : roots)
      if (g.eval(r).is_zero()) rest = exact_div(rest, Poly::linear_root(r, m));
    if (rest.degree() < 1) continue;
    int k = std::min(valuation_at(sf.A, rest) / 4, valuation_at(sf.B, rest) / 6);
    int v = -e - 2 * k;
    if (v < 0) out.po += frac(-v * rest.degree(), 2);
  }
  {
    LocalModel lm = localize_minimal(w, Place::at_infinity());
    RationalFunction Xl = lm.local_x(X);
    if (!Xl.is_zero() && Xl.valuation_at_zero() < 0) out.po += frac(-Xl.valuation_at_zero(), 2);
  }
  if (out.po.get_den() != 1) throw std::logic_error("pole of odd order in a minimal model");

  std::vector<Rat> contribs;
  for (const auto& e : sv.fibers) {
    if (e.fiber.components() < 2) continue;
    PlaceComponent pc = component_at(w, e, X, Y);
    contribs.push_back(pc.contribution);
    out.components.push_back(pc);
  }
  out.height = height_from_data(out.chi, out.po, contribs);
  return out;
}

lattice::EvenLattice trivial_lattice(const Survey& s) {
  if (s.chi % 2) throw DomainError("trivial lattice is odd for chi = " + std::to_string(s.chi));
  std::vector<lattice::EvenLattice> parts;
  parts.push_back(lattice::make_lattice(lattice::Matrix::from_rows({{-s.chi, 1}, {1, 0}})));
  for (const auto& e : s.fibers) {
    if (e.fiber.components() < 2) continue;
    auto [fam, r] = e.fiber.root_type();
    parts.push_back(lattice::rescale(lattice::root_lattice(fam, r), -1));
  }
  return lattice::make_lattice(lattice::direct_sum(parts).gram);
}

namespace {

// Solve C x = b over Q for a small positive definite integer matrix C.
std::vector<Rat> solve(const lattice::Matrix& C, std::vector<Rat> b) {
  std::size_t n = C.rows();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = C(i, j);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (a[p][k] == 0) ++p;
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rat f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

}  // namespace

std::vector<Rat> section_class(const Survey& s, const SectionAnalysis& a) {
  std::vector<Rat> v;
  if (a.zero_section) {
    v.assign(trivial_lattice(s).rank(), Rat(0));
    v[0] = 1;
    return v;
  }
  v.push_back(1);
  v.push_back(Rat(s.chi) + a.po);
  for (const auto& e : s.fibers) {
    if (e.fiber.components() < 2) continue;
    auto it = std::find_if(a.components.begin(), a.components.end(), [&](const PlaceComponent& pc) {
      return pc.place.str() == e.place.str();
    });
    if (it == a.components.end()) throw std::logic_error("section analysis misses a fiber");
    auto [fam, r] = e.fiber.root_type();
    std::vector<Rat> block(r, Rat(0));
    if (it->component != 0) {
      if (e.fiber.kind != Kodaira::In || !it->labelled)
        throw DomainError("section class needs labelled components; " + e.fiber.symbol() + " at " +
                          e.place.str() + " is not supported");
      std::vector<Rat> rhs(r, Rat(0));
      rhs[it->component - 1] = -1;
      block = solve(lattice::root_lattice(fam, r).gram, rhs);
    }
    v.insert(v.end(), block.begin(), block.end());
  }
  return v;
}

lattice::EvenLattice ns_overlattice(const Survey& s, const std::vector<SectionAnalysis>& sections) {
  lattice::EvenLattice triv = trivial_lattice(s);
  std::vector<std::vector<Rat>> glue;
  for (const auto& a : sections) glue.push_back(section_class(s, a));
  return lattice::overlattice(triv, glue);
}

namespace {

void add_cyclic(std::map<Int, std::vector<int>>& parts, Int n) {
  for (Int p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) parts[p].push_back(e);
  }
  if (n > 1) parts[n].push_back(1);
}

}  // namespace

bool torsion_embeds(const std::vector<KodairaFiber>& fibers, const std::vector<Int>& torsion) {
  Int total = 1, t = 1;
  std::map<Int, std::vector<int>> target, source;
  for (const auto& f : fibers) {
    total *= f.group_order();
    switch (f.kind) {
      case Kodaira::I0s:
        add_cyclic(target, 2);
        add_cyclic(target, 2);
        break;
      case Kodaira::Ins:
        if (f.n % 2 == 0) {
          add_cyclic(target, 2);
          add_cyclic(target, 2);
        } else {
          add_cyclic(target, 4);
        }
        break;
      default:
        if (f.group_order() > 1) add_cyclic(target, f.group_order());
    }
  }
  for (const Int& c : torsion) {
    t *= c;
    if (c > 1) add_cyclic(source, c);
  }
  if (total % (t * t) != 0) return false;
  for (const auto& [p, exps] : source) {
    const auto& have = target[p];
    int top = *std::max_element(exps.begin(), exps.end());
    for (int k = 1; k <= top; ++k) {
      auto cnt = [k](const std::vector<int>& v) { return std::count_if(v.begin(), v.end(), [k](int e) { return e >= k; }); };
      if (cnt(exps) > cnt(have)) return false;
    }
  }
  return true;
}

}  // namespace k3::ellsurf
