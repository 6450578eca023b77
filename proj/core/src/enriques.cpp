#include "k3/enriques.hpp"

#include <algorithm>

namespace k3::enriques {

using bqf::Form;

namespace {

Form reduced(const Form& q) {
  bqf::make_form(q.a, q.b, q.c);
  return bqf::reduce(q).form;
}

void require_primitive(const Form& q, const char* op) {
  if (!q.primitive())
    throw DomainError(std::string(op) + " needs a primitive form; " + q.str() +
                      " is imprimitive, see kummer_sandwich");
}

Poly mono(const Rat& c, int k) { return Poly::monomial(FieldElement(c), k, 1); }

// y^2 = x^3 - 3 A t^4 x + t^5 (t^2 - 2 B t + 1), moved over Q by t -> B t
// and a quadratic twist when A and B are irrational.
std::optional<ellsurf::WeierstrassModel> rational_model(const Rat& a3, const Rat& b2) {
  if (a3 == 0) {
    Rat b;
    if (!rat_sqrt(b2, b)) return std::nullopt;
    Poly a6 = mono(Rat(1), 7) + mono(-2 * b, 6) + mono(Rat(1), 5);
    return ellsurf::WeierstrassModel::short_model(1, Poly(1), a6);
  }
  if (b2 == 0) {
    Int num = a3.get_num(), den = a3.get_den();
    Int rn, rd;
    mpz_root(rn.get_mpz_t(), num.get_mpz_t(), 3);
    mpz_root(rd.get_mpz_t(), den.get_mpz_t(), 3);
    if (rn * rn * rn != num || rd * rd * rd != den) return std::nullopt;
    Rat a(rn, rd);
    return ellsurf::WeierstrassModel::short_model(1, mono(-3 * a, 4),
                                                  mono(Rat(1), 7) + mono(Rat(1), 5));
  }
  Rat c = b2 * a3;
  Poly a4 = mono(-3 * c, 4);
  Poly a6 = mono(c * b2, 7) + mono(-2 * c * b2, 6) + mono(c, 5);
  return ellsurf::WeierstrassModel::short_model(1, a4, a6);
}

}  // namespace

InoseData inose_pencil(const Form& q, unsigned bits) {
  bqf::make_form(q.a, q.b, q.c);
  require_primitive(q, "inose_pencil");
  Form r = bqf::reduce(q).form;
  Int d = r.disc();
  cm::CMPair pts = cm::cm_points(r);

  InoseData out;
  out.bits = bits;
  out.e_isomorphic_eprime = pts.e_isomorphic_eprime;
  if (!pts.e_isomorphic_eprime) {
    out.mw_rank = 2;
    out.extra_fibers = "none";
  } else if (d == -4) {
    out.mw_rank = 0;
    out.extra_fibers = "2I2";
  } else if (d == -3) {
    out.mw_rank = 0;
    out.extra_fibers = "IV";
  } else {
    out.mw_rank = 1;
    out.extra_fibers = "I2";
  }

  cm::JValue j = cm::j_cm(pts.tau, bits);
  cm::JValue jp = cm::j_cm(pts.tau_prime, bits);
  if (out.e_isomorphic_eprime && d != -3 && d != -4 && j.certified &&
      (j.integer == 0 || j.integer == 1728))
    throw std::logic_error("special j-value at d = " + d.get_str());

  num::PrecisionGuard guard(bits);
  num::Complex k6(num::to_real(Int(2985984)));  // 12^6
  num::Complex k3(num::to_real(Int(1728)));
  num::Complex one(num::Real(1));
  out.A_cubed_approx = j.value * jp.value / k6;
  out.B_squared_approx = (one - j.value / k3) * (one - jp.value / k3);
  if (j.certified && jp.certified) {
    out.exact = true;
    out.A_cubed = frac(j.integer * jp.integer, Int(2985984));
    out.B_squared = (1 - frac(j.integer, 1728)) * (1 - frac(jp.integer, 1728));
    out.A_cubed.canonicalize();
    out.B_squared.canonicalize();
    out.model = rational_model(out.A_cubed, out.B_squared);
  }
  return out;
}

Verdict enriques_admissible(const Form& q) {
  Form r = reduced(q);
  Int d = r.disc();
  Verdict v;
  v.value = true;
  v.paper_anchor = "Enriques involution criterion";
  if (mod(d, Int(8)) == 5) {
    v.value = false;
    v.reason = "d = -3 mod 8";
    v.paper_anchor += ", case d = -3 mod 8";
  } else if (d == -4 || d == -8) {
    v.value = false;
    v.reason = "d in {-4, -8}";
    v.paper_anchor += ", case d = -4, -8";
  } else if (d == -16 && r == Form{1, 0, 4}) {
    v.value = false;
    v.reason = "d = -16 with Q = diag(2,8), not Kummer";
    v.paper_anchor += ", case d = -16 non-Kummer";
  } else if (d == -16) {
    v.reason = "d = -16 with Q = diag(4,4), Kummer case";
    v.paper_anchor += ", Keum's Kummer case";
  } else {
    v.reason = "no obstruction";
  }
  return v;
}

BaseChangeVerdict base_change_enriques(const Form& q) {
  Form r = reduced(q);
  Int d = r.disc();
  BaseChangeVerdict out;
  if (!enriques_admissible(r).value) {
    out.verdict = "no";
    out.mechanism = "no Enriques involution at all";
    out.paper_anchor = "Enriques involution criterion";
    return out;
  }
  if (mod(d, Int(2)) == 1) {
    bool ok = mod(d, Int(8)) == 1;
    out.verdict = ok ? "yes" : "no";
    out.mechanism = ok ? "rank-1 Inose pencil; the section avoids O on the fixed fibres"
                       : "rank-1 Inose pencil; the base change involution has fixed points";
    out.paper_anchor = "base change involutions, odd discriminants (d = -7 mod 8)";
    return out;
  }
  bool two_torsion = bqf::is_two_torsion(to_long(d));
  if (two_torsion && r == Form{1, 0, -d / 4}) {
    out.verdict = "exception";
    out.mechanism = "Q = diag(2,|d|/2) with Cl(d) two-torsion";
    out.paper_anchor = "exceptional idoneal discriminants";
  } else {
    out.verdict = "yes";
    out.mechanism = "rank-2 Inose pencil on a conjugate pair of sections";
    out.paper_anchor = "base change involutions, even discriminants";
  }
  return out;
}

const char* const kExceptionCaveat =
    "62 forms below |d| = 7392; one further even idoneal discriminant could exist "
    "only beyond any feasible scan (conditionally excluded)";

std::vector<Form> exception_list(int threads) {
  std::vector<Form> out;
  for (long d : bqf::two_torsion_scan(7392, threads)) {
    if (d % 2 != 0 || d == -4 || d == -8 || d == -16) continue;
    out.push_back(Form{Int(1), Int(0), Int(-d / 4)});
  }
  if (out.size() != 62)
    throw std::logic_error("exception list has " + std::to_string(out.size()) + " entries, expected 62");
  return out;
}

FieldReport fields_report(const Form& q) {
  Form r = reduced(q);
  FieldReport f;
  f.d = r.disc();
  f.primitive = r.primitive();
  bqf::ClassGroup cg = bqf::class_group(f.d);
  f.class_number = Int(static_cast<unsigned long>(cg.class_number()));
  f.deg_HK = f.class_number;
  int k2 = bqf::kronecker_at_2(f.d);
  if (k2 == 1 || f.d == -3 || f.d == -4)
    f.deg_H4d_over_Hd = 1;
  else if (mod(f.d, Int(2)) == 0)
    f.deg_H4d_over_Hd = 2;
  else
    f.deg_H4d_over_Hd = 3;
  // number of classes per genus = |Cl(d)^2|
  Form rep = f.primitive ? r : cg.principal;
  f.genus_size = Int(static_cast<unsigned long>(bqf::genus_info(rep).genus_size));
  f.kummer_disc = 4 * f.d;
  f.min_field_bound = "genus size " + f.genus_size.get_str() + " divides [L:K] for any field of definition L";
  return f;
}

KummerSandwich kummer_sandwich(const Form& q) {
  bqf::make_form(q.a, q.b, q.c);
  KummerSandwich k;
  k.kummer_form = Form{2 * q.a, 2 * q.b, 2 * q.c};
  k.kummer_disc = k.kummer_form.disc();
  k.half_form = lattice::is_two_divisible(q);
  k.is_kummer = k.half_form.has_value();
  return k;
}

BrauerExample brauer_example(const Int& M, const Int& N) {
  if (M < 1) throw DomainError("brauer_example needs M >= 1");
  if (N <= 1 || mod(N, Int(2)) == 0) throw DomainError("brauer_example needs N odd and N > 1");
  BrauerExample b;
  b.ns_expression = "U + 2E8(-1) + <" + Int(-4 * M).get_str() + "> + <" + Int(-2 * N).get_str() + ">";
  b.ns = lattice::build_lattice(b.ns_expression);
  b.d = -8 * M * N;
  b.notes = {
      "section of height " + Int(4 * M).get_str() + " induces the Enriques involution",
      "orthogonal section of height " + Int(2 * N).get_str() + " is anti-invariant",
      "hence the Brauer group of the Enriques quotient pulls back to zero",
  };
  return b;
}

std::vector<long> class_number_one_discriminants(int threads) {
  (void)threads;
  std::vector<long> out;
  for (long d = -3; d >= -10000; --d) {
    long r = ((d % 4) + 4) % 4;
    if (r != 0 && r != 1) continue;
    if (bqf::class_number(d) == 1) out.push_back(d);
  }
  if (out.size() != 13)
    throw std::logic_error("found " + std::to_string(out.size()) + " class number one discriminants");
  return out;
}

K3EnriquesReport enriques_report(const Form& q, unsigned bits) {
  K3EnriquesReport rep;
  rep.form = reduced(q);
  rep.d = rep.form.disc();
  rep.sandwich = kummer_sandwich(rep.form);
  rep.is_kummer = rep.sandwich.is_kummer;
  rep.enriques_admissible = enriques_admissible(rep.form);
  rep.base_change_involution = base_change_enriques(rep.form);
  rep.exception_flag = rep.base_change_involution.verdict == "exception";
  rep.fields = fields_report(rep.form);
  if (rep.form.primitive()) {
    rep.cm = cm::cm_points(rep.form);
    rep.inose = inose_pencil(rep.form, bits);
  } else {
    rep.notes.push_back("imprimitive form: CM and Inose data omitted; field data uses d = disc(Q)");
  }
  rep.ns_over = "H(" + rep.d.get_str() + ")";
  rep.enriques_ns_over = "H(" + Int(4 * rep.d).get_str() + ")";
  rep.notes.push_back("NS of the Enriques quotient over H(4d) is conjectural; B lies in H(4d)");
  if (rep.exception_flag) rep.notes.push_back(kExceptionCaveat);
  return rep;
}

}  // namespace k3::enriques
