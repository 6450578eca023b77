#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3/weierstrass.hpp"

namespace k3::ellsurf {

struct Place {
  bool infinite = false;
  Poly p;             // monic generator for finite places
  FieldElement root;  // for linear places

  static Place at_infinity() { return Place{true, Poly(), FieldElement()}; }
  static Place at_root(const FieldElement& r, long m);
  bool linear() const { return infinite || p.degree() == 1; }
  int degree() const { return infinite ? 1 : p.degree(); }
  std::string str() const;  // "inf", "0", "-8", "1/9", "1+sqrt(-3)"
};

enum class Kodaira { I0, In, II, III, IV, I0s, Ins, IVs, IIIs, IIs };

struct KodairaFiber {
  Kodaira kind = Kodaira::I0;
  int n = 0;                  // for I_n and I_n*
  std::optional<bool> split;  // multiplicative fibers at linear places

  int components() const;
  int euler() const;
  int group_order() const;
  int rank_contribution() const { return components() - 1; }
  bool additive() const { return kind != Kodaira::I0 && kind != Kodaira::In; }
  std::string symbol() const;  // I6, II, I0*, I2*, IV*, ...
  // Root lattice of the non-identity components: ('A', n-1), ('D', n+4), ('E', 6..8).
  std::pair<char, int> root_type() const;
  bool operator==(const KodairaFiber& o) const { return kind == o.kind && n == o.n; }
};

// Char 0 table on minimal valuations (v(c4), v(c6), v(disc)).
KodairaFiber classify(int v_c4, int v_c6, int v_disc);

// Parses "I6", "I0*", "IV*", "II" ...
KodairaFiber parse_fiber(const std::string& s);

/*
 * Short model around a linear place: s is the local uniformizer (t - r, or
 * 1/t at infinity), A and B are minimal at s = 0.  The short model of the
 * input was rescaled by s^(weight) at infinity and then divided by
 * (s^4, s^6) `reductions` times.
 */
struct LocalModel {
  Place place;
  Poly A, B;
  int weight = 0;      // degree balancing at infinity, 0 for finite places
  int reductions = 0;  // (x,y) -> (x/s^2, y/s^3) steps
  int v_c4 = 0, v_c6 = 0, v_disc = 0;

  // Transport a point of the global short model to the local one.
  RationalFunction local_x(const RationalFunction& X) const;
  RationalFunction local_y(const RationalFunction& Y) const;
};

// Weight w with deg A <= 4w, deg B <= 6w, deg disc <= 12w.
int model_weight(const ShortForm& sf);

LocalModel localize_minimal(const WeierstrassModel& w, const Place& p);
KodairaFiber kodaira_type(const WeierstrassModel& w, const Place& p);

struct SurveyEntry {
  Place place;
  KodairaFiber fiber;
};

struct Survey {
  std::vector<SurveyEntry> fibers;  // singular fibers at linear places, finite first, then infinity
  Poly residual;                    // product of nonlinear places, all I1
  int residual_i1 = 0;
  int euler_sum = 0;
  int chi = 0;  // euler_sum / 12
  std::string configuration() const;  // "I6@inf, I3@0, ..., 4*I1"
};

Survey fiber_survey(const WeierstrassModel& w);

struct BaseChange {
  WeierstrassModel model;
  RationalFunction phi;    // t = phi(s)
  RationalFunction scale;  // x' = scale^2 x(phi), y' = scale^3 y(phi)

  RationalFunction transport_x(const RationalFunction& x) const;
  RationalFunction transport_y(const RationalFunction& y) const;
};

BaseChange base_change(const WeierstrassModel& w, const RationalFunction& phi);

// y^2 = x^3 + g a2 x^2 + g^2 a4 x + g^3 a6; needs a1 = a3 = 0.
WeierstrassModel quadratic_twist(const WeierstrassModel& w, const Poly& gamma);

// (U, sqrt(g) V) on the original model maps to (g U, g^2 V) on the twist.
std::pair<RationalFunction, RationalFunction> twist_section(const RationalFunction& U,
                                                            const RationalFunction& V,
                                                            const Poly& gamma);

}  // namespace k3::ellsurf
