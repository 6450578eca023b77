#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3/bqf.hpp"
#include "k3/cm.hpp"
#include "k3/lattice.hpp"
#include "k3/weierstrass.hpp"

namespace k3::enriques {

// Stored quantities are A^3 and B^2; the roots themselves are never taken.
struct InoseData {
  bool exact = false;
  Rat A_cubed, B_squared;                     // valid when exact
  num::Complex A_cubed_approx, B_squared_approx;
  unsigned bits = 0;
  int mw_rank = 0;
  std::string extra_fibers;                   // none, I2, 2I2, IV
  bool e_isomorphic_eprime = false;
  std::optional<ellsurf::WeierstrassModel> model;  // over Q, when exact
};

InoseData inose_pencil(const bqf::Form& q, unsigned bits = cm::kDefaultBits);

struct Verdict {
  bool value = false;
  std::string reason;
  std::string paper_anchor;
};

Verdict enriques_admissible(const bqf::Form& q);

struct BaseChangeVerdict {
  std::string verdict;  // yes, no, exception
  std::string mechanism;
  std::string paper_anchor;
};

BaseChangeVerdict base_change_enriques(const bqf::Form& q);

// Forms (1,0,|d|/4) over the even two-torsion discriminants up to 7392,
// without -4, -8, -16.
std::vector<bqf::Form> exception_list(int threads = 1);
extern const char* const kExceptionCaveat;

struct FieldReport {
  Int d;
  Int class_number;
  Int deg_HK;
  int deg_H4d_over_Hd = 0;
  Int genus_size;
  Int kummer_disc;
  std::string min_field_bound;
  bool primitive = true;
};

FieldReport fields_report(const bqf::Form& q);

struct KummerSandwich {
  bqf::Form kummer_form;
  Int kummer_disc;
  bool is_kummer = false;
  std::optional<bqf::Form> half_form;
};

KummerSandwich kummer_sandwich(const bqf::Form& q);

struct BrauerExample {
  std::string ns_expression;
  Int d;
  lattice::EvenLattice ns;
  std::vector<std::string> notes;
};

BrauerExample brauer_example(const Int& M, const Int& N);

std::vector<long> class_number_one_discriminants(int threads = 1);

struct K3EnriquesReport {
  bqf::Form form;  // reduced
  Int d;
  bool is_kummer = false;
  Verdict enriques_admissible;
  BaseChangeVerdict base_change_involution;
  bool exception_flag = false;
  std::optional<cm::CMPair> cm;
  std::optional<InoseData> inose;
  FieldReport fields;
  KummerSandwich sandwich;
  std::string ns_over;
  std::string enriques_ns_over;
  bool enriques_ns_conjectural = true;
  std::vector<std::string> notes;
};

K3EnriquesReport enriques_report(const bqf::Form& q, unsigned bits = cm::kDefaultBits);

}  // namespace k3::enriques
