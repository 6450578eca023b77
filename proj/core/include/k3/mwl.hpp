#pragma once

#include <string>
#include <vector>

#include "k3/fibers.hpp"
#include "k3/lattice.hpp"

namespace k3::ellsurf {

// Height correction of a section meeting simple component i (0 = identity).
// Components of additive fibers are numbered 1.. over the non-identity
// simple components; for I_n* component 1 is the near one.
Rat local_contribution(const KodairaFiber& f, int i);
Rat local_pairing(const KodairaFiber& f, int i, int j);

// h = 2 chi + 2 (P.O) - sum of contributions.
Rat height_from_data(int chi, const Rat& po, const std::vector<Rat>& contribs);

struct ShiodaTate {
  int rho = 0;
  Rat ns_disc;
};

ShiodaTate shioda_tate(const std::vector<KodairaFiber>& fibers, int mw_rank, const Int& torsion_order,
                       const Rat& mwl_disc);

struct PlaceComponent {
  Place place;
  KodairaFiber fiber;
  int component = 0;
  bool labelled = true;  // false when only the contribution is determined (IV, IV*, I0*)
  Rat contribution;
};

struct SectionAnalysis {
  bool zero_section = false;
  Rat po;  // intersection number with the zero section
  std::vector<PlaceComponent> components;  // one entry per reducible fiber
  int chi = 0;
  Rat height;
};

// x, y on the given model.  Throws DomainError when the point is not on the
// curve or when a component cannot be told apart (I_n*, n >= 1).
SectionAnalysis analyze_section(const WeierstrassModel& w, const RationalFunction& x,
                                const RationalFunction& y);
SectionAnalysis analyze_zero_section(const WeierstrassModel& w);

// Trivial lattice in the basis O, F, then the non-identity components of each
// reducible fiber of the survey in survey order.
lattice::EvenLattice trivial_lattice(const Survey& s);

// Coordinates of a section class in the trivial-lattice basis tensored with Q.
std::vector<Rat> section_class(const Survey& s, const SectionAnalysis& a);

// Overlattice generated by the trivial lattice and the given sections.
lattice::EvenLattice ns_overlattice(const Survey& s, const std::vector<SectionAnalysis>& sections);

// Whether Z/t1 x Z/t2 x ... embeds into the product of fiber component groups
// and |tors|^2 divides their order.
bool torsion_embeds(const std::vector<KodairaFiber>& fibers, const std::vector<Int>& torsion);

}  // namespace k3::ellsurf
