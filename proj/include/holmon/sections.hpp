// Admissible local sections, the inverse semigroup Gamma(G), germs of
// sections, and the germ groupoid J^r(G,W) with the final map psi.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holmon/groupoid.hpp"

namespace holmon {

// sigma : U -> G with alpha sigma = id; values[i] belongs to domain[i].
struct AdmissibleSection {
  IndexSet domain;
  std::vector<std::uint32_t> values;

  std::uint32_t value_at(std::uint32_t x) const;
  bool operator==(const AdmissibleSection& o) const {
    return domain == o.domain && values == o.values;
  }
  bool operator<(const AdmissibleSection& o) const {
    if (domain != o.domain) return domain < o.domain;
    return values < o.values;
  }
};

// Target map beta sigma as a point map.
PointMap target_map(const Groupoid& g, const AdmissibleSection& s);

// Throws SourceCondition / ImageNotOpen / NotHomeoOntoImage.
void validate_section(const Groupoid& g, const AdmissibleSection& s);
bool is_admissible(const Groupoid& g, const AdmissibleSection& s);

// (ts)(x) = comp(s(x), t(tgt(s(x)))): s acts first.  The domain shrinks
// to the points whose target lands in the domain of t; it may be empty.
AdmissibleSection section_product(const Groupoid& g, const AdmissibleSection& t,
                                  const AdmissibleSection& s);
AdmissibleSection section_inverse(const Groupoid& g, const AdmissibleSection& s);

// All admissible local sections with nonempty open domains, canonically
// ordered; optionally restricted to one domain.
std::vector<AdmissibleSection> enumerate_sections(const Groupoid& g,
                                                  std::optional<IndexSet> domain = {});

// A topologized generating piece of a groupoid: the arrow subset W and a
// topology on it (w_space point i corresponds to arrows[i]).
struct WContext {
  GroupoidPtr g;
  IndexSet arrows;
  FinSpace w_space;

  bool contains(std::uint32_t arrow) const { return set_contains(arrows, arrow); }
  std::uint32_t position(std::uint32_t arrow) const;
  // Minimal W-neighborhood of an arrow, as parent arrow indices.
  IndexSet min_open_arrows(std::uint32_t arrow) const;
};

// Gamma^r(W): sections with values in W that are continuous into W.
std::vector<AdmissibleSection> enumerate_gamma_w(const WContext& w);

// Germ of a section at x: its values on MinOpen(x).
struct SectionGerm {
  std::uint32_t base = 0;
  // (point, arrow) pairs sorted by point; the points are MinOpen(base).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> values;

  bool operator==(const SectionGerm& o) const { return base == o.base && values == o.values; }
  bool operator<(const SectionGerm& o) const {
    if (base != o.base) return base < o.base;
    return values < o.values;
  }
};

SectionGerm germ_of(const Groupoid& g, const AdmissibleSection& s, std::uint32_t x);
std::uint32_t germ_target(const Groupoid& g, const SectionGerm& a);
// Product in diagrammatic order: a at x, then b at the target of a.
SectionGerm germ_product(const Groupoid& g, const SectionGerm& a, const SectionGerm& b);
SectionGerm germ_inverse(const Groupoid& g, const SectionGerm& a);
std::string germ_label(const Groupoid& g, const SectionGerm& a);

// J^r(G,W) realized as a finite groupoid of germs.  Each germ keeps one
// witness word of Gamma^r(W) factors.
struct GermTable {
  GroupoidPtr jr;                                 // arrows are germs
  std::vector<SectionGerm> germs;                 // aligned with jr arrows
  std::vector<std::vector<std::uint32_t>> witness;  // factor indices into gamma_w
  std::vector<AdmissibleSection> gamma_w;
  IndexSet jrw_germs;  // jr arrows that are germs of Gamma^r(W) elements

  std::uint32_t germ_index(const SectionGerm& g) const;
};

// Closure of the Gamma^r(W) germs under product and inverse.
GermTable generate_jrgw(const WContext& w);

// psi([s]_x) = s(x); a groupoid morphism J^r(G,W) -> G.
std::uint32_t psi(const GermTable& t, std::uint32_t germ_arrow);

struct SectionabilityReport {
  bool ok;
  IndexSet uncovered;  // W-arrows with no continuous W-valued section through them
};

SectionabilityReport is_locally_sectionable(const WContext& w);

// Closure of Gamma^r(W) under the section product inside Gamma(G):
// Gamma^r(G,W), used for the holonomy charts.
std::vector<AdmissibleSection> gamma_closure(const Groupoid& g,
                                             std::vector<AdmissibleSection> generators);

}  // namespace holmon
