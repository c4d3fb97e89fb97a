// Locally Lie (topological) groupoids, the holonomy groupoid
// Hol = J^r(G,W)/J_0, extendability, the universal factorization, and the
// monodromy lift zeta : Mon -> Hol.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holmon/monodromy.hpp"
#include "holmon/sections.hpp"

namespace holmon {

// Reading of "W with its topology": subspace of the ambient arrow space,
// or generated by ambient opens intersected with single charts (which
// makes every chart open by construction).
enum class TopologyMode { Subspace, AtlasGenerated };

const char* topology_mode_name(TopologyMode mode);

struct LocallyLieReport {
  CheckItem g1, g2, g3, g4, g5;
  bool all() const { return g1.pass && g2.pass && g3.pass && g4.pass && g5.pass; }
};

// W-space over the W-arrows of q (indices into q's arrow set).
FinSpace make_w_space(const TopGroupoid& q, const std::vector<Chart>& charts, const IndexSet& w,
                      TopologyMode mode);

// Axioms G1-G5 for a pair (G, W) with a topology on W.  G1 includes the
// requirement that the object inclusion embeds the base into W.
LocallyLieReport check_locally_lie(const GroupoidPtr& g, const IndexSet& w,
                                   const FinSpace& w_space);

struct RegularReport {
  std::vector<SectionabilityReport> per_chart;
  bool regular = true;
};

// Each chart groupoid (alpha_i, beta_i, H_i) locally sectionable, with
// the chart topology taken as a subspace of the ambient arrow space.
RegularReport check_regular(const TopGroupoid& q, const Atlas& atlas);

struct StrictReport {
  TopologyMode mode;
  bool adapted = false;
  RegularReport reg;
  std::vector<CheckItem> chart_open;  // each H_i open in W
  CheckItem w_delta_open;
  bool all() const;
  std::string summary() const;
};

StrictReport check_strictly_regular(const TopGroupoid& q, const Atlas& atlas, TopologyMode mode);

struct LocallyLieGroupoid {
  GroupoidPtr g;  // glob(s), materialized
  IndexSet w;     // W-arrows as indices into g
  FinSpace w_space;
  TopologyMode mode;
  std::vector<Chart> charts;  // relative to g
  LocallyLieReport report;

  WContext wctx() const { return WContext{g, w, w_space}; }
};

// Builds (glob(s), W(U_s)) from a strictly regular atlas and re-verifies
// all five axioms.
LocallyLieGroupoid build_from_atlas(const TopGroupoid& q, const Atlas& atlas, TopologyMode mode);

// Direct construction when the pieces are already at hand (fixtures and
// diagnostics); re-checks the axioms without requiring them to pass.
LocallyLieGroupoid assemble_locally_lie(GroupoidPtr g, IndexSet w, FinSpace w_space,
                                        TopologyMode mode, std::vector<Chart> charts);

struct HolGroupoid {
  LocallyLieGroupoid loclie;
  GermTable jr;
  IndexSet j0;                         // germ arrows in J^r(W) with identity value
  GroupoidPtr hol;                     // quotient J^r(G,W)/J_0
  std::vector<std::uint32_t> class_of;  // germ arrow -> hol arrow
  GroupoidMorphism p;                  // jr -> hol
  GroupoidMorphism phi;                // hol -> g, with phi o p = psi
  FinSpace hol_space;                  // chart-generated topology on hol
  std::vector<std::uint32_t> embed;    // W position -> hol arrow
  std::vector<std::uint32_t> embed_germ;  // W position -> jr arrow of the chosen germ
  std::vector<AdmissibleSection> gamma_gw;  // section closure used for charts
};

HolGroupoid build_hol(const LocallyLieGroupoid& l);

// <f>_a(w) for the canonical smooth section f through w.
std::uint32_t embed_w(const HolGroupoid& h, std::uint32_t w_arrow);

// sigma_s(w) = <s f>_alpha(w) for a section s given as a product of
// Gamma^r(W) factors (indices into jr.gamma_w, diagrammatic order).
std::uint32_t chart_sigma(const HolGroupoid& h, const std::vector<std::uint32_t>& factors,
                          std::uint32_t w_arrow);

struct ExtendabilityResult {
  bool extendable;
  IndexSet defects;  // germ arrows in ker psi but not in J^r(W)
};

// ker psi subset of J^r(W), with defect witnesses.
ExtendabilityResult is_extendable(const HolGroupoid& h);
IndexSet holonomy_defects(const HolGroupoid& h);
// Independent route: phi is bijective.
bool extendable_via_phi(const HolGroupoid& h);

// Globalisability universal property.  A must be a topological groupoid
// on the same object space; xi : A -> G.  Throws HypothesisFailure(a-d).
GroupoidMorphism universal_factor(const HolGroupoid& h, const TopGroupoid& a,
                                  const GroupoidMorphism& xi);

struct MonOverHol {
  std::vector<std::uint32_t> w_prime;  // W position -> hol arrow (embedded copy)
};

MonOverHol lift_monodromy(const HolGroupoid& h);

// Letter-fold of embed_w; the projection Mon -> Hol on word classes.
std::uint32_t mon_fold(const HolGroupoid& h, const Word& word);

// Neighborhood basis at a word class: the translates of a W'-open.
std::vector<Word> mon_basis(const HolGroupoid& h, const Word& word, const IndexSet& w_open);

struct IdentityContinuity {
  std::uint32_t object;
  bool pass;
  std::string witness;
};

struct StrongMonodromyResult {
  LocalMorphism extension;  // validated local morphism; extend_morphism gives M(f)
  std::vector<IdentityContinuity> certificate;
  bool continuous_at_identities() const;
};

// Theorem smp part c): extension of a smooth local morphism, with a
// continuity certificate at the identities of Mon.
StrongMonodromyResult strong_monodromy_extend(const TopGroupoid& q, const Atlas& atlas,
                                              const LocalMorphism& lm, const TopGroupoid& k,
                                              TopologyMode mode);

struct ZetaStar {
  std::uint32_t object;
  std::size_t star_size;
  bool surjective;
  std::vector<std::pair<std::uint32_t, Word>> words;  // hol arrow -> one word preimage
  std::string injectivity;  // "injective up to budget" / witness text / "unknown"
};

struct ZetaReport {
  std::vector<ZetaStar> stars;
  bool star_surjective;
};

// Star-wise diagnostics for zeta : Mon -> Hol.  Makes no covering-map
// assertion.
ZetaReport zeta_report(const HolGroupoid& h, std::size_t budget = 10000,
                       std::span<const LocalMorphism> separators = {});

}  // namespace holmon
