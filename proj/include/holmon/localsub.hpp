// Local subgroupoids on finite spaces: germs, atlases, the partial orders
// and the loc/glob calculus.
#pragma once

#include <cstdint>
#include <vector>

#include "holmon/groupoid.hpp"

namespace holmon {

// Chart (U_i, H_i): a wide subgroupoid of Q|U_i, stored by its arrows
// relative to the parent groupoid.
struct Chart {
  IndexSet open;
  IndexSet arrows;
};

struct Atlas {
  GroupoidPtr q;
  std::vector<Chart> charts;
};

// Canonical stalk family: for each point x, a wide subgroupoid of
// Q|MinOpen(x).  Germ normal form on a finite space.
class LocalSubgroupoid {
 public:
  LocalSubgroupoid(GroupoidPtr q, std::vector<IndexSet> stalks);

  const GroupoidPtr& parent() const { return q_; }
  const IndexSet& stalk(std::uint32_t x) const { return stalks_.at(x); }
  const std::vector<IndexSet>& stalks() const { return stalks_; }

  bool operator==(const LocalSubgroupoid& o) const {
    return q_ == o.q_ && stalks_ == o.stalks_;
  }

 private:
  GroupoidPtr q_;
  std::vector<IndexSet> stalks_;
};

// H|V: arrows of H with both ends in V.  V must be open and within H's
// object set.
Subgroupoid presheaf_restrict(const Subgroupoid& h, const IndexSet& v);

// Germ of a chart at x, i.e. its restriction to MinOpen(x).
IndexSet germ_at(const Groupoid& q, const Chart& chart, std::uint32_t x);

// Checks chart validity, the covering property and pairwise germ
// compatibility; returns the canonical stalk family.
LocalSubgroupoid validate_atlas(const Atlas& atlas);

bool germ_leq(const IndexSet& k, const IndexSet& k2);
bool ls_leq(const LocalSubgroupoid& s, const LocalSubgroupoid& t);

// loc(H)(x) = H|MinOpen(x) for a subgroupoid wide over the whole base.
LocalSubgroupoid loc(const GroupoidPtr& q, const IndexSet& wide_arrows);

// glob(s), computed as the subgroupoid generated by the canonical stalks.
Subgroupoid glob(const LocalSubgroupoid& s);

// Definitional form: intersection of all wide subgroupoids H of Q with
// s <= loc(H).  Only usable for small parents.
Subgroupoid glob_oracle(const LocalSubgroupoid& s, std::size_t arrow_cap = 16);

// Subgroupoid generated by the chart subgroupoids.
Subgroupoid glob_atlas(const Atlas& atlas);

bool refines(const Atlas& finer, const Atlas& coarser);

bool is_globally_adapted(const Atlas& atlas);

// Charts (MinOpen(x), K_x), deduplicated; refines every atlas of s.
Atlas canonical_atlas(const LocalSubgroupoid& s);

// s <= loc(glob(s)); can fail in general.
bool check_locglob(const LocalSubgroupoid& s);

// All wide subgroupoids of q (arrow sets).  Throws TooLarge when the
// parent has more arrows than the cap allows.
std::vector<IndexSet> enumerate_wide_subgroupoids(const Groupoid& q, std::size_t arrow_cap = 16);

// All local subgroupoids of q, enumerated stalk-wise with the coherence
// filter.  Capped by the total number of candidate stalk families.
std::vector<LocalSubgroupoid> enumerate_local_subgroupoids(const GroupoidPtr& q,
                                                           std::size_t cap = 100000);

}  // namespace holmon
