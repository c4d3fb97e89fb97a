// Finite groupoids with composition tables, subgroupoids, morphisms,
// loop-only quotients, and arrow-space topologies.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "holmon/finspace.hpp"

namespace holmon {

struct Arrow {
  std::string id;
  std::uint32_t src;
  std::uint32_t tgt;
};

class Groupoid;
using GroupoidPtr = std::shared_ptr<const Groupoid>;

// Raw tables handed to validation.  comp lists (u,v,uv) triples; a pair
// (u,v) with tgt(u) = src(v) must appear exactly once.
struct GroupoidData {
  FinSpace base;
  std::vector<Arrow> arrows;
  std::vector<std::array<std::uint32_t, 3>> comp;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> inv;    // (u, u^-1)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ident;  // (object, arrow)
};

// Composition convention: comp(u,v) is defined iff tgt(u) = src(v) and
// denotes "u then v", matching (x,y)(y,z) = (x,z) for the pair groupoid.
class Groupoid {
 public:
  const FinSpace& base() const { return base_; }
  std::size_t arrow_count() const { return arrows_.size(); }
  const Arrow& arrow(std::uint32_t u) const { return arrows_.at(u); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::uint32_t arrow_index(const std::string& id) const;
  bool has_arrow(const std::string& id) const { return arrow_index_.count(id) > 0; }

  std::uint32_t src(std::uint32_t u) const { return arrows_.at(u).src; }
  std::uint32_t tgt(std::uint32_t u) const { return arrows_.at(u).tgt; }
  std::uint32_t inv(std::uint32_t u) const { return inv_.at(u); }
  std::uint32_t ident(std::uint32_t x) const { return ident_.at(x); }
  bool is_identity(std::uint32_t u) const { return ident_.at(arrows_.at(u).src) == u; }

  bool composable(std::uint32_t u, std::uint32_t v) const { return tgt(u) == src(v); }
  // -1 when undefined.
  std::int32_t comp(std::uint32_t u, std::uint32_t v) const {
    return comp_.at(static_cast<std::size_t>(u) * arrows_.size() + v);
  }
  std::uint32_t comp_checked(std::uint32_t u, std::uint32_t v) const;

  // Arrows with source x.
  const IndexSet& star(std::uint32_t x) const { return stars_.at(x); }
  IndexSet all_arrows() const { return full_set(arrows_.size()); }
  IndexSet identity_arrows() const;

  std::string describe(std::uint32_t u) const { return arrows_.at(u).id; }

  friend GroupoidPtr validate_groupoid(GroupoidData data);

 private:
  FinSpace base_;
  std::vector<Arrow> arrows_;
  std::vector<std::int32_t> comp_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> ident_;
  std::vector<IndexSet> stars_;
  std::map<std::string, std::uint32_t> arrow_index_;
};

// Checks all groupoid axioms and sorts arrows canonically by
// (src, tgt, id).  Throws a named axiom violation with a witness.
GroupoidPtr validate_groupoid(GroupoidData data);

// A groupoid whose arrow set carries a topology; arrow-space point i is
// arrow i of the groupoid.
struct TopGroupoid {
  GroupoidPtr g;
  FinSpace arrow_space;
};

// The indiscrete groupoid S x S with the product arrow topology.
TopGroupoid pair_groupoid(const FinSpace& s);
// Arrows (x,n,y) with n mod k; product of S x discrete(Z_k) x S.
TopGroupoid cyc_groupoid(const FinSpace& s, unsigned k);

// Full subgroupoid on an open object set, as a standalone groupoid whose
// base is the subspace.
GroupoidPtr full_restrict(const GroupoidPtr& q, const IndexSet& u);

struct Subgroupoid {
  GroupoidPtr parent;
  IndexSet arrows;
  IndexSet objects;
};

bool is_wide_subgroupoid(const Groupoid& q, const IndexSet& arrows, const IndexSet& u);

// Least wide subgroupoid over u containing the seeds.
Subgroupoid generated_subgroupoid(const GroupoidPtr& q, const IndexSet& seeds, const IndexSet& u);

Subgroupoid intersect_subgroupoids(const Subgroupoid& a, const Subgroupoid& b);

// Extracts a subgroupoid as a standalone groupoid over the same base
// space; arrow ids are preserved.
GroupoidPtr materialize(const Subgroupoid& h);

struct GroupoidMorphism {
  GroupoidPtr dom;
  GroupoidPtr cod;
  std::vector<std::uint32_t> obj_map;
  std::vector<std::uint32_t> arrow_map;
};

// True iff src, tgt, ident, inv and comp are preserved everywhere.
bool validate_morphism(const GroupoidMorphism& f);

// Arrows sent to an identity of the codomain.
Subgroupoid kernel(const GroupoidMorphism& f);

// n must consist of loops; checks closure of n.arrows under conjugation.
bool is_normal(const Groupoid& g, const Subgroupoid& n);

struct Quotient {
  GroupoidPtr groupoid;
  GroupoidMorphism projection;
  std::vector<std::uint32_t> class_of;  // arrow of g -> arrow of quotient
};

// Quotient by a wide, loop-only, normal subgroupoid.
Quotient quotient_by(const GroupoidPtr& g, const Subgroupoid& n);

struct CheckItem {
  bool pass = true;
  std::string witness;
};

struct TopGroupoidReport {
  CheckItem src_continuous;
  CheckItem tgt_continuous;
  CheckItem object_embedding;
  CheckItem delta_continuous;
  bool all() const {
    return src_continuous.pass && tgt_continuous.pass && object_embedding.pass &&
           delta_continuous.pass;
  }
};

// Diagnostic: continuity of src/tgt, the object-inclusion embedding, and
// continuity of the difference map on the alpha-pullback.
TopGroupoidReport check_top_groupoid(const TopGroupoid& tg);

// Fixture groupoids.
TopGroupoid pair_disc2();
TopGroupoid pair_sierp();
TopGroupoid pair_circ4();
TopGroupoid cyc_disc2_2();
TopGroupoid cyc_circ4(unsigned k);

}  // namespace holmon
