// Finite topological spaces with minimal-open-neighborhood queries, plus
// continuity and open-homeomorphism predicates for partial point maps.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holmon/error.hpp"
#include "holmon/sets.hpp"

namespace holmon {

inline constexpr std::size_t kOpensCap = 100000;

// A finite space is determined by the minimal open neighborhood of each
// point: the opens are exactly the unions of minimal opens.  Explicitly
// validated spaces also keep their full open-set lattice so non-closure
// witnesses can be reported and tests can quantify over every open.
class FinSpace {
 public:
  FinSpace() = default;

  // Checks the lattice axioms on an explicit family of opens.
  static FinSpace validated(std::vector<std::string> points, std::vector<IndexSet> opens);

  // Trusted builder from a minimal-open base (product and subbase
  // topologies).  Verifies the base is realizable: x in M(x), and
  // y in M(x) implies M(y) subset of M(x).
  static FinSpace from_min_opens(std::vector<std::string> points, std::vector<IndexSet> min_opens);

  static FinSpace discrete(std::vector<std::string> points);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point_name(std::uint32_t x) const { return points_.at(x); }
  std::uint32_t index_of(const std::string& id) const;
  bool has_point(const std::string& id) const;

  const IndexSet& min_open(std::uint32_t x) const;
  const std::vector<IndexSet>& min_opens() const { return min_open_; }

  bool is_open(const IndexSet& u) const;

  bool has_explicit_opens() const { return opens_.has_value(); }
  const std::vector<IndexSet>& explicit_opens() const;

  // The full lattice, materializing it if necessary.  Throws TooLarge
  // beyond the cap.
  std::vector<IndexSet> all_opens(std::size_t cap = kOpensCap) const;

  // Subspace on an arbitrary point subset; point names are preserved.
  FinSpace subspace(const IndexSet& a) const;

  bool operator==(const FinSpace& o) const {
    return points_ == o.points_ && min_open_ == o.min_open_;
  }

 private:
  std::vector<std::string> points_;
  std::vector<IndexSet> min_open_;
  std::optional<std::vector<IndexSet>> opens_;
  std::map<std::string, std::uint32_t> index_;

  void build_index();
  void check_base() const;
};

// Partial map between point sets; values[i] is the image of domain[i].
struct PointMap {
  IndexSet domain;
  std::vector<std::uint32_t> values;

  std::uint32_t value_at(std::uint32_t x) const;
  IndexSet image() const { return make_set(values); }
};

// True iff preimages of opens are open in the subspace sense.  The domain
// must be open, which collapses the subspace clause; on finite spaces this
// is equivalent to f(M(x)) subset of M(f(x)) for all x in the domain.
bool is_continuous(const PointMap& f, const FinSpace& s, const FinSpace& t);

// True iff f is injective, its image is open, and f is a homeomorphism
// from its (open) domain onto the image.
bool is_open_homeo_onto_image(const PointMap& f, const FinSpace& s);

// Canonical fixture spaces reused throughout.
FinSpace sierp_space();   // points a,b; opens {},{a},{a,b}
FinSpace disc2_space();   // two points, discrete
FinSpace circ4_space();   // four-point circle model

// Sorts a family of sets canonically: by size, then lexicographically.
void sort_opens(std::vector<IndexSet>& opens);

}  // namespace holmon
