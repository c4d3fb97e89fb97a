// Pregroupoids, the monodromy groupoid as words modulo relations, and the
// weak monodromy principle.  The word problem is semi-decided: equality
// search is a bounded bidirectional BFS over rewrite moves, and
// distinctness comes from separating morphisms.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holmon/localsub.hpp"

namespace holmon {

// W = union of the chart subgroupoids, with per-arrow chart membership.
struct Pregroupoid {
  GroupoidPtr q;
  IndexSet arrows;
  std::vector<IndexSet> charts_of;  // aligned with `arrows`
  bool adapted = false;
  // All pairs (a,b) in W x W with comp(a,b) = u, per W-arrow u.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> factor_pairs;

  bool contains(std::uint32_t arrow) const { return set_contains(arrows, arrow); }
  std::size_t position(std::uint32_t arrow) const;
};

// A composable chain of arrows; empty words carry their base point so
// that identity classes at distinct objects stay distinct.
struct Word {
  std::uint32_t base = 0;
  std::vector<std::uint32_t> letters;

  bool operator==(const Word& o) const { return base == o.base && letters == o.letters; }
  bool operator<(const Word& o) const {
    if (base != o.base) return base < o.base;
    return letters < o.letters;
  }
};

Pregroupoid build_W(const Atlas& atlas);

// Validates the composability chain; base is taken from the first letter
// for nonempty words.
Word make_word(const Groupoid& q, std::uint32_t base, std::vector<std::uint32_t> letters);

std::uint32_t word_src(const Groupoid& q, const Word& w);
std::uint32_t word_tgt(const Groupoid& q, const Word& w);

// Fold of the composition table; the image of the word in glob.
std::uint32_t p_image(const Groupoid& q, const Word& w);

// One-letter word; the universal morphism on W.
Word itilde(const Pregroupoid& w, std::uint32_t u);

// Greedy leftmost merging of adjacent pairs whose product lies in W,
// with identity letters eliminated.
Word reduce(const Pregroupoid& w, const Word& word);

struct RewriteMove {
  enum class Kind { Merge, Split, DeleteIdentity, InsertIdentity } kind;
  std::size_t pos;
  std::string describe() const;
};

// All words one rewrite move away, in deterministic order.
std::vector<std::pair<RewriteMove, Word>> rewrite_neighbors(const Pregroupoid& w,
                                                            const Word& word);

// A compatible family of chart-wise morphisms into a groupoid on the same
// object space; induces a pregroupoid morphism on W.
struct LocalMorphism {
  std::string name;
  Atlas atlas;
  GroupoidPtr target;
  // chart_maps[i] lists (chart arrow, target arrow) pairs for chart i.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> chart_maps;
  // Combined map on W, filled by validation.
  std::vector<std::int64_t> on_w;  // indexed by parent arrow; -1 outside W

  std::uint32_t apply(std::uint32_t w_arrow) const;
};

// Checks the overlap condition and the pregroupoid-morphism condition
// exhaustively over W x W; fills the combined map.
LocalMorphism validate_local_morphism(LocalMorphism lm);

// M(f): fold of letter images in the target.  Invariant under rewrite
// moves for every valid local morphism.
std::uint32_t extend_morphism(const LocalMorphism& lm, const Word& word);

struct EqualityVerdict {
  enum class Kind { Equal, Distinct, Unknown } kind;
  // Equal: chain of words from w1 to w2, each one move from the next.
  std::vector<Word> trace;
  // Distinct: name of the separating morphism and the two image arrows.
  std::string separator;
  std::string image1, image2;
  std::size_t explored = 0;
};

// Sound in both definite verdicts; Unknown when the budget runs out.
EqualityVerdict equal_in_mon(const Pregroupoid& w, const Word& w1, const Word& w2,
                             std::size_t budget = 10000,
                             std::span<const LocalMorphism> separators = {});

enum class Tri { Yes, No, Unknown };

struct SimplyConnectedResult {
  Tri verdict;
  std::optional<Word> witness;
  std::string detail;
};

// Bounded verdict on whether p : Mon -> glob(s) is an isomorphism: No
// when a word with identity image is proven distinct from the empty
// word, Yes when all identity-image words up to the length bound are
// proven trivial, Unknown otherwise.
SimplyConnectedResult is_simply_connected_bounded(const Atlas& atlas, std::size_t budget = 10000,
                                                  std::size_t max_len = 4,
                                                  std::span<const LocalMorphism> separators = {});

// All composable words over W with length <= max_len, canonically ordered.
std::vector<Word> enumerate_words(const Pregroupoid& w, std::size_t max_len);

}  // namespace holmon
