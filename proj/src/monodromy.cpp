#include "holmon/monodromy.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace holmon {

std::size_t Pregroupoid::position(std::uint32_t arrow) const {
  auto it = std::lower_bound(arrows.begin(), arrows.end(), arrow);
  if (it == arrows.end() || *it != arrow) {
    fail(Err::NotInW, q->describe(arrow));
  }
  return static_cast<std::size_t>(it - arrows.begin());
}

Pregroupoid build_W(const Atlas& atlas) {
  LocalSubgroupoid s = validate_atlas(atlas);
  Pregroupoid w;
  w.q = atlas.q;
  for (const Chart& c : atlas.charts) {
    w.arrows = set_union(w.arrows, c.arrows);
  }
  w.charts_of.assign(w.arrows.size(), IndexSet{});
  for (std::uint32_t i = 0; i < atlas.charts.size(); ++i) {
    for (std::uint32_t a : atlas.charts[i].arrows) {
      w.charts_of[w.position(a)].push_back(i);
    }
  }
  w.adapted = glob_atlas(atlas).arrows == glob(s).arrows;
  w.factor_pairs.assign(w.arrows.size(), {});
  const Groupoid& q = *atlas.q;
  for (std::uint32_t a : w.arrows) {
    for (std::uint32_t b : w.arrows) {
      if (!q.composable(a, b)) continue;
      std::uint32_t c = q.comp_checked(a, b);
      if (w.contains(c)) {
        w.factor_pairs[w.position(c)].emplace_back(a, b);
      }
    }
  }
  return w;
}

Word make_word(const Groupoid& q, std::uint32_t base, std::vector<std::uint32_t> letters) {
  if (base >= q.base().size()) {
    fail(Err::UnknownPoint, "word base index " + std::to_string(base));
  }
  for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
    if (!q.composable(letters[i], letters[i + 1])) {
      fail(Err::NotComposable,
           q.describe(letters[i]) + " then " + q.describe(letters[i + 1]));
    }
  }
  Word w;
  w.base = letters.empty() ? base : q.src(letters.front());
  w.letters = std::move(letters);
  return w;
}

std::uint32_t word_src(const Groupoid& q, const Word& w) {
  return w.letters.empty() ? w.base : q.src(w.letters.front());
}

std::uint32_t word_tgt(const Groupoid& q, const Word& w) {
  return w.letters.empty() ? w.base : q.tgt(w.letters.back());
}

std::uint32_t p_image(const Groupoid& q, const Word& w) {
  if (w.letters.empty()) {
    return q.ident(w.base);
  }
  std::uint32_t acc = w.letters.front();
  for (std::size_t i = 1; i < w.letters.size(); ++i) {
    acc = q.comp_checked(acc, w.letters[i]);
  }
  return acc;
}

Word itilde(const Pregroupoid& w, std::uint32_t u) {
  w.position(u);  // membership check
  return make_word(*w.q, w.q->src(u), {u});
}

Word reduce(const Pregroupoid& w, const Word& word) {
  const Groupoid& q = *w.q;
  Word cur = word;
  cur.base = word_src(q, word);
  for (std::uint32_t u : cur.letters) {
    w.position(u);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.letters.size(); ++i) {
      if (q.is_identity(cur.letters[i])) {
        cur.letters.erase(cur.letters.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (std::size_t i = 0; i + 1 < cur.letters.size(); ++i) {
      std::uint32_t c = q.comp_checked(cur.letters[i], cur.letters[i + 1]);
      if (w.contains(c)) {
        cur.letters[i] = c;
        cur.letters.erase(cur.letters.begin() + static_cast<std::ptrdiff_t>(i + 1));
        changed = true;
        break;
      }
    }
  }
  return cur;
}

std::string RewriteMove::describe() const {
  const char* k = kind == Kind::Merge             ? "merge"
                  : kind == Kind::Split           ? "split"
                  : kind == Kind::DeleteIdentity  ? "delete-identity"
                                                  : "insert-identity";
  return std::string(k) + "@" + std::to_string(pos);
}

std::vector<std::pair<RewriteMove, Word>> rewrite_neighbors(const Pregroupoid& w,
                                                            const Word& word) {
  const Groupoid& q = *w.q;
  std::vector<std::pair<RewriteMove, Word>> out;
  // Merges.
  for (std::size_t i = 0; i + 1 < word.letters.size(); ++i) {
    std::uint32_t c = q.comp_checked(word.letters[i], word.letters[i + 1]);
    if (w.contains(c)) {
      Word next = word;
      next.letters[i] = c;
      next.letters.erase(next.letters.begin() + static_cast<std::ptrdiff_t>(i + 1));
      next.base = word_src(q, next);
      out.push_back({{RewriteMove::Kind::Merge, i}, std::move(next)});
    }
  }
  // Splits, in factor-pair order.
  for (std::size_t i = 0; i < word.letters.size(); ++i) {
    for (const auto& [a, b] : w.factor_pairs[w.position(word.letters[i])]) {
      Word next = word;
      next.letters[i] = a;
      next.letters.insert(next.letters.begin() + static_cast<std::ptrdiff_t>(i + 1), b);
      out.push_back({{RewriteMove::Kind::Split, i}, std::move(next)});
    }
  }
  // Identity deletions.
  for (std::size_t i = 0; i < word.letters.size(); ++i) {
    if (q.is_identity(word.letters[i])) {
      Word next = word;
      next.letters.erase(next.letters.begin() + static_cast<std::ptrdiff_t>(i));
      next.base = word_src(q, word);
      out.push_back({{RewriteMove::Kind::DeleteIdentity, i}, std::move(next)});
    }
  }
  // Identity insertions at every boundary.
  for (std::size_t i = 0; i <= word.letters.size(); ++i) {
    std::uint32_t at = word.letters.empty() ? word.base
                       : i < word.letters.size() ? q.src(word.letters[i])
                                                 : q.tgt(word.letters.back());
    std::uint32_t e = q.ident(at);
    if (!w.contains(e)) continue;
    Word next = word;
    next.letters.insert(next.letters.begin() + static_cast<std::ptrdiff_t>(i), e);
    next.base = word_src(q, next);
    out.push_back({{RewriteMove::Kind::InsertIdentity, i}, std::move(next)});
  }
  return out;
}

std::uint32_t LocalMorphism::apply(std::uint32_t w_arrow) const {
  std::int64_t v = on_w.at(w_arrow);
  if (v < 0) {
    fail(Err::NotInW, atlas.q->describe(w_arrow));
  }
  return static_cast<std::uint32_t>(v);
}

LocalMorphism validate_local_morphism(LocalMorphism lm) {
  const Groupoid& q = *lm.atlas.q;
  const Groupoid& k = *lm.target;
  LocalSubgroupoid s = validate_atlas(lm.atlas);
  if (q.base().points() != k.base().points()) {
    fail(Err::BaseMismatch, "target groupoid must live on the same object space");
  }
  if (!is_globally_adapted(lm.atlas)) {
    fail(Err::NotAdapted, "local morphisms require a globally adapted atlas");
  }
  if (lm.chart_maps.size() != lm.atlas.charts.size()) {
    fail(Err::Parse, "one component per chart required");
  }

  lm.on_w.assign(q.arrow_count(), -1);
  for (std::size_t i = 0; i < lm.chart_maps.size(); ++i) {
    const Chart& chart = lm.atlas.charts[i];
    std::map<std::uint32_t, std::uint32_t> fi;
    for (const auto& [u, fu] : lm.chart_maps[i]) {
      if (!set_contains(chart.arrows, u)) {
        fail(Err::Parse, "component " + std::to_string(i) + " maps a non-chart arrow");
      }
      fi[u] = fu;
    }
    if (fi.size() != chart.arrows.size()) {
      fail(Err::Parse, "component " + std::to_string(i) + " must cover its chart");
    }
    // f_i is a morphism over the inclusion of the chart open set.
    for (const auto& [u, fu] : fi) {
      if (k.src(fu) != q.src(u) || k.tgt(fu) != q.tgt(u)) {
        fail(Err::NotPregroupoidMorphism,
             "component " + std::to_string(i) + " moves endpoints of " + q.describe(u));
      }
      for (const auto& [v, fv] : fi) {
        if (!q.composable(u, v)) continue;
        std::uint32_t uv = q.comp_checked(u, v);
        if (set_contains(chart.arrows, uv) && fi.at(uv) != k.comp_checked(fu, fv)) {
          fail(Err::NotPregroupoidMorphism,
               "component " + std::to_string(i) + " at (" + q.describe(u) + "," +
                   q.describe(v) + ")");
        }
      }
    }
    // Overlap agreement against everything recorded so far.
    for (const auto& [u, fu] : fi) {
      if (lm.on_w[u] >= 0 && lm.on_w[u] != static_cast<std::int64_t>(fu)) {
        fail(Err::OverlapDisagreement, q.describe(u));
      }
      lm.on_w[u] = fu;
    }
  }

  // The induced map on W is a pregroupoid morphism.
  Pregroupoid w = build_W(lm.atlas);
  for (std::uint32_t a : w.arrows) {
    for (std::uint32_t b : w.arrows) {
      if (!q.composable(a, b)) continue;
      std::uint32_t ab = q.comp_checked(a, b);
      if (!w.contains(ab)) continue;
      if (lm.apply(ab) != k.comp_checked(lm.apply(a), lm.apply(b))) {
        fail(Err::NotPregroupoidMorphism, "(" + q.describe(a) + "," + q.describe(b) + ")");
      }
    }
  }
  return lm;
}

std::uint32_t extend_morphism(const LocalMorphism& lm, const Word& word) {
  const Groupoid& k = *lm.target;
  if (word.letters.empty()) {
    return k.ident(word.base);
  }
  std::uint32_t acc = lm.apply(word.letters.front());
  for (std::size_t i = 1; i < word.letters.size(); ++i) {
    acc = k.comp_checked(acc, lm.apply(word.letters[i]));
  }
  return acc;
}

namespace {

// Bidirectional BFS over the rewrite graph; parents allow trace replay.
struct Frontier {
  std::map<Word, Word> parent;  // word -> predecessor
  std::deque<Word> queue;
};

std::vector<Word> unwind(const std::map<Word, Word>& parent, Word at) {
  std::vector<Word> path{at};
  while (true) {
    auto it = parent.find(path.back());
    if (it == parent.end() || it->second == path.back()) {
      break;
    }
    path.push_back(it->second);
  }
  return path;
}

}  // namespace

EqualityVerdict equal_in_mon(const Pregroupoid& w, const Word& w1, const Word& w2,
                             std::size_t budget, std::span<const LocalMorphism> separators) {
  const Groupoid& q = *w.q;
  for (std::uint32_t u : w1.letters) w.position(u);
  for (std::uint32_t u : w2.letters) w.position(u);
  if (word_src(q, w1) != word_src(q, w2) || word_tgt(q, w1) != word_tgt(q, w2)) {
    fail(Err::EndpointMismatch, "words have different endpoints");
  }

  EqualityVerdict verdict;
  std::uint32_t p1 = p_image(q, w1);
  std::uint32_t p2 = p_image(q, w2);
  if (p1 != p2) {
    verdict.kind = EqualityVerdict::Kind::Distinct;
    verdict.separator = "p";
    verdict.image1 = q.describe(p1);
    verdict.image2 = q.describe(p2);
    return verdict;
  }
  for (const LocalMorphism& lm : separators) {
    std::uint32_t f1 = extend_morphism(lm, w1);
    std::uint32_t f2 = extend_morphism(lm, w2);
    if (f1 != f2) {
      verdict.kind = EqualityVerdict::Kind::Distinct;
      verdict.separator = lm.name;
      verdict.image1 = lm.target->describe(f1);
      verdict.image2 = lm.target->describe(f2);
      return verdict;
    }
  }

  Frontier a, b;
  a.parent.emplace(w1, w1);
  a.queue.push_back(w1);
  b.parent.emplace(w2, w2);
  b.queue.push_back(w2);
  std::size_t explored = 0;

  auto finish = [&](const Word& meet) {
    std::vector<Word> left = unwind(a.parent, meet);   // meet .. w1
    std::vector<Word> right = unwind(b.parent, meet);  // meet .. w2
    std::reverse(left.begin(), left.end());            // w1 .. meet
    verdict.kind = EqualityVerdict::Kind::Equal;
    verdict.trace = std::move(left);
    for (std::size_t i = 1; i < right.size(); ++i) {
      verdict.trace.push_back(right[i]);
    }
    verdict.explored = explored;
  };

  if (w1 == w2) {
    verdict.kind = EqualityVerdict::Kind::Equal;
    verdict.trace = {w1};
    return verdict;
  }

  while ((!a.queue.empty() || !b.queue.empty()) && explored < budget) {
    Frontier& expand = (a.queue.size() <= b.queue.size() && !a.queue.empty()) || b.queue.empty()
                           ? a
                           : b;
    Frontier& other = (&expand == &a) ? b : a;
    Word cur = expand.queue.front();
    expand.queue.pop_front();
    ++explored;
    for (auto& [move, next] : rewrite_neighbors(w, cur)) {
      (void)move;
      if (expand.parent.emplace(next, cur).second) {
        if (other.parent.count(next)) {
          // Complete this side's parent chain before unwinding.
          if (&expand == &a) {
            finish(next);
          } else {
            finish(next);
          }
          return verdict;
        }
        expand.queue.push_back(std::move(next));
      }
    }
  }
  verdict.kind = EqualityVerdict::Kind::Unknown;
  verdict.explored = explored;
  return verdict;
}

std::vector<Word> enumerate_words(const Pregroupoid& w, std::size_t max_len) {
  const Groupoid& q = *w.q;
  std::vector<Word> out;
  for (std::uint32_t x = 0; x < q.base().size(); ++x) {
    out.push_back(Word{x, {}});
  }
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      Word cur = out[i];
      std::uint32_t at = word_tgt(q, cur);
      for (std::uint32_t u : w.arrows) {
        if (q.src(u) != at) continue;
        Word next = cur;
        next.letters.push_back(u);
        next.base = word_src(q, next);
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
  return out;
}

namespace {

// Union-find over word indices.
struct UnionFind {
  std::vector<std::size_t> up;
  explicit UnionFind(std::size_t n) : up(n) {
    for (std::size_t i = 0; i < n; ++i) up[i] = i;
  }
  std::size_t find(std::size_t i) {
    while (up[i] != i) {
      up[i] = up[up[i]];
      i = up[i];
    }
    return i;
  }
  void unite(std::size_t i, std::size_t j) { up[find(i)] = find(j); }
};

}  // namespace

SimplyConnectedResult is_simply_connected_bounded(const Atlas& atlas, std::size_t budget,
                                                  std::size_t max_len,
                                                  std::span<const LocalMorphism> separators) {
  Pregroupoid w = build_W(atlas);
  if (!w.adapted) {
    fail(Err::NotAdapted, "simple connectivity is defined for globally adapted atlases");
  }
  const Groupoid& q = *w.q;

  // Two letters of headroom so length-bounded words can connect through
  // slightly longer intermediates.
  std::vector<Word> words = enumerate_words(w, max_len + 2);
  if (words.size() > budget) {
    return {Tri::Unknown, std::nullopt,
            "word graph of size " + std::to_string(words.size()) + " exceeds budget"};
  }
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) {
    index.emplace(words[i], i);
  }
  UnionFind uf(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (auto& [move, next] : rewrite_neighbors(w, words[i])) {
      (void)move;
      auto it = index.find(next);
      if (it != index.end()) {
        uf.unite(i, it->second);
      }
    }
  }

  bool all_equal = true;
  for (const Word& word : words) {
    if (word.letters.size() > max_len) continue;
    std::uint32_t p = p_image(q, word);
    if (!q.is_identity(p)) continue;
    Word empty{q.src(p), {}};
    if (uf.find(index.at(word)) == uf.find(index.at(empty))) continue;
    all_equal = false;
    for (const LocalMorphism& lm : separators) {
      std::uint32_t img = extend_morphism(lm, word);
      if (!lm.target->is_identity(img)) {
        return {Tri::No, word,
                "word with identity p-image separated from the empty word by " + lm.name};
      }
    }
  }
  if (all_equal) {
    return {Tri::Yes, std::nullopt,
            "all identity-image words of length <= " + std::to_string(max_len) +
                " collapse to empty words"};
  }
  return {Tri::Unknown, std::nullopt, "unresolved word classes remain within the bound"};
}

}  // namespace holmon
