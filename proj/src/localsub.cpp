#include "holmon/localsub.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace holmon {

LocalSubgroupoid::LocalSubgroupoid(GroupoidPtr q, std::vector<IndexSet> stalks)
    : q_(std::move(q)), stalks_(std::move(stalks)) {
  const Groupoid& g = *q_;
  if (stalks_.size() != g.base().size()) {
    fail(Err::Internal, "one stalk per point required");
  }
  for (std::uint32_t x = 0; x < stalks_.size(); ++x) {
    const IndexSet& m = g.base().min_open(x);
    if (!is_wide_subgroupoid(g, stalks_[x], m)) {
      fail(Err::InvalidChart,
           "stalk at " + g.base().point_name(x) + " is not wide over its minimal open");
    }
    // Coherence: for y near x the stalk at x restricts to the stalk at y.
    for (std::uint32_t y : m) {
      IndexSet restricted;
      for (std::uint32_t a : stalks_[x]) {
        if (is_subset(IndexSet{g.src(a), g.tgt(a)}, g.base().min_open(y))) {
          restricted.push_back(a);
        }
      }
      restricted = make_set(std::move(restricted));
      if (restricted != stalks_[y]) {
        fail(Err::GermMismatch, "stalks at " + g.base().point_name(x) + " and " +
                                    g.base().point_name(y) + " are incoherent");
      }
    }
  }
}

Subgroupoid presheaf_restrict(const Subgroupoid& h, const IndexSet& v) {
  const Groupoid& q = *h.parent;
  if (!is_subset(v, h.objects)) {
    fail(Err::NotSubset, format_set(v, q.base().points()));
  }
  if (!q.base().is_open(v)) {
    fail(Err::NotOpen, format_set(v, q.base().points()));
  }
  IndexSet arrows;
  for (std::uint32_t a : h.arrows) {
    if (set_contains(v, q.src(a)) && set_contains(v, q.tgt(a))) {
      arrows.push_back(a);
    }
  }
  return Subgroupoid{h.parent, make_set(std::move(arrows)), v};
}

IndexSet germ_at(const Groupoid& q, const Chart& chart, std::uint32_t x) {
  if (!set_contains(chart.open, x)) {
    fail(Err::PointNotInChart, q.base().point_name(x));
  }
  const IndexSet& m = q.base().min_open(x);
  IndexSet out;
  for (std::uint32_t a : chart.arrows) {
    if (set_contains(m, q.src(a)) && set_contains(m, q.tgt(a))) {
      out.push_back(a);
    }
  }
  return make_set(std::move(out));
}

namespace {

void check_chart(const Groupoid& q, const Chart& chart, std::size_t index) {
  if (!q.base().is_open(chart.open)) {
    fail(Err::NotOpen, "chart " + std::to_string(index) + " open set");
  }
  if (!is_wide_subgroupoid(q, chart.arrows, chart.open)) {
    fail(Err::InvalidChart,
         "chart " + std::to_string(index) + " is not a wide subgroupoid over its open set");
  }
}

}  // namespace

LocalSubgroupoid validate_atlas(const Atlas& atlas) {
  const Groupoid& q = *atlas.q;
  if (atlas.charts.empty()) {
    fail(Err::NotACover, "atlas has no charts");
  }
  IndexSet covered;
  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    check_chart(q, atlas.charts[i], i);
    covered = set_union(covered, atlas.charts[i].open);
  }
  if (covered != full_set(q.base().size())) {
    IndexSet missing = set_minus(full_set(q.base().size()), covered);
    fail(Err::NotACover, format_set(missing, q.base().points()));
  }

  std::vector<IndexSet> stalks(q.base().size());
  for (std::uint32_t x = 0; x < q.base().size(); ++x) {
    bool first = true;
    std::size_t first_chart = 0;
    for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
      if (!set_contains(atlas.charts[i].open, x)) continue;
      IndexSet germ = germ_at(q, atlas.charts[i], x);
      if (first) {
        stalks[x] = std::move(germ);
        first = false;
        first_chart = i;
      } else if (germ != stalks[x]) {
        fail(Err::GermMismatch, "charts " + std::to_string(first_chart) + " and " +
                                    std::to_string(i) + " disagree at " +
                                    q.base().point_name(x));
      }
    }
  }
  return LocalSubgroupoid(atlas.q, std::move(stalks));
}

bool germ_leq(const IndexSet& k, const IndexSet& k2) { return is_subset(k, k2); }

bool ls_leq(const LocalSubgroupoid& s, const LocalSubgroupoid& t) {
  if (s.parent() != t.parent()) {
    fail(Err::BaseMismatch, "local subgroupoids of different parents");
  }
  for (std::uint32_t x = 0; x < s.stalks().size(); ++x) {
    if (!germ_leq(s.stalk(x), t.stalk(x))) {
      return false;
    }
  }
  return true;
}

LocalSubgroupoid loc(const GroupoidPtr& q, const IndexSet& wide_arrows) {
  if (!is_wide_subgroupoid(*q, wide_arrows, full_set(q->base().size()))) {
    fail(Err::NotWide, "loc expects a subgroupoid wide over the whole base");
  }
  std::vector<IndexSet> stalks(q->base().size());
  for (std::uint32_t x = 0; x < q->base().size(); ++x) {
    const IndexSet& m = q->base().min_open(x);
    IndexSet k;
    for (std::uint32_t a : wide_arrows) {
      if (set_contains(m, q->src(a)) && set_contains(m, q->tgt(a))) {
        k.push_back(a);
      }
    }
    stalks[x] = make_set(std::move(k));
  }
  return LocalSubgroupoid(q, std::move(stalks));
}

Subgroupoid glob(const LocalSubgroupoid& s) {
  IndexSet seeds;
  for (const IndexSet& k : s.stalks()) {
    seeds = set_union(seeds, k);
  }
  return generated_subgroupoid(s.parent(), seeds, full_set(s.parent()->base().size()));
}

std::vector<IndexSet> enumerate_wide_subgroupoids(const Groupoid& q, std::size_t arrow_cap) {
  if (q.arrow_count() > arrow_cap) {
    fail(Err::TooLarge, std::to_string(q.arrow_count()) + " arrows exceeds cap " +
                            std::to_string(arrow_cap));
  }
  IndexSet idents = q.identity_arrows();
  IndexSet rest = set_minus(q.all_arrows(), idents);
  std::vector<IndexSet> out;
  const std::size_t k = rest.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    IndexSet candidate = idents;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) {
        set_insert(candidate, rest[i]);
      }
    }
    if (is_wide_subgroupoid(q, candidate, full_set(q.base().size()))) {
      out.push_back(std::move(candidate));
    }
  }
  sort_opens(out);
  return out;
}

Subgroupoid glob_oracle(const LocalSubgroupoid& s, std::size_t arrow_cap) {
  const GroupoidPtr& q = s.parent();
  std::vector<IndexSet> wides = enumerate_wide_subgroupoids(*q, arrow_cap);
  IndexSet acc = q->all_arrows();
  for (const IndexSet& h : wides) {
    if (ls_leq(s, loc(q, h))) {
      acc = set_intersect(acc, h);
    }
  }
  return Subgroupoid{q, acc, full_set(q->base().size())};
}

Subgroupoid glob_atlas(const Atlas& atlas) {
  IndexSet seeds;
  for (const Chart& c : atlas.charts) {
    seeds = set_union(seeds, c.arrows);
  }
  return generated_subgroupoid(atlas.q, seeds, full_set(atlas.q->base().size()));
}

bool refines(const Atlas& finer, const Atlas& coarser) {
  if (finer.q != coarser.q) {
    fail(Err::BaseMismatch, "atlases over different groupoids");
  }
  const Groupoid& q = *finer.q;
  for (const Chart& v : finer.charts) {
    bool found = false;
    for (const Chart& u : coarser.charts) {
      if (!is_subset(v.open, u.open)) continue;
      IndexSet restricted;
      for (std::uint32_t a : u.arrows) {
        if (set_contains(v.open, q.src(a)) && set_contains(v.open, q.tgt(a))) {
          restricted.push_back(a);
        }
      }
      if (make_set(std::move(restricted)) == v.arrows) {
        found = true;
        break;
      }
    }
    if (!found) {
      return false;
    }
  }
  return true;
}

bool is_globally_adapted(const Atlas& atlas) {
  LocalSubgroupoid s = validate_atlas(atlas);
  return glob_atlas(atlas).arrows == glob(s).arrows;
}

Atlas canonical_atlas(const LocalSubgroupoid& s) {
  const GroupoidPtr& q = s.parent();
  Atlas out;
  out.q = q;
  for (std::uint32_t x = 0; x < q->base().size(); ++x) {
    Chart c{q->base().min_open(x), s.stalk(x)};
    bool dup = false;
    for (const Chart& seen : out.charts) {
      if (seen.open == c.open && seen.arrows == c.arrows) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      out.charts.push_back(std::move(c));
    }
  }
  return out;
}

bool check_locglob(const LocalSubgroupoid& s) {
  Subgroupoid g = glob(s);
  return ls_leq(s, loc(s.parent(), g.arrows));
}

std::vector<LocalSubgroupoid> enumerate_local_subgroupoids(const GroupoidPtr& q, std::size_t cap) {
  const Groupoid& g = *q;
  const std::size_t n = g.base().size();
  // Candidate stalks per point: wide subgroupoids of Q restricted to the
  // minimal open of the point.
  std::vector<std::vector<IndexSet>> candidates(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    const IndexSet& m = g.base().min_open(x);
    IndexSet local_arrows;
    for (std::uint32_t a = 0; a < g.arrow_count(); ++a) {
      if (set_contains(m, g.src(a)) && set_contains(m, g.tgt(a))) {
        local_arrows.push_back(a);
      }
    }
    IndexSet idents;
    for (std::uint32_t y : m) {
      idents.push_back(g.ident(y));
    }
    idents = make_set(std::move(idents));
    IndexSet rest = set_minus(local_arrows, idents);
    if (rest.size() > 20) {
      fail(Err::TooLarge, "stalk enumeration at " + g.base().point_name(x));
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << rest.size()); ++mask) {
      IndexSet cand = idents;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (mask & (std::size_t{1} << i)) {
          set_insert(cand, rest[i]);
        }
      }
      if (is_wide_subgroupoid(g, cand, m)) {
        candidates[x].push_back(std::move(cand));
      }
    }
    sort_opens(candidates[x]);
  }

  std::vector<LocalSubgroupoid> out;
  std::vector<IndexSet> chosen(n);
  auto coherent_so_far = [&](std::uint32_t upto) {
    for (std::uint32_t x = 0; x <= upto; ++x) {
      for (std::uint32_t y : g.base().min_open(x)) {
        if (y > upto) continue;
        IndexSet restricted;
        for (std::uint32_t a : chosen[x]) {
          if (is_subset(IndexSet{g.src(a), g.tgt(a)}, g.base().min_open(y))) {
            restricted.push_back(a);
          }
        }
        if (make_set(std::move(restricted)) != chosen[y]) {
          return false;
        }
        if (set_contains(g.base().min_open(y), x) && y != x) {
          IndexSet back;
          for (std::uint32_t a : chosen[y]) {
            if (is_subset(IndexSet{g.src(a), g.tgt(a)}, g.base().min_open(x))) {
              back.push_back(a);
            }
          }
          if (make_set(std::move(back)) != chosen[x]) {
            return false;
          }
        }
      }
    }
    return true;
  };
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t x) {
    if (out.size() > cap) {
      fail(Err::TooLarge, "local subgroupoid enumeration");
    }
    if (x == n) {
      out.emplace_back(q, chosen);
      return;
    }
    for (const IndexSet& cand : candidates[x]) {
      chosen[x] = cand;
      if (coherent_so_far(x)) {
        rec(x + 1);
      }
    }
  };
  rec(0);
  return out;
}

}  // namespace holmon
