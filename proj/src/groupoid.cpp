#include "holmon/groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace holmon {

std::uint32_t Groupoid::arrow_index(const std::string& id) const {
  auto it = arrow_index_.find(id);
  if (it == arrow_index_.end()) {
    fail(Err::UnknownArrow, "'" + id + "'");
  }
  return it->second;
}

std::uint32_t Groupoid::comp_checked(std::uint32_t u, std::uint32_t v) const {
  std::int32_t w = comp(u, v);
  if (w < 0) {
    fail(Err::NotComposable, describe(u) + " with " + describe(v));
  }
  return static_cast<std::uint32_t>(w);
}

IndexSet Groupoid::identity_arrows() const {
  IndexSet out;
  for (std::uint32_t x = 0; x < base_.size(); ++x) {
    out.push_back(ident_[x]);
  }
  return make_set(std::move(out));
}

GroupoidPtr validate_groupoid(GroupoidData data) {
  const std::size_t m = data.arrows.size();
  const std::size_t n = data.base.size();
  for (const Arrow& a : data.arrows) {
    if (a.src >= n || a.tgt >= n) {
      fail(Err::UnknownPoint, "arrow '" + a.id + "' has an endpoint outside the base");
    }
  }

  // Canonical arrow order: (src, tgt, id).
  std::vector<std::uint32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    const Arrow& x = data.arrows[a];
    const Arrow& y = data.arrows[b];
    if (x.src != y.src) return x.src < y.src;
    if (x.tgt != y.tgt) return x.tgt < y.tgt;
    return x.id < y.id;
  });
  std::vector<std::uint32_t> where(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    where[perm[i]] = i;
  }

  auto g = std::make_shared<Groupoid>();
  g->base_ = std::move(data.base);
  g->arrows_.reserve(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    g->arrows_.push_back(data.arrows[perm[i]]);
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    if (!g->arrow_index_.emplace(g->arrows_[i].id, i).second) {
      fail(Err::Parse, "duplicate arrow id '" + g->arrows_[i].id + "'");
    }
  }

  g->comp_.assign(m * m, -1);
  for (const auto& t : data.comp) {
    if (t[0] >= m || t[1] >= m || t[2] >= m) {
      fail(Err::UnknownArrow, "composition entry out of range");
    }
    std::uint32_t u = where[t[0]], v = where[t[1]], w = where[t[2]];
    if (g->arrows_[u].tgt != g->arrows_[v].src) {
      fail(Err::CompositionDomain, "comp(" + g->arrows_[u].id + "," + g->arrows_[v].id +
                                       ") declared but endpoints do not match");
    }
    g->comp_[static_cast<std::size_t>(u) * m + v] = static_cast<std::int32_t>(w);
  }
  for (std::uint32_t u = 0; u < m; ++u) {
    for (std::uint32_t v = 0; v < m; ++v) {
      bool matches = g->arrows_[u].tgt == g->arrows_[v].src;
      bool defined = g->comp_[static_cast<std::size_t>(u) * m + v] >= 0;
      if (matches && !defined) {
        fail(Err::CompositionDomain,
             "comp(" + g->arrows_[u].id + "," + g->arrows_[v].id + ") is missing");
      }
      if (defined) {
        std::uint32_t w = static_cast<std::uint32_t>(g->comp_[static_cast<std::size_t>(u) * m + v]);
        if (g->arrows_[w].src != g->arrows_[u].src || g->arrows_[w].tgt != g->arrows_[v].tgt) {
          fail(Err::CompositionDomain, "comp(" + g->arrows_[u].id + "," + g->arrows_[v].id +
                                           ") = " + g->arrows_[w].id + " has wrong endpoints");
        }
      }
    }
  }

  g->ident_.assign(n, 0);
  std::vector<bool> seen(n, false);
  if (data.ident.size() != n) {
    fail(Err::IdentityLaw, "identity table must assign one arrow per object");
  }
  for (const auto& [x, u] : data.ident) {
    if (x >= n || u >= m) {
      fail(Err::IdentityLaw, "identity entry out of range");
    }
    if (seen[x]) {
      fail(Err::IdentityLaw, "object " + g->base_.point_name(x) + " has two identities");
    }
    seen[x] = true;
    g->ident_[x] = where[u];
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    std::uint32_t e = g->ident_[x];
    if (g->arrows_[e].src != x || g->arrows_[e].tgt != x) {
      fail(Err::IdentityLaw, "identity of " + g->base_.point_name(x) + " is not a loop there");
    }
  }

  if (data.inv.size() != m) {
    fail(Err::InverseLaw, "inverse table must assign one arrow per arrow");
  }
  g->inv_.assign(m, 0);
  std::vector<bool> inv_seen(m, false);
  for (const auto& [u, v] : data.inv) {
    if (u >= m || v >= m) {
      fail(Err::InverseLaw, "inverse entry out of range");
    }
    if (inv_seen[where[u]]) {
      fail(Err::InverseLaw, "arrow " + g->arrows_[where[u]].id + " has two inverses");
    }
    inv_seen[where[u]] = true;
    g->inv_[where[u]] = where[v];
  }

  // Unit, inverse and associativity laws.
  for (std::uint32_t u = 0; u < m; ++u) {
    std::uint32_t e_src = g->ident_[g->arrows_[u].src];
    std::uint32_t e_tgt = g->ident_[g->arrows_[u].tgt];
    if (g->comp(e_src, u) != static_cast<std::int32_t>(u) ||
        g->comp(u, e_tgt) != static_cast<std::int32_t>(u)) {
      fail(Err::IdentityLaw, "unit law fails at " + g->arrows_[u].id);
    }
    std::uint32_t ui = g->inv_[u];
    if (g->arrows_[ui].src != g->arrows_[u].tgt || g->arrows_[ui].tgt != g->arrows_[u].src) {
      fail(Err::InverseLaw, "inverse of " + g->arrows_[u].id + " has wrong endpoints");
    }
    if (g->inv_[ui] != u) {
      fail(Err::InverseLaw, "inverse is not an involution at " + g->arrows_[u].id);
    }
    if (g->comp(u, ui) != static_cast<std::int32_t>(e_src) ||
        g->comp(ui, u) != static_cast<std::int32_t>(e_tgt)) {
      fail(Err::InverseLaw, "comp with inverse is not an identity at " + g->arrows_[u].id);
    }
  }
  for (std::uint32_t u = 0; u < m; ++u) {
    for (std::uint32_t v = 0; v < m; ++v) {
      if (g->comp(u, v) < 0) continue;
      std::uint32_t uv = static_cast<std::uint32_t>(g->comp(u, v));
      for (std::uint32_t w = 0; w < m; ++w) {
        if (g->comp(v, w) < 0) continue;
        std::uint32_t vw = static_cast<std::uint32_t>(g->comp(v, w));
        if (g->comp(uv, w) != g->comp(u, vw)) {
          fail(Err::Associativity, "(" + g->arrows_[u].id + "," + g->arrows_[v].id + "," +
                                       g->arrows_[w].id + ")");
        }
      }
    }
  }

  g->stars_.assign(n, IndexSet{});
  for (std::uint32_t u = 0; u < m; ++u) {
    g->stars_[g->arrows_[u].src].push_back(u);
  }
  return g;
}

namespace {

std::string pair_id(const FinSpace& s, std::uint32_t x, std::uint32_t y) {
  return "(" + s.point_name(x) + "," + s.point_name(y) + ")";
}

std::string cyc_id(const FinSpace& s, std::uint32_t x, unsigned n, std::uint32_t y) {
  return "(" + s.point_name(x) + "," + std::to_string(n) + "," + s.point_name(y) + ")";
}

}  // namespace

TopGroupoid pair_groupoid(const FinSpace& s) {
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());
  GroupoidData d;
  d.base = s;
  auto at = [n](std::uint32_t x, std::uint32_t y) { return x * n + y; };
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      d.arrows.push_back({pair_id(s, x, y), x, y});
      d.inv.emplace_back(at(x, y), at(y, x));
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    d.ident.emplace_back(x, at(x, x));
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t z = 0; z < n; ++z) {
        d.comp.push_back({at(x, y), at(y, z), at(x, z)});
      }
    }
  }
  GroupoidPtr g = validate_groupoid(std::move(d));

  std::vector<std::string> ids;
  std::vector<IndexSet> mins;
  for (std::uint32_t u = 0; u < g->arrow_count(); ++u) {
    ids.push_back(g->arrow(u).id);
  }
  for (std::uint32_t u = 0; u < g->arrow_count(); ++u) {
    IndexSet m;
    for (std::uint32_t xs : s.min_open(g->src(u))) {
      for (std::uint32_t yt : s.min_open(g->tgt(u))) {
        m.push_back(g->arrow_index(pair_id(s, xs, yt)));
      }
    }
    mins.push_back(make_set(std::move(m)));
  }
  return {g, FinSpace::from_min_opens(std::move(ids), std::move(mins))};
}

TopGroupoid cyc_groupoid(const FinSpace& s, unsigned k) {
  if (k < 1) {
    fail(Err::Parse, "cyclic modulus must be at least 1");
  }
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());
  GroupoidData d;
  d.base = s;
  auto at = [n, k](std::uint32_t x, unsigned c, std::uint32_t y) { return (x * k + c) * n + y; };
  for (std::uint32_t x = 0; x < n; ++x) {
    for (unsigned c = 0; c < k; ++c) {
      for (std::uint32_t y = 0; y < n; ++y) {
        d.arrows.push_back({cyc_id(s, x, c, y), x, y});
        d.inv.emplace_back(at(x, c, y), at(y, (k - c) % k, x));
      }
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    d.ident.emplace_back(x, at(x, 0, x));
    for (unsigned c1 = 0; c1 < k; ++c1) {
      for (std::uint32_t y = 0; y < n; ++y) {
        for (unsigned c2 = 0; c2 < k; ++c2) {
          for (std::uint32_t z = 0; z < n; ++z) {
            d.comp.push_back({at(x, c1, y), at(y, c2, z), at(x, (c1 + c2) % k, z)});
          }
        }
      }
    }
  }
  GroupoidPtr g = validate_groupoid(std::move(d));

  std::vector<std::string> ids;
  for (std::uint32_t u = 0; u < g->arrow_count(); ++u) {
    ids.push_back(g->arrow(u).id);
  }
  std::vector<IndexSet> mins;
  for (std::uint32_t u = 0; u < g->arrow_count(); ++u) {
    // Recover the coefficient from the id: the topology on Z_k is discrete.
    const std::string& id = g->arrow(u).id;
    auto c1 = id.find(',');
    auto c2 = id.find(',', c1 + 1);
    unsigned c = static_cast<unsigned>(std::stoul(id.substr(c1 + 1, c2 - c1 - 1)));
    IndexSet m;
    for (std::uint32_t xs : s.min_open(g->src(u))) {
      for (std::uint32_t yt : s.min_open(g->tgt(u))) {
        m.push_back(g->arrow_index(cyc_id(s, xs, c, yt)));
      }
    }
    mins.push_back(make_set(std::move(m)));
  }
  return {g, FinSpace::from_min_opens(std::move(ids), std::move(mins))};
}

GroupoidPtr full_restrict(const GroupoidPtr& q, const IndexSet& u) {
  if (!q->base().is_open(u)) {
    fail(Err::NotOpen, format_set(u, q->base().points()));
  }
  std::map<std::uint32_t, std::uint32_t> obj_pos;
  for (std::uint32_t i = 0; i < u.size(); ++i) {
    obj_pos[u[i]] = i;
  }
  GroupoidData d;
  d.base = q->base().subspace(u);
  std::vector<std::int32_t> pos(q->arrow_count(), -1);
  for (std::uint32_t a = 0; a < q->arrow_count(); ++a) {
    if (set_contains(u, q->src(a)) && set_contains(u, q->tgt(a))) {
      pos[a] = static_cast<std::int32_t>(d.arrows.size());
      d.arrows.push_back({q->arrow(a).id, obj_pos[q->src(a)], obj_pos[q->tgt(a)]});
    }
  }
  for (std::uint32_t a = 0; a < q->arrow_count(); ++a) {
    if (pos[a] < 0) continue;
    d.inv.emplace_back(pos[a], pos[q->inv(a)]);
    for (std::uint32_t b = 0; b < q->arrow_count(); ++b) {
      if (pos[b] < 0 || !q->composable(a, b)) continue;
      d.comp.push_back({static_cast<std::uint32_t>(pos[a]), static_cast<std::uint32_t>(pos[b]),
                        static_cast<std::uint32_t>(pos[q->comp_checked(a, b)])});
    }
  }
  for (std::uint32_t i = 0; i < u.size(); ++i) {
    d.ident.emplace_back(i, pos[q->ident(u[i])]);
  }
  return validate_groupoid(std::move(d));
}

bool is_wide_subgroupoid(const Groupoid& q, const IndexSet& arrows, const IndexSet& u) {
  for (std::uint32_t x : u) {
    if (!set_contains(arrows, q.ident(x))) {
      return false;
    }
  }
  for (std::uint32_t a : arrows) {
    if (!set_contains(u, q.src(a)) || !set_contains(u, q.tgt(a))) {
      return false;
    }
    if (!set_contains(arrows, q.inv(a))) {
      return false;
    }
    for (std::uint32_t b : arrows) {
      if (q.composable(a, b) && !set_contains(arrows, q.comp_checked(a, b))) {
        return false;
      }
    }
  }
  return true;
}

Subgroupoid generated_subgroupoid(const GroupoidPtr& q, const IndexSet& seeds, const IndexSet& u) {
  for (std::uint32_t a : seeds) {
    if (!set_contains(u, q->src(a)) || !set_contains(u, q->tgt(a))) {
      fail(Err::EndpointOutsideU, q->describe(a));
    }
  }
  IndexSet arrows = seeds;
  for (std::uint32_t x : u) {
    set_insert(arrows, q->ident(x));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    IndexSet snapshot = arrows;
    for (std::uint32_t a : snapshot) {
      if (set_insert(arrows, q->inv(a))) {
        grew = true;
      }
      for (std::uint32_t b : snapshot) {
        if (q->composable(a, b) && set_insert(arrows, q->comp_checked(a, b))) {
          grew = true;
        }
      }
    }
  }
  return Subgroupoid{q, std::move(arrows), u};
}

Subgroupoid intersect_subgroupoids(const Subgroupoid& a, const Subgroupoid& b) {
  if (a.parent != b.parent) {
    fail(Err::BaseMismatch, "subgroupoids of different parents");
  }
  return Subgroupoid{a.parent, set_intersect(a.arrows, b.arrows),
                     set_intersect(a.objects, b.objects)};
}

GroupoidPtr materialize(const Subgroupoid& h) {
  const Groupoid& q = *h.parent;
  if (h.objects != full_set(q.base().size())) {
    fail(Err::NotWide, "materialize expects a subgroupoid wide over the whole base");
  }
  GroupoidData d;
  d.base = q.base();
  std::map<std::uint32_t, std::uint32_t> pos;
  for (std::uint32_t i = 0; i < h.arrows.size(); ++i) {
    pos[h.arrows[i]] = i;
    const Arrow& a = q.arrow(h.arrows[i]);
    d.arrows.push_back(a);
  }
  for (std::uint32_t a : h.arrows) {
    d.inv.emplace_back(pos[a], pos.at(q.inv(a)));
    for (std::uint32_t b : h.arrows) {
      if (q.composable(a, b)) {
        d.comp.push_back({pos[a], pos[b], pos.at(q.comp_checked(a, b))});
      }
    }
  }
  for (std::uint32_t x = 0; x < q.base().size(); ++x) {
    d.ident.emplace_back(x, pos.at(q.ident(x)));
  }
  return validate_groupoid(std::move(d));
}

bool validate_morphism(const GroupoidMorphism& f) {
  const Groupoid& a = *f.dom;
  const Groupoid& b = *f.cod;
  if (f.obj_map.size() != a.base().size() || f.arrow_map.size() != a.arrow_count()) {
    fail(Err::Parse, "morphism tables have wrong size");
  }
  for (std::uint32_t u = 0; u < a.arrow_count(); ++u) {
    std::uint32_t fu = f.arrow_map[u];
    if (b.src(fu) != f.obj_map[a.src(u)] || b.tgt(fu) != f.obj_map[a.tgt(u)]) {
      return false;
    }
    if (f.arrow_map[a.inv(u)] != b.inv(fu)) {
      return false;
    }
    for (std::uint32_t v = 0; v < a.arrow_count(); ++v) {
      if (!a.composable(u, v)) continue;
      if (!b.composable(fu, f.arrow_map[v])) {
        return false;
      }
      if (f.arrow_map[a.comp_checked(u, v)] != b.comp_checked(fu, f.arrow_map[v])) {
        return false;
      }
    }
  }
  for (std::uint32_t x = 0; x < a.base().size(); ++x) {
    if (f.arrow_map[a.ident(x)] != b.ident(f.obj_map[x])) {
      return false;
    }
  }
  return true;
}

Subgroupoid kernel(const GroupoidMorphism& f) {
  IndexSet arrows;
  for (std::uint32_t u = 0; u < f.dom->arrow_count(); ++u) {
    if (f.cod->is_identity(f.arrow_map[u])) {
      arrows.push_back(u);
    }
  }
  return Subgroupoid{f.dom, std::move(arrows), full_set(f.dom->base().size())};
}

bool is_normal(const Groupoid& g, const Subgroupoid& n) {
  for (std::uint32_t a : n.arrows) {
    if (g.src(a) != g.tgt(a)) {
      return false;
    }
    for (std::uint32_t u : g.star(g.src(a))) {
      std::uint32_t conj = g.comp_checked(g.comp_checked(g.inv(u), a), u);
      if (!set_contains(n.arrows, conj)) {
        return false;
      }
    }
  }
  return true;
}

Quotient quotient_by(const GroupoidPtr& g, const Subgroupoid& n) {
  for (std::uint32_t a : n.arrows) {
    if (g->src(a) != g->tgt(a)) {
      fail(Err::NotLoopOnly, g->describe(a));
    }
  }
  if (n.objects != full_set(g->base().size()) || !is_wide_subgroupoid(*g, n.arrows, n.objects)) {
    fail(Err::NotWide, "quotient requires a wide normal subgroupoid");
  }
  if (!is_normal(*g, n)) {
    for (std::uint32_t a : n.arrows) {
      for (std::uint32_t u : g->star(g->src(a))) {
        std::uint32_t conj = g->comp_checked(g->comp_checked(g->inv(u), a), u);
        if (!set_contains(n.arrows, conj)) {
          fail(Err::NotNormal,
               g->describe(u) + "^-1 " + g->describe(a) + " " + g->describe(u));
        }
      }
    }
  }

  // Loops of n at each object.
  std::vector<IndexSet> loops(g->base().size());
  for (std::uint32_t a : n.arrows) {
    loops[g->src(a)].push_back(a);
  }

  const std::uint32_t m = static_cast<std::uint32_t>(g->arrow_count());
  std::vector<std::uint32_t> rep(m, m);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t u = 0; u < m; ++u) {
    if (rep[u] != m) continue;
    IndexSet orbit;
    for (std::uint32_t a : loops[g->src(u)]) {
      std::uint32_t au = g->comp_checked(a, u);
      for (std::uint32_t b : loops[g->tgt(u)]) {
        set_insert(orbit, g->comp_checked(au, b));
      }
    }
    std::uint32_t r = orbit.front();
    for (std::uint32_t v : orbit) {
      rep[v] = r;
    }
    reps.push_back(r);
  }

  GroupoidData d;
  d.base = g->base();
  std::map<std::uint32_t, std::uint32_t> pos;
  for (std::uint32_t i = 0; i < reps.size(); ++i) {
    pos[reps[i]] = i;
    d.arrows.push_back({"[" + g->describe(reps[i]) + "]", g->src(reps[i]), g->tgt(reps[i])});
  }
  for (std::uint32_t r : reps) {
    d.inv.emplace_back(pos[r], pos.at(rep[g->inv(r)]));
    for (std::uint32_t s : reps) {
      if (g->composable(r, s)) {
        d.comp.push_back({pos[r], pos[s], pos.at(rep[g->comp_checked(r, s)])});
      }
    }
  }
  for (std::uint32_t x = 0; x < g->base().size(); ++x) {
    d.ident.emplace_back(x, pos.at(rep[g->ident(x)]));
  }
  GroupoidPtr qg = validate_groupoid(std::move(d));

  Quotient out;
  out.groupoid = qg;
  out.class_of.resize(m);
  for (std::uint32_t u = 0; u < m; ++u) {
    out.class_of[u] = qg->arrow_index("[" + g->describe(rep[u]) + "]");
  }
  out.projection = GroupoidMorphism{g, qg, full_set(g->base().size()), out.class_of};
  if (!validate_morphism(out.projection)) {
    fail(Err::Internal, "quotient projection is not a morphism");
  }
  return out;
}

TopGroupoidReport check_top_groupoid(const TopGroupoid& tg) {
  const Groupoid& g = *tg.g;
  const FinSpace& arr = tg.arrow_space;
  const FinSpace& base = g.base();
  TopGroupoidReport rep;

  for (std::uint32_t u = 0; u < g.arrow_count() && rep.src_continuous.pass; ++u) {
    for (std::uint32_t v : arr.min_open(u)) {
      if (!set_contains(base.min_open(g.src(u)), g.src(v))) {
        rep.src_continuous = {false, g.describe(u) + " ~ " + g.describe(v)};
        break;
      }
    }
  }
  for (std::uint32_t u = 0; u < g.arrow_count() && rep.tgt_continuous.pass; ++u) {
    for (std::uint32_t v : arr.min_open(u)) {
      if (!set_contains(base.min_open(g.tgt(u)), g.tgt(v))) {
        rep.tgt_continuous = {false, g.describe(u) + " ~ " + g.describe(v)};
        break;
      }
    }
  }
  for (std::uint32_t x = 0; x < base.size() && rep.object_embedding.pass; ++x) {
    for (std::uint32_t y = 0; y < base.size(); ++y) {
      bool near = set_contains(base.min_open(x), y);
      bool arrow_near = set_contains(arr.min_open(g.ident(x)), g.ident(y));
      if (near != arrow_near) {
        rep.object_embedding = {false, base.point_name(x) + " vs " + base.point_name(y)};
        break;
      }
    }
  }
  // delta(u,v) = u^-1 v on pairs with a common source; continuity is
  // checked against the product neighborhoods restricted to the pullback.
  for (std::uint32_t u = 0; u < g.arrow_count() && rep.delta_continuous.pass; ++u) {
    for (std::uint32_t v = 0; v < g.arrow_count(); ++v) {
      if (g.src(u) != g.src(v)) continue;
      std::uint32_t d = g.comp_checked(g.inv(u), v);
      bool ok = true;
      for (std::uint32_t u2 : arr.min_open(u)) {
        for (std::uint32_t v2 : arr.min_open(v)) {
          if (g.src(u2) != g.src(v2)) continue;
          std::uint32_t d2 = g.comp_checked(g.inv(u2), v2);
          if (!set_contains(arr.min_open(d), d2)) {
            rep.delta_continuous = {false, "delta(" + g.describe(u2) + "," + g.describe(v2) + ")"};
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) break;
    }
  }
  return rep;
}

TopGroupoid pair_disc2() { return pair_groupoid(disc2_space()); }
TopGroupoid pair_sierp() { return pair_groupoid(sierp_space()); }
TopGroupoid pair_circ4() { return pair_groupoid(circ4_space()); }
TopGroupoid cyc_disc2_2() { return cyc_groupoid(disc2_space(), 2); }
TopGroupoid cyc_circ4(unsigned k) { return cyc_groupoid(circ4_space(), k); }

}  // namespace holmon
