#include "holmon/holonomy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace holmon {

const char* topology_mode_name(TopologyMode mode) {
  return mode == TopologyMode::Subspace ? "subspace" : "atlas";
}

FinSpace make_w_space(const TopGroupoid& q, const std::vector<Chart>& charts, const IndexSet& w,
                      TopologyMode mode) {
  const Groupoid& g = *q.g;
  std::vector<std::string> ids;
  ids.reserve(w.size());
  for (std::uint32_t a : w) {
    ids.push_back(g.arrow(a).id);
  }
  std::vector<IndexSet> mins(w.size());
  for (std::uint32_t i = 0; i < w.size(); ++i) {
    IndexSet nbhd = set_intersect(q.arrow_space.min_open(w[i]), w);
    if (mode == TopologyMode::AtlasGenerated) {
      for (const Chart& c : charts) {
        if (set_contains(c.arrows, w[i])) {
          nbhd = set_intersect(nbhd, c.arrows);
        }
      }
    }
    IndexSet rel;
    for (std::uint32_t a : nbhd) {
      rel.push_back(static_cast<std::uint32_t>(
          std::lower_bound(w.begin(), w.end(), a) - w.begin()));
    }
    mins[i] = make_set(std::move(rel));
  }
  return FinSpace::from_min_opens(std::move(ids), std::move(mins));
}

LocallyLieReport check_locally_lie(const GroupoidPtr& g, const IndexSet& w,
                                   const FinSpace& w_space) {
  LocallyLieReport rep;
  const Groupoid& gg = *g;
  WContext ctx{g, w, w_space};

  // G1: O_G inside W, with the base embedded in W by the identities.
  for (std::uint32_t x = 0; x < gg.base().size() && rep.g1.pass; ++x) {
    if (!set_contains(w, gg.ident(x))) {
      rep.g1 = {false, "identity of " + gg.base().point_name(x) + " missing from W"};
    }
  }
  if (rep.g1.pass) {
    for (std::uint32_t x = 0; x < gg.base().size() && rep.g1.pass; ++x) {
      for (std::uint32_t y = 0; y < gg.base().size(); ++y) {
        bool near = set_contains(gg.base().min_open(x), y);
        bool arrow_near = set_contains(ctx.min_open_arrows(gg.ident(x)), gg.ident(y));
        if (near != arrow_near) {
          rep.g1 = {false, "object inclusion is not an embedding at " + gg.base().point_name(x)};
          break;
        }
      }
    }
  }

  // G2: W = W^-1.
  for (std::uint32_t a : w) {
    if (!set_contains(w, gg.inv(a))) {
      rep.g2 = {false, gg.describe(a)};
      break;
    }
  }

  // G3: W(delta) open in W x_alpha W and delta continuous on it.
  auto in_w_delta = [&](std::uint32_t u, std::uint32_t v) {
    return gg.src(u) == gg.src(v) && set_contains(w, gg.comp_checked(gg.inv(u), v));
  };
  for (std::uint32_t u : w) {
    for (std::uint32_t v : w) {
      if (gg.src(u) != gg.src(v) || !in_w_delta(u, v)) continue;
      std::uint32_t d = gg.comp_checked(gg.inv(u), v);
      IndexSet near_u = ctx.min_open_arrows(u);
      IndexSet near_v = ctx.min_open_arrows(v);
      for (std::uint32_t u2 : near_u) {
        for (std::uint32_t v2 : near_v) {
          if (gg.src(u2) != gg.src(v2)) continue;
          if (!in_w_delta(u2, v2)) {
            if (rep.g3.pass) {
              rep.g3 = {false, "W(delta) not open at (" + gg.describe(u) + "," +
                                   gg.describe(v) + ")"};
            }
            continue;
          }
          std::uint32_t d2 = gg.comp_checked(gg.inv(u2), v2);
          if (!set_contains(ctx.min_open_arrows(d), d2) && rep.g3.pass) {
            rep.g3 = {false,
                      "delta discontinuous at (" + gg.describe(u) + "," + gg.describe(v) + ")"};
          }
        }
      }
    }
  }

  // G4: alpha, beta continuous on W and (alpha, beta, W) locally sectionable.
  for (std::uint32_t a : w) {
    for (std::uint32_t b : ctx.min_open_arrows(a)) {
      if (!set_contains(gg.base().min_open(gg.src(a)), gg.src(b)) ||
          !set_contains(gg.base().min_open(gg.tgt(a)), gg.tgt(b))) {
        rep.g4 = {false, "source or target discontinuous at " + gg.describe(a)};
        break;
      }
    }
    if (!rep.g4.pass) break;
  }
  if (rep.g4.pass) {
    SectionabilityReport sec = is_locally_sectionable(ctx);
    if (!sec.ok) {
      rep.g4 = {false, "no section through " + gg.describe(sec.uncovered.front())};
    }
  }

  // G5: W generates G.
  Subgroupoid gen = generated_subgroupoid(g, w, full_set(gg.base().size()));
  if (gen.arrows != gg.all_arrows()) {
    IndexSet missing = set_minus(gg.all_arrows(), gen.arrows);
    rep.g5 = {false, "unreached arrow " + gg.describe(missing.front())};
  }
  return rep;
}

RegularReport check_regular(const TopGroupoid& q, const Atlas& atlas) {
  RegularReport rep;
  for (const Chart& c : atlas.charts) {
    FinSpace chart_space = make_w_space(q, {}, c.arrows, TopologyMode::Subspace);
    WContext ctx{atlas.q, c.arrows, std::move(chart_space)};
    rep.per_chart.push_back(is_locally_sectionable(ctx));
    rep.regular = rep.regular && rep.per_chart.back().ok;
  }
  return rep;
}

bool StrictReport::all() const {
  if (!adapted || !reg.regular || !w_delta_open.pass) {
    return false;
  }
  for (const CheckItem& c : chart_open) {
    if (!c.pass) return false;
  }
  return true;
}

std::string StrictReport::summary() const {
  std::string out = std::string("mode=") + topology_mode_name(mode);
  out += adapted ? " adapted=yes" : " adapted=no";
  out += reg.regular ? " regular=yes" : " regular=no";
  for (std::size_t i = 0; i < chart_open.size(); ++i) {
    out += " H" + std::to_string(i) + "-open=" + (chart_open[i].pass ? "yes" : "no");
  }
  out += w_delta_open.pass ? " W(delta)-open=yes" : " W(delta)-open=no";
  return out;
}

StrictReport check_strictly_regular(const TopGroupoid& q, const Atlas& atlas,
                                    TopologyMode mode) {
  StrictReport rep;
  rep.mode = mode;
  rep.adapted = is_globally_adapted(atlas);
  rep.reg = check_regular(q, atlas);

  IndexSet w;
  for (const Chart& c : atlas.charts) {
    w = set_union(w, c.arrows);
  }
  FinSpace w_space = make_w_space(q, atlas.charts, w, mode);
  WContext ctx{atlas.q, w, w_space};
  const Groupoid& g = *atlas.q;

  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    const Chart& c = atlas.charts[i];
    CheckItem item;
    for (std::uint32_t a : c.arrows) {
      if (!is_subset(ctx.min_open_arrows(a), c.arrows)) {
        item = {false, g.describe(a)};
        break;
      }
    }
    rep.chart_open.push_back(item);
  }

  for (std::uint32_t u : w) {
    for (std::uint32_t v : w) {
      if (g.src(u) != g.src(v)) continue;
      if (!set_contains(w, g.comp_checked(g.inv(u), v))) continue;
      for (std::uint32_t u2 : ctx.min_open_arrows(u)) {
        for (std::uint32_t v2 : ctx.min_open_arrows(v)) {
          if (g.src(u2) != g.src(v2)) continue;
          if (!set_contains(w, g.comp_checked(g.inv(u2), v2))) {
            rep.w_delta_open = {false, "(" + g.describe(u) + "," + g.describe(v) + ")"};
          }
        }
      }
    }
  }
  return rep;
}

LocallyLieGroupoid assemble_locally_lie(GroupoidPtr g, IndexSet w, FinSpace w_space,
                                        TopologyMode mode, std::vector<Chart> charts) {
  LocallyLieGroupoid l;
  l.g = std::move(g);
  l.w = std::move(w);
  l.w_space = std::move(w_space);
  l.mode = mode;
  l.charts = std::move(charts);
  l.report = check_locally_lie(l.g, l.w, l.w_space);
  return l;
}

LocallyLieGroupoid build_from_atlas(const TopGroupoid& q, const Atlas& atlas,
                                    TopologyMode mode) {
  StrictReport strict = check_strictly_regular(q, atlas, mode);
  if (!strict.adapted) {
    fail(Err::NotAdapted, "strictly regular atlases are globally adapted");
  }
  if (!strict.reg.regular) {
    for (std::size_t i = 0; i < strict.reg.per_chart.size(); ++i) {
      if (!strict.reg.per_chart[i].ok) {
        fail(Err::NoSectionThroughW,
             "chart " + std::to_string(i) + " misses " +
                 atlas.q->describe(strict.reg.per_chart[i].uncovered.front()));
      }
    }
  }
  for (std::size_t i = 0; i < strict.chart_open.size(); ++i) {
    if (!strict.chart_open[i].pass) {
      fail(Err::NotOpen, "chart " + std::to_string(i) + " is not open in W at " +
                             strict.chart_open[i].witness);
    }
  }
  if (!strict.w_delta_open.pass) {
    fail(Err::NotOpen, "W(delta) is not open at " + strict.w_delta_open.witness);
  }

  LocalSubgroupoid s = validate_atlas(atlas);
  GroupoidPtr g = materialize(glob(s));

  // Transport the charts and W into the materialized groupoid.
  std::vector<Chart> charts;
  IndexSet w_q;
  for (const Chart& c : atlas.charts) {
    Chart cg;
    cg.open = c.open;
    for (std::uint32_t a : c.arrows) {
      cg.arrows.push_back(g->arrow_index(atlas.q->describe(a)));
    }
    cg.arrows = make_set(std::move(cg.arrows));
    charts.push_back(std::move(cg));
    w_q = set_union(w_q, c.arrows);
  }
  IndexSet w_g;
  for (std::uint32_t a : w_q) {
    w_g.push_back(g->arrow_index(atlas.q->describe(a)));
  }
  w_g = make_set(std::move(w_g));

  // The W-topology is computed in the ambient groupoid, where the arrow
  // space lives; arrow ids identify the two copies.
  std::vector<Chart> charts_q(atlas.charts);
  FinSpace w_space = make_w_space(q, charts_q, w_q, mode);

  LocallyLieGroupoid l =
      assemble_locally_lie(std::move(g), std::move(w_g), std::move(w_space), mode,
                           std::move(charts));
  if (!l.report.all()) {
    std::string which;
    if (!l.report.g1.pass) which = "G1: " + l.report.g1.witness;
    else if (!l.report.g2.pass) which = "G2: " + l.report.g2.witness;
    else if (!l.report.g3.pass) which = "G3: " + l.report.g3.witness;
    else if (!l.report.g4.pass) which = "G4: " + l.report.g4.witness;
    else which = "G5: " + l.report.g5.witness;
    fail(Err::Internal, "locally Lie axioms fail on a strictly regular atlas (" + which + ")");
  }
  return l;
}

namespace {

std::uint32_t canonical_section_through(const GermTable& jr, const Groupoid& g,
                                        std::uint32_t w_arrow) {
  for (std::uint32_t i = 0; i < jr.gamma_w.size(); ++i) {
    const AdmissibleSection& s = jr.gamma_w[i];
    std::uint32_t x = g.src(w_arrow);
    if (set_contains(s.domain, x) && s.value_at(x) == w_arrow) {
      return i;
    }
  }
  fail(Err::NoSectionThroughW, g.describe(w_arrow));
}

}  // namespace

HolGroupoid build_hol(const LocallyLieGroupoid& l) {
  HolGroupoid h;
  h.loclie = l;
  const Groupoid& g = *l.g;
  WContext ctx = l.wctx();
  h.jr = generate_jrgw(ctx);
  const GermTable& jr = h.jr;

  for (std::uint32_t i : jr.jrw_germs) {
    if (g.is_identity(psi(jr, i))) {
      h.j0.push_back(i);
    }
  }
  h.j0 = make_set(std::move(h.j0));

  Subgroupoid j0_sub{jr.jr, h.j0, full_set(g.base().size())};
  if (!is_normal(*jr.jr, j0_sub)) {
    fail(Err::NormalityFailure, "J_0 is not normal in J^r(G,W)");
  }
  Quotient quo = quotient_by(jr.jr, j0_sub);
  h.hol = quo.groupoid;
  h.class_of = quo.class_of;
  h.p = quo.projection;

  // phi : Hol -> G with phi o p = psi.
  GroupoidMorphism phi;
  phi.dom = h.hol;
  phi.cod = l.g;
  phi.obj_map = full_set(g.base().size());
  phi.arrow_map.assign(h.hol->arrow_count(), 0);
  std::vector<bool> assigned(h.hol->arrow_count(), false);
  for (std::uint32_t germ = 0; germ < jr.germs.size(); ++germ) {
    std::uint32_t cls = h.class_of[germ];
    std::uint32_t value = psi(jr, germ);
    if (!assigned[cls]) {
      phi.arrow_map[cls] = value;
      assigned[cls] = true;
    } else if (phi.arrow_map[cls] != value) {
      fail(Err::Internal, "psi is not constant on a J_0 coset");
    }
  }
  if (!validate_morphism(phi)) {
    fail(Err::Internal, "phi is not a morphism");
  }
  h.phi = std::move(phi);

  h.embed.resize(l.w.size());
  h.embed_germ.resize(l.w.size());
  for (std::uint32_t i = 0; i < l.w.size(); ++i) {
    std::uint32_t sec = canonical_section_through(jr, g, l.w[i]);
    std::uint32_t germ = jr.germ_index(germ_of(g, jr.gamma_w[sec], g.src(l.w[i])));
    h.embed_germ[i] = germ;
    h.embed[i] = h.class_of[germ];
  }

  h.gamma_gw = gamma_closure(g, jr.gamma_w);

  // Chart-generated topology: subbase of images sigma_s(V) over all
  // sections of Gamma^r(G,W) and all opens V of the W-space.
  std::vector<IndexSet> w_opens = l.w_space.all_opens();
  std::set<IndexSet> subbase;
  for (const AdmissibleSection& s : h.gamma_gw) {
    // sigma_s values on its whole w-domain.
    std::map<std::uint32_t, std::uint32_t> sigma;  // W position -> hol arrow
    for (std::uint32_t i = 0; i < l.w.size(); ++i) {
      std::uint32_t wt = g.tgt(l.w[i]);
      if (!set_contains(s.domain, wt)) continue;
      SectionGerm prod = germ_product(g, jr.germs[h.embed_germ[i]], germ_of(g, s, wt));
      sigma[i] = h.class_of[jr.germ_index(prod)];
    }
    for (const IndexSet& v : w_opens) {
      IndexSet image;
      for (std::uint32_t pos : v) {
        auto it = sigma.find(pos);
        if (it != sigma.end()) {
          set_insert(image, it->second);
        }
      }
      if (!image.empty()) {
        subbase.insert(std::move(image));
      }
    }
  }
  std::vector<std::string> ids;
  for (std::uint32_t e = 0; e < h.hol->arrow_count(); ++e) {
    ids.push_back(h.hol->arrow(e).id);
  }
  std::vector<IndexSet> mins(h.hol->arrow_count());
  for (std::uint32_t e = 0; e < h.hol->arrow_count(); ++e) {
    IndexSet m = full_set(h.hol->arrow_count());
    for (const IndexSet& b : subbase) {
      if (set_contains(b, e)) {
        m = set_intersect(m, b);
      }
    }
    mins[e] = std::move(m);
  }
  h.hol_space = FinSpace::from_min_opens(std::move(ids), std::move(mins));
  return h;
}

std::uint32_t embed_w(const HolGroupoid& h, std::uint32_t w_arrow) {
  WContext ctx = h.loclie.wctx();
  return h.embed.at(ctx.position(w_arrow));
}

std::uint32_t chart_sigma(const HolGroupoid& h, const std::vector<std::uint32_t>& factors,
                          std::uint32_t w_arrow) {
  const Groupoid& g = *h.loclie.g;
  if (factors.empty()) {
    fail(Err::Parse, "chart sections need at least one factor");
  }
  AdmissibleSection s = h.jr.gamma_w.at(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) {
    s = section_product(g, h.jr.gamma_w.at(factors[i]), s);
  }
  std::uint32_t wt = g.tgt(w_arrow);
  if (!set_contains(s.domain, wt)) {
    fail(Err::PointOutsideDomain, g.base().point_name(wt));
  }
  WContext ctx = h.loclie.wctx();
  SectionGerm prod =
      germ_product(g, h.jr.germs[h.embed_germ[ctx.position(w_arrow)]], germ_of(g, s, wt));
  return h.class_of[h.jr.germ_index(prod)];
}

ExtendabilityResult is_extendable(const HolGroupoid& h) {
  ExtendabilityResult out;
  const Groupoid& g = *h.loclie.g;
  for (std::uint32_t germ = 0; germ < h.jr.germs.size(); ++germ) {
    if (g.is_identity(psi(h.jr, germ)) && !set_contains(h.jr.jrw_germs, germ)) {
      out.defects.push_back(germ);
    }
  }
  out.defects = make_set(std::move(out.defects));
  out.extendable = out.defects.empty();
  return out;
}

IndexSet holonomy_defects(const HolGroupoid& h) { return is_extendable(h).defects; }

bool extendable_via_phi(const HolGroupoid& h) {
  if (h.hol->arrow_count() != h.loclie.g->arrow_count()) {
    return false;
  }
  IndexSet image = make_set(h.phi.arrow_map);
  return image.size() == h.loclie.g->arrow_count();
}

GroupoidMorphism universal_factor(const HolGroupoid& h, const TopGroupoid& a,
                                  const GroupoidMorphism& xi) {
  const Groupoid& ag = *a.g;
  const Groupoid& g = *h.loclie.g;
  if (xi.dom != a.g || xi.cod != h.loclie.g) {
    fail(Err::CrossRef, "xi must map A into glob(s)");
  }
  if (!validate_morphism(xi)) {
    fail(Err::CrossRef, "xi is not a groupoid morphism");
  }
  // a) identity on objects.
  if (ag.base().points() != g.base().points()) {
    fail(Err::HypothesisFailureA, "A lives on a different object space");
  }
  for (std::uint32_t x = 0; x < ag.base().size(); ++x) {
    if (xi.obj_map[x] != x) {
      fail(Err::HypothesisFailureA, "xi moves the object " + ag.base().point_name(x));
    }
  }
  // b) xi^-1(H_i) open and the restrictions continuous.
  WContext ctx = h.loclie.wctx();
  IndexSet generators;
  for (std::size_t i = 0; i < h.loclie.charts.size(); ++i) {
    const Chart& c = h.loclie.charts[i];
    IndexSet pre;
    for (std::uint32_t u = 0; u < ag.arrow_count(); ++u) {
      if (set_contains(c.arrows, xi.arrow_map[u])) {
        pre.push_back(u);
      }
    }
    for (std::uint32_t u : pre) {
      if (!is_subset(a.arrow_space.min_open(u), pre)) {
        fail(Err::HypothesisFailureB,
             "xi^-1(H_" + std::to_string(i) + ") is not open at " + ag.describe(u));
      }
      IndexSet nbhd = set_intersect(ctx.min_open_arrows(xi.arrow_map[u]), c.arrows);
      for (std::uint32_t u2 : a.arrow_space.min_open(u)) {
        if (!set_contains(nbhd, xi.arrow_map[u2])) {
          fail(Err::HypothesisFailureB, "restriction to H_" + std::to_string(i) +
                                            " discontinuous at " + ag.describe(u));
        }
      }
    }
    generators = set_union(generators, pre);
  }
  // c) the preimages generate A.
  Subgroupoid gen = generated_subgroupoid(a.g, generators, full_set(ag.base().size()));
  if (gen.arrows != ag.all_arrows()) {
    IndexSet missing = set_minus(ag.all_arrows(), gen.arrows);
    fail(Err::HypothesisFailureC, "generation misses " + ag.describe(missing.front()));
  }
  // d) A locally sectionable.
  WContext actx{a.g, ag.all_arrows(), a.arrow_space};
  SectionabilityReport sec = is_locally_sectionable(actx);
  if (!sec.ok) {
    fail(Err::HypothesisFailureD, "no section through " + ag.describe(sec.uncovered.front()));
  }

  // Fold the embedded generator values over factorizations.
  const std::uint32_t m = static_cast<std::uint32_t>(ag.arrow_count());
  std::vector<std::int64_t> val(m, -1);
  std::deque<std::uint32_t> work;
  auto assign = [&](std::uint32_t u, std::uint32_t value) {
    if (val[u] < 0) {
      val[u] = value;
      work.push_back(u);
    } else if (val[u] != static_cast<std::int64_t>(value)) {
      fail(Err::Internal, "factorization is not well defined at " + ag.describe(u));
    }
  };
  for (std::uint32_t u : generators) {
    assign(u, embed_w(h, xi.arrow_map[u]));
  }
  while (!work.empty()) {
    std::uint32_t u = work.front();
    work.pop_front();
    for (std::uint32_t v : generators) {
      if (ag.composable(u, v)) {
        assign(ag.comp_checked(u, v),
               h.hol->comp_checked(static_cast<std::uint32_t>(val[u]),
                                   static_cast<std::uint32_t>(val[v])));
      }
      if (ag.composable(v, u)) {
        assign(ag.comp_checked(v, u),
               h.hol->comp_checked(static_cast<std::uint32_t>(val[v]),
                                   static_cast<std::uint32_t>(val[u])));
      }
    }
  }
  GroupoidMorphism out;
  out.dom = a.g;
  out.cod = h.hol;
  out.obj_map = full_set(ag.base().size());
  out.arrow_map.reserve(m);
  for (std::uint32_t u = 0; u < m; ++u) {
    if (val[u] < 0) {
      fail(Err::Internal, "factorization missed " + ag.describe(u));
    }
    out.arrow_map.push_back(static_cast<std::uint32_t>(val[u]));
  }
  if (!validate_morphism(out)) {
    fail(Err::Internal, "xi' is not a morphism");
  }
  // phi o xi' = xi.
  for (std::uint32_t u = 0; u < m; ++u) {
    if (h.phi.arrow_map[out.arrow_map[u]] != xi.arrow_map[u]) {
      fail(Err::Internal, "phi o xi' differs from xi at " + ag.describe(u));
    }
  }
  return out;
}

MonOverHol lift_monodromy(const HolGroupoid& h) {
  MonOverHol out;
  out.w_prime = h.embed;
  return out;
}

std::uint32_t mon_fold(const HolGroupoid& h, const Word& word) {
  if (word.letters.empty()) {
    return h.hol->ident(word.base);
  }
  std::uint32_t acc = embed_w(h, word.letters.front());
  for (std::size_t i = 1; i < word.letters.size(); ++i) {
    acc = h.hol->comp_checked(acc, embed_w(h, word.letters[i]));
  }
  return acc;
}

std::vector<Word> mon_basis(const HolGroupoid& h, const Word& word, const IndexSet& w_open) {
  const Groupoid& g = *h.loclie.g;
  std::uint32_t at = word.letters.empty() ? word.base : g.tgt(word.letters.back());
  std::vector<Word> out;
  for (std::uint32_t a : w_open) {
    if (!set_contains(h.loclie.w, a) || g.src(a) != at) continue;
    Word next = word;
    next.letters.push_back(a);
    out.push_back(std::move(next));
  }
  return out;
}

bool StrongMonodromyResult::continuous_at_identities() const {
  for (const IdentityContinuity& c : certificate) {
    if (!c.pass) return false;
  }
  return true;
}

StrongMonodromyResult strong_monodromy_extend(const TopGroupoid& q, const Atlas& atlas,
                                              const LocalMorphism& lm, const TopGroupoid& k,
                                              TopologyMode mode) {
  StrictReport strict = check_strictly_regular(q, atlas, mode);
  if (!strict.all()) {
    fail(Err::NotAdapted, "strong monodromy requires a strictly regular atlas (" +
                              strict.summary() + ")");
  }
  StrongMonodromyResult out;
  out.extension = validate_local_morphism(lm);
  const Groupoid& g = *atlas.q;

  IndexSet w;
  for (const Chart& c : atlas.charts) {
    w = set_union(w, c.arrows);
  }
  WContext ctx{atlas.q, w, make_w_space(q, atlas.charts, w, mode)};

  // Each component must be continuous from its chart into K.
  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    const Chart& c = atlas.charts[i];
    for (std::uint32_t u : c.arrows) {
      std::uint32_t fu = out.extension.apply(u);
      IndexSet nbhd = set_intersect(ctx.min_open_arrows(u), c.arrows);
      for (std::uint32_t u2 : nbhd) {
        if (!set_contains(k.arrow_space.min_open(fu), out.extension.apply(u2))) {
          fail(Err::NotContinuousOnChart,
               "chart " + std::to_string(i) + " at " + g.describe(u));
        }
      }
    }
  }

  // Continuity of M(f) at the identities of Mon, through the W'-basis.
  for (std::uint32_t x = 0; x < g.base().size(); ++x) {
    IdentityContinuity item{x, true, ""};
    std::uint32_t e = g.ident(x);
    std::uint32_t fe = out.extension.apply(e);
    for (std::uint32_t u : ctx.min_open_arrows(e)) {
      if (!set_contains(k.arrow_space.min_open(fe), out.extension.apply(u))) {
        item.pass = false;
        item.witness = g.describe(u);
        break;
      }
    }
    out.certificate.push_back(std::move(item));
  }
  return out;
}

ZetaReport zeta_report(const HolGroupoid& h, std::size_t budget,
                       std::span<const LocalMorphism> separators) {
  const Groupoid& g = *h.loclie.g;
  Atlas g_atlas{h.loclie.g, h.loclie.charts};
  Pregroupoid pre = build_W(g_atlas);

  ZetaReport rep;
  rep.star_surjective = true;
  constexpr std::size_t kWordsPerElement = 3;
  constexpr std::size_t kMaxLen = 6;

  for (std::uint32_t x = 0; x < g.base().size(); ++x) {
    ZetaStar star;
    star.object = x;
    IndexSet star_arrows;
    for (std::uint32_t e = 0; e < h.hol->arrow_count(); ++e) {
      if (h.hol->src(e) == x) {
        star_arrows.push_back(e);
      }
    }
    star.star_size = star_arrows.size();

    std::map<std::uint32_t, std::vector<Word>> found;
    std::deque<Word> queue;
    queue.push_back(Word{x, {}});
    while (!queue.empty()) {
      Word cur = queue.front();
      queue.pop_front();
      std::uint32_t e = mon_fold(h, cur);
      auto& bucket = found[e];
      if (bucket.size() < kWordsPerElement) {
        bucket.push_back(cur);
      }
      if (cur.letters.size() >= kMaxLen) continue;
      bool all_full = true;
      for (std::uint32_t s : star_arrows) {
        if (found[s].size() < kWordsPerElement) {
          all_full = false;
          break;
        }
      }
      if (all_full) break;
      std::uint32_t at = cur.letters.empty() ? cur.base : g.tgt(cur.letters.back());
      for (std::uint32_t u : h.loclie.w) {
        if (g.src(u) != at) continue;
        Word next = cur;
        next.letters.push_back(u);
        queue.push_back(std::move(next));
      }
    }

    bool surjective = true;
    for (std::uint32_t e : star_arrows) {
      if (found[e].empty()) {
        surjective = false;
      } else {
        star.words.emplace_back(e, found[e].front());
      }
    }
    star.surjective = surjective;
    rep.star_surjective = rep.star_surjective && surjective;

    // Injectivity status via the word-equality machinery.
    std::string status = "injective up to budget";
    bool unknown = false;
    for (std::uint32_t e : star_arrows) {
      const auto& bucket = found[e];
      for (std::size_t i = 0; i + 1 < bucket.size() && status == "injective up to budget";
           ++i) {
        EqualityVerdict v = equal_in_mon(pre, bucket[i], bucket[i + 1], budget, separators);
        if (v.kind == EqualityVerdict::Kind::Distinct) {
          status = "not injective: words separated by " + v.separator + " map to " +
                   h.hol->describe(e);
        } else if (v.kind == EqualityVerdict::Kind::Unknown) {
          unknown = true;
        }
      }
    }
    if (status == "injective up to budget" && unknown) {
      status = "unknown within budget";
    }
    star.injectivity = status;
    rep.stars.push_back(std::move(star));
  }
  return rep;
}

}  // namespace holmon
