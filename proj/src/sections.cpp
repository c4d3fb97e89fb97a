#include "holmon/sections.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace holmon {

std::uint32_t AdmissibleSection::value_at(std::uint32_t x) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), x);
  if (it == domain.end() || *it != x) {
    fail(Err::PointOutsideDomain, "point index " + std::to_string(x));
  }
  return values.at(static_cast<std::size_t>(it - domain.begin()));
}

PointMap target_map(const Groupoid& g, const AdmissibleSection& s) {
  PointMap f;
  f.domain = s.domain;
  f.values.reserve(s.values.size());
  for (std::uint32_t a : s.values) {
    f.values.push_back(g.tgt(a));
  }
  return f;
}

void validate_section(const Groupoid& g, const AdmissibleSection& s) {
  if (!g.base().is_open(s.domain)) {
    fail(Err::NotOpen, "section domain is not open");
  }
  if (s.values.size() != s.domain.size()) {
    fail(Err::Parse, "section values do not cover the domain");
  }
  for (std::size_t i = 0; i < s.domain.size(); ++i) {
    if (g.src(s.values[i]) != s.domain[i]) {
      fail(Err::SourceCondition, g.base().point_name(s.domain[i]));
    }
  }
  PointMap beta = target_map(g, s);
  IndexSet img = beta.image();
  if (img.size() != s.domain.size() || !g.base().is_open(img)) {
    fail(Err::ImageNotOpen, format_set(img, g.base().points()));
  }
  if (!is_open_homeo_onto_image(beta, g.base())) {
    fail(Err::NotHomeoOntoImage, format_set(s.domain, g.base().points()));
  }
}

bool is_admissible(const Groupoid& g, const AdmissibleSection& s) {
  try {
    validate_section(g, s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

AdmissibleSection section_product(const Groupoid& g, const AdmissibleSection& t,
                                  const AdmissibleSection& s) {
  AdmissibleSection out;
  for (std::size_t i = 0; i < s.domain.size(); ++i) {
    std::uint32_t y = g.tgt(s.values[i]);
    if (!set_contains(t.domain, y)) continue;
    out.domain.push_back(s.domain[i]);
    out.values.push_back(g.comp_checked(s.values[i], t.value_at(y)));
  }
  return out;
}

AdmissibleSection section_inverse(const Groupoid& g, const AdmissibleSection& s) {
  std::map<std::uint32_t, std::uint32_t> by_target;
  for (std::size_t i = 0; i < s.domain.size(); ++i) {
    by_target[g.tgt(s.values[i])] = g.inv(s.values[i]);
  }
  AdmissibleSection out;
  for (const auto& [y, a] : by_target) {
    out.domain.push_back(y);
    out.values.push_back(a);
  }
  return out;
}

std::vector<AdmissibleSection> enumerate_sections(const Groupoid& g,
                                                  std::optional<IndexSet> domain) {
  std::vector<IndexSet> domains;
  if (domain) {
    domains.push_back(*domain);
  } else {
    domains = g.base().all_opens();
  }
  std::vector<AdmissibleSection> out;
  for (const IndexSet& u : domains) {
    if (u.empty()) continue;
    AdmissibleSection cur;
    cur.domain = u;
    cur.values.assign(u.size(), 0);
    // Depth-first assignment over the stars of the domain points.
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == u.size()) {
        if (is_admissible(g, cur)) {
          out.push_back(cur);
        }
        return;
      }
      for (std::uint32_t a : g.star(u[i])) {
        cur.values[i] = a;
        rec(i + 1);
      }
    };
    rec(0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint32_t WContext::position(std::uint32_t arrow) const {
  auto it = std::lower_bound(arrows.begin(), arrows.end(), arrow);
  if (it == arrows.end() || *it != arrow) {
    fail(Err::NotInW, g->describe(arrow));
  }
  return static_cast<std::uint32_t>(it - arrows.begin());
}

IndexSet WContext::min_open_arrows(std::uint32_t arrow) const {
  IndexSet out;
  for (std::uint32_t pos : w_space.min_open(position(arrow))) {
    out.push_back(arrows[pos]);
  }
  return make_set(std::move(out));
}

std::vector<AdmissibleSection> enumerate_gamma_w(const WContext& w) {
  const Groupoid& g = *w.g;
  std::vector<AdmissibleSection> out;
  for (const AdmissibleSection& s : enumerate_sections(g)) {
    bool in_w = true;
    for (std::uint32_t a : s.values) {
      if (!w.contains(a)) {
        in_w = false;
        break;
      }
    }
    if (!in_w) continue;
    // Continuity into W: near values stay in the minimal W-neighborhood.
    bool continuous = true;
    for (std::size_t i = 0; i < s.domain.size() && continuous; ++i) {
      IndexSet nbhd = w.min_open_arrows(s.values[i]);
      for (std::uint32_t y : g.base().min_open(s.domain[i])) {
        if (!set_contains(nbhd, s.value_at(y))) {
          continuous = false;
          break;
        }
      }
    }
    if (continuous) {
      out.push_back(s);
    }
  }
  return out;
}

SectionGerm germ_of(const Groupoid& g, const AdmissibleSection& s, std::uint32_t x) {
  if (!set_contains(s.domain, x)) {
    fail(Err::PointOutsideDomain, g.base().point_name(x));
  }
  SectionGerm germ;
  germ.base = x;
  for (std::uint32_t y : g.base().min_open(x)) {
    germ.values.emplace_back(y, s.value_at(y));
  }
  return germ;
}

std::uint32_t germ_target(const Groupoid& g, const SectionGerm& a) {
  for (const auto& [y, arrow] : a.values) {
    if (y == a.base) {
      return g.tgt(arrow);
    }
  }
  fail(Err::Internal, "germ misses its base point");
}

namespace {

std::uint32_t germ_value(const SectionGerm& a, std::uint32_t y) {
  for (const auto& [p, arrow] : a.values) {
    if (p == y) {
      return arrow;
    }
  }
  fail(Err::Internal, "germ value outside the minimal open");
}

}  // namespace

SectionGerm germ_product(const Groupoid& g, const SectionGerm& a, const SectionGerm& b) {
  if (germ_target(g, a) != b.base) {
    fail(Err::NotComposable, "germ endpoints do not match");
  }
  SectionGerm out;
  out.base = a.base;
  for (const auto& [y, arrow] : a.values) {
    // The target map of a carries MinOpen(base a) into MinOpen(base b).
    out.values.emplace_back(y, g.comp_checked(arrow, germ_value(b, g.tgt(arrow))));
  }
  return out;
}

SectionGerm germ_inverse(const Groupoid& g, const SectionGerm& a) {
  std::uint32_t y0 = germ_target(g, a);
  SectionGerm out;
  out.base = y0;
  for (std::uint32_t y : g.base().min_open(y0)) {
    // The germ's target map bijects MinOpen(base) onto a set containing
    // MinOpen(y0); pull each point back.
    bool found = false;
    for (const auto& [x, arrow] : a.values) {
      if (g.tgt(arrow) == y) {
        out.values.emplace_back(y, g.inv(arrow));
        found = true;
        break;
      }
    }
    if (!found) {
      fail(Err::Internal, "germ inverse: target map misses " + g.base().point_name(y));
    }
  }
  return out;
}

std::string germ_label(const Groupoid& g, const SectionGerm& a) {
  std::string out = "<" + g.base().point_name(a.base) + "|";
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (i > 0) out += ";";
    out += g.base().point_name(a.values[i].first) + ":" + g.describe(a.values[i].second);
  }
  return out + ">";
}

std::uint32_t GermTable::germ_index(const SectionGerm& g) const {
  for (std::uint32_t i = 0; i < germs.size(); ++i) {
    if (germs[i] == g) {
      return i;
    }
  }
  fail(Err::Internal, "germ not present in J^r(G,W)");
}

GermTable generate_jrgw(const WContext& w) {
  const Groupoid& g = *w.g;
  GermTable table;
  table.gamma_w = enumerate_gamma_w(w);

  // Inverse of every generator must be a generator: Gamma^r(W) is closed
  // under inversion whenever W = W^-1 and inversion is continuous, which
  // the axioms provide on every accepted input.
  std::vector<std::uint32_t> inverse_of(table.gamma_w.size());
  for (std::uint32_t i = 0; i < table.gamma_w.size(); ++i) {
    AdmissibleSection inv = section_inverse(g, table.gamma_w[i]);
    auto it = std::find(table.gamma_w.begin(), table.gamma_w.end(), inv);
    if (it == table.gamma_w.end()) {
      fail(Err::Internal, "Gamma^r(W) is not closed under inversion");
    }
    inverse_of[i] = static_cast<std::uint32_t>(it - table.gamma_w.begin());
  }

  std::map<SectionGerm, std::uint32_t> index;
  auto add = [&](const SectionGerm& germ, std::vector<std::uint32_t> wit) -> bool {
    if (index.count(germ)) {
      return false;
    }
    std::uint32_t i = static_cast<std::uint32_t>(table.germs.size());
    index.emplace(germ, i);
    table.germs.push_back(germ);
    table.witness.push_back(std::move(wit));
    return true;
  };

  for (std::uint32_t i = 0; i < table.gamma_w.size(); ++i) {
    for (std::uint32_t x : table.gamma_w[i].domain) {
      add(germ_of(g, table.gamma_w[i], x), {i});
    }
  }
  std::vector<SectionGerm> seeds = table.germs;

  // Close under product and inverse.
  for (std::size_t head = 0; head < table.germs.size(); ++head) {
    SectionGerm a = table.germs[head];
    std::vector<std::uint32_t> wit_a = table.witness[head];
    {
      std::vector<std::uint32_t> wit_inv(wit_a.rbegin(), wit_a.rend());
      for (std::uint32_t& f : wit_inv) f = inverse_of[f];
      add(germ_inverse(g, a), std::move(wit_inv));
    }
    for (std::size_t other = 0; other < table.germs.size(); ++other) {
      SectionGerm b = table.germs[other];
      if (germ_target(g, a) == b.base) {
        std::vector<std::uint32_t> wit = wit_a;
        wit.insert(wit.end(), table.witness[other].begin(), table.witness[other].end());
        add(germ_product(g, a, b), std::move(wit));
      }
      if (germ_target(g, b) == a.base) {
        std::vector<std::uint32_t> wit = table.witness[other];
        wit.insert(wit.end(), wit_a.begin(), wit_a.end());
        add(germ_product(g, b, a), std::move(wit));
      }
    }
  }

  for (const SectionGerm& s : seeds) {
    table.jrw_germs.push_back(index.at(s));
  }
  table.jrw_germs = make_set(std::move(table.jrw_germs));

  // Assemble the germ groupoid.
  GroupoidData d;
  d.base = g.base();
  for (std::uint32_t i = 0; i < table.germs.size(); ++i) {
    d.arrows.push_back(
        {germ_label(g, table.germs[i]), table.germs[i].base, germ_target(g, table.germs[i])});
  }
  for (std::uint32_t i = 0; i < table.germs.size(); ++i) {
    d.inv.emplace_back(i, index.at(germ_inverse(g, table.germs[i])));
    for (std::uint32_t j = 0; j < table.germs.size(); ++j) {
      if (germ_target(g, table.germs[i]) == table.germs[j].base) {
        d.comp.push_back({i, j, index.at(germ_product(g, table.germs[i], table.germs[j]))});
      }
    }
  }
  for (std::uint32_t x = 0; x < g.base().size(); ++x) {
    SectionGerm id_germ;
    id_germ.base = x;
    for (std::uint32_t y : g.base().min_open(x)) {
      id_germ.values.emplace_back(y, g.ident(y));
    }
    auto it = index.find(id_germ);
    if (it == index.end()) {
      fail(Err::Internal,
           "identity germ missing at " + g.base().point_name(x) +
               " (identity section not in Gamma^r(W))");
    }
    d.ident.emplace_back(x, it->second);
  }
  GroupoidPtr jr = validate_groupoid(std::move(d));

  // validate_groupoid reorders arrows canonically; realign the tables.
  std::vector<SectionGerm> germs(table.germs.size());
  std::vector<std::vector<std::uint32_t>> witness(table.germs.size());
  IndexSet jrw;
  for (std::uint32_t i = 0; i < table.germs.size(); ++i) {
    std::uint32_t j = jr->arrow_index(germ_label(g, table.germs[i]));
    germs[j] = table.germs[i];
    witness[j] = table.witness[i];
    if (set_contains(table.jrw_germs, i)) {
      jrw.push_back(j);
    }
  }
  table.jr = jr;
  table.germs = std::move(germs);
  table.witness = std::move(witness);
  table.jrw_germs = make_set(std::move(jrw));
  return table;
}

std::uint32_t psi(const GermTable& t, std::uint32_t germ_arrow) {
  const SectionGerm& germ = t.germs.at(germ_arrow);
  return germ_value(germ, germ.base);
}

SectionabilityReport is_locally_sectionable(const WContext& w) {
  std::vector<AdmissibleSection> gamma = enumerate_gamma_w(w);
  SectionabilityReport rep;
  for (std::uint32_t a : w.arrows) {
    bool covered = false;
    for (const AdmissibleSection& s : gamma) {
      std::uint32_t x = w.g->src(a);
      if (set_contains(s.domain, x) && s.value_at(x) == a) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      rep.uncovered.push_back(a);
    }
  }
  rep.ok = rep.uncovered.empty();
  return rep;
}

std::vector<AdmissibleSection> gamma_closure(const Groupoid& g,
                                             std::vector<AdmissibleSection> generators) {
  std::set<AdmissibleSection> known(generators.begin(), generators.end());
  std::vector<AdmissibleSection> work(known.begin(), known.end());
  std::vector<AdmissibleSection> all(known.begin(), known.end());
  while (!work.empty()) {
    AdmissibleSection s = std::move(work.back());
    work.pop_back();
    std::vector<AdmissibleSection> snapshot = all;
    for (const AdmissibleSection& t : snapshot) {
      for (int order = 0; order < 2; ++order) {
        AdmissibleSection prod = order == 0 ? section_product(g, t, s)
                                            : section_product(g, s, t);
        if (prod.domain.empty()) continue;
        if (known.insert(prod).second) {
          all.push_back(prod);
          work.push_back(std::move(prod));
        }
      }
    }
  }
  std::vector<AdmissibleSection> out(known.begin(), known.end());
  return out;
}

}  // namespace holmon
