#include "holmon/io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace holmon {

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(Err::Parse, "cannot open " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(Err::Parse, path.string() + ": " + e.what());
  }
  return doc;
}

namespace {

json resolve_ref(const json& ref, const std::filesystem::path& base_dir,
                 std::filesystem::path* new_base) {
  if (ref.is_string()) {
    std::filesystem::path p = base_dir / ref.get<std::string>();
    *new_base = p.parent_path();
    return load_json(p);
  }
  *new_base = base_dir;
  return ref;
}

IndexSet parse_point_set(const json& arr, const FinSpace& s) {
  if (!arr.is_array()) {
    fail(Err::Parse, "expected an array of point ids");
  }
  IndexSet out;
  for (const auto& p : arr) {
    out.push_back(s.index_of(p.get<std::string>()));
  }
  return make_set(std::move(out));
}

IndexSet parse_arrow_set(const json& arr, const Groupoid& g) {
  if (!arr.is_array()) {
    fail(Err::Parse, "expected an array of arrow ids");
  }
  IndexSet out;
  for (const auto& a : arr) {
    out.push_back(g.arrow_index(a.get<std::string>()));
  }
  return make_set(std::move(out));
}

}  // namespace

FinSpace parse_space(const json& doc) {
  if (!doc.is_object() || !doc.contains("points") || !doc.contains("opens")) {
    fail(Err::Parse, "space documents need 'points' and 'opens'");
  }
  std::vector<std::string> points;
  for (const auto& p : doc["points"]) {
    points.push_back(p.get<std::string>());
  }
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    index[points[i]] = i;
  }
  std::vector<IndexSet> opens;
  for (const auto& open : doc["opens"]) {
    IndexSet u;
    for (const auto& p : open) {
      auto it = index.find(p.get<std::string>());
      if (it == index.end()) {
        fail(Err::UnknownPoint, "'" + p.get<std::string>() + "' in opens");
      }
      u.push_back(it->second);
    }
    opens.push_back(make_set(std::move(u)));
  }
  return FinSpace::validated(std::move(points), std::move(opens));
}

json space_to_json(const FinSpace& s) {
  json doc;
  doc["points"] = s.points();
  json opens = json::array();
  std::vector<IndexSet> lattice = s.all_opens();
  sort_opens(lattice);
  for (const IndexSet& u : lattice) {
    json open = json::array();
    for (std::uint32_t x : u) {
      open.push_back(s.point_name(x));
    }
    opens.push_back(std::move(open));
  }
  doc["opens"] = std::move(opens);
  return doc;
}

TopGroupoid parse_groupoid(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) {
    fail(Err::Parse, "groupoid document must be an object");
  }
  if (doc.contains("builder")) {
    std::string builder = doc["builder"].get<std::string>();
    std::filesystem::path space_base;
    FinSpace s = parse_space(resolve_ref(doc.at("space"), base_dir, &space_base));
    if (builder == "pair") {
      return pair_groupoid(s);
    }
    if (builder == "cyclic") {
      return cyc_groupoid(s, doc.at("k").get<unsigned>());
    }
    fail(Err::Parse, "unknown builder '" + builder + "'");
  }

  std::filesystem::path space_base;
  FinSpace base = parse_space(resolve_ref(doc.at("objects"), base_dir, &space_base));
  GroupoidData d;
  d.base = base;
  std::map<std::string, std::uint32_t> arrow_index;
  for (const auto& a : doc.at("arrows")) {
    Arrow arrow{a.at("id").get<std::string>(), base.index_of(a.at("src").get<std::string>()),
                base.index_of(a.at("tgt").get<std::string>())};
    arrow_index[arrow.id] = static_cast<std::uint32_t>(d.arrows.size());
    d.arrows.push_back(std::move(arrow));
  }
  auto idx = [&](const json& id) {
    auto it = arrow_index.find(id.get<std::string>());
    if (it == arrow_index.end()) {
      fail(Err::UnknownArrow, "'" + id.get<std::string>() + "'");
    }
    return it->second;
  };
  for (const auto& t : doc.at("compose")) {
    d.comp.push_back({idx(t.at(0)), idx(t.at(1)), idx(t.at(2))});
  }
  for (const auto& t : doc.at("inverse")) {
    d.inv.emplace_back(idx(t.at(0)), idx(t.at(1)));
  }
  for (const auto& t : doc.at("identities")) {
    d.ident.emplace_back(base.index_of(t.at(0).get<std::string>()), idx(t.at(1)));
  }
  GroupoidPtr g = validate_groupoid(std::move(d));

  std::vector<std::string> ids;
  for (std::uint32_t u = 0; u < g->arrow_count(); ++u) {
    ids.push_back(g->arrow(u).id);
  }
  FinSpace arrow_space;
  if (doc.contains("arrow_opens")) {
    std::vector<IndexSet> opens;
    for (const auto& open : doc["arrow_opens"]) {
      IndexSet u;
      for (const auto& id : open) {
        u.push_back(g->arrow_index(id.get<std::string>()));
      }
      opens.push_back(make_set(std::move(u)));
    }
    arrow_space = FinSpace::validated(ids, std::move(opens));
  } else {
    arrow_space = FinSpace::discrete(ids);
  }
  return TopGroupoid{g, std::move(arrow_space)};
}

json groupoid_to_json(const TopGroupoid& tg) {
  const Groupoid& g = *tg.g;
  json doc;
  doc["objects"] = space_to_json(g.base());
  json arrows = json::array();
  for (std::uint32_t u = 0; u < g.arrow_count(); ++u) {
    arrows.push_back({{"id", g.arrow(u).id},
                      {"src", g.base().point_name(g.src(u))},
                      {"tgt", g.base().point_name(g.tgt(u))}});
  }
  doc["arrows"] = std::move(arrows);
  json comp = json::array();
  for (std::uint32_t u = 0; u < g.arrow_count(); ++u) {
    for (std::uint32_t v = 0; v < g.arrow_count(); ++v) {
      if (g.composable(u, v)) {
        comp.push_back({g.arrow(u).id, g.arrow(v).id, g.arrow(g.comp_checked(u, v)).id});
      }
    }
  }
  doc["compose"] = std::move(comp);
  json inv = json::array();
  for (std::uint32_t u = 0; u < g.arrow_count(); ++u) {
    inv.push_back({g.arrow(u).id, g.arrow(g.inv(u)).id});
  }
  doc["inverse"] = std::move(inv);
  json ident = json::array();
  for (std::uint32_t x = 0; x < g.base().size(); ++x) {
    ident.push_back({g.base().point_name(x), g.arrow(g.ident(x)).id});
  }
  doc["identities"] = std::move(ident);
  json opens = json::array();
  std::vector<IndexSet> lattice = tg.arrow_space.all_opens();
  sort_opens(lattice);
  for (const IndexSet& u : lattice) {
    json open = json::array();
    for (std::uint32_t a : u) {
      open.push_back(g.arrow(a).id);
    }
    opens.push_back(std::move(open));
  }
  doc["arrow_opens"] = std::move(opens);
  return doc;
}

AtlasDoc parse_atlas(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object() || !doc.contains("groupoid") || !doc.contains("charts")) {
    fail(Err::Parse, "atlas documents need 'groupoid' and 'charts'");
  }
  std::filesystem::path g_base;
  AtlasDoc out{parse_groupoid(resolve_ref(doc["groupoid"], base_dir, &g_base), g_base), {}};
  out.atlas.q = out.top.g;
  for (const auto& chart : doc["charts"]) {
    Chart c;
    c.open = parse_point_set(chart.at("open"), out.top.g->base());
    c.arrows = parse_arrow_set(chart.at("arrows"), *out.top.g);
    out.atlas.charts.push_back(std::move(c));
  }
  return out;
}

json atlas_to_json(const AtlasDoc& a) {
  json doc;
  doc["groupoid"] = groupoid_to_json(a.top);
  json charts = json::array();
  for (const Chart& c : a.atlas.charts) {
    json open = json::array();
    for (std::uint32_t x : c.open) {
      open.push_back(a.top.g->base().point_name(x));
    }
    json arrows = json::array();
    for (std::uint32_t u : c.arrows) {
      arrows.push_back(a.top.g->arrow(u).id);
    }
    charts.push_back({{"open", std::move(open)}, {"arrows", std::move(arrows)}});
  }
  doc["charts"] = std::move(charts);
  return doc;
}

MorphismDoc parse_morphism(const json& doc, const AtlasDoc& atlas,
                           const std::filesystem::path& base_dir) {
  if (!doc.is_object() || !doc.contains("target") || !doc.contains("charts")) {
    fail(Err::Parse, "morphism documents need 'target' and 'charts'");
  }
  std::filesystem::path t_base;
  MorphismDoc out{parse_groupoid(resolve_ref(doc["target"], base_dir, &t_base), t_base), {}};
  out.morphism.name = doc.value("name", "f");
  out.morphism.atlas = atlas.atlas;
  out.morphism.target = out.target_top.g;
  out.morphism.chart_maps.resize(atlas.atlas.charts.size());
  for (const auto& chart : doc["charts"]) {
    std::size_t i = chart.at("chart").get<std::size_t>();
    if (i >= atlas.atlas.charts.size()) {
      fail(Err::CrossRef, "morphism references chart " + std::to_string(i));
    }
    for (const auto& entry : chart.at("map")) {
      out.morphism.chart_maps[i].emplace_back(
          atlas.top.g->arrow_index(entry.at(0).get<std::string>()),
          out.target_top.g->arrow_index(entry.at(1).get<std::string>()));
    }
  }
  return out;
}

json morphism_to_json(const MorphismDoc& m) {
  json doc;
  doc["name"] = m.morphism.name;
  doc["target"] = groupoid_to_json(m.target_top);
  json charts = json::array();
  const Groupoid& q = *m.morphism.atlas.q;
  const Groupoid& k = *m.morphism.target;
  for (std::size_t i = 0; i < m.morphism.chart_maps.size(); ++i) {
    json map = json::array();
    for (const auto& [u, fu] : m.morphism.chart_maps[i]) {
      map.push_back({q.arrow(u).id, k.arrow(fu).id});
    }
    charts.push_back({{"chart", i}, {"map", std::move(map)}});
  }
  doc["charts"] = std::move(charts);
  return doc;
}

Word parse_word(const json& doc, const Groupoid& q) {
  if (!doc.is_object() || !doc.contains("base")) {
    fail(Err::Parse, "word documents need 'base'");
  }
  std::vector<std::uint32_t> letters;
  if (doc.contains("letters")) {
    for (const auto& id : doc["letters"]) {
      letters.push_back(q.arrow_index(id.get<std::string>()));
    }
  }
  return make_word(q, q.base().index_of(doc["base"].get<std::string>()), std::move(letters));
}

json word_to_json(const Word& w, const Groupoid& q) {
  json doc;
  doc["base"] = q.base().point_name(w.base);
  json letters = json::array();
  for (std::uint32_t u : w.letters) {
    letters.push_back(q.arrow(u).id);
  }
  doc["letters"] = std::move(letters);
  return doc;
}

std::string format_word(const Groupoid& q, const Word& w) {
  std::string out = q.base().point_name(word_src(q, w)) + ":[";
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i > 0) out += " ";
    out += q.describe(w.letters[i]);
  }
  return out + "]";
}

Manifest load_manifest(const ManifestPaths& paths) {
  Manifest m;
  if (!paths.space.empty()) {
    m.space = parse_space(load_json(paths.space));
  }
  if (!paths.groupoid.empty()) {
    std::filesystem::path p(paths.groupoid);
    m.groupoid = parse_groupoid(load_json(p), p.parent_path());
  }
  if (!paths.atlas.empty()) {
    std::filesystem::path p(paths.atlas);
    m.atlas = parse_atlas(load_json(p), p.parent_path());
  }
  if (!paths.atlas2.empty()) {
    std::filesystem::path p(paths.atlas2);
    m.atlas2 = parse_atlas(load_json(p), p.parent_path());
    if (m.atlas && m.atlas2->top.g->base().points() != m.atlas->top.g->base().points()) {
      fail(Err::CrossRef, "the two atlases live on different object spaces");
    }
  }
  if (!paths.morphism.empty()) {
    if (!m.atlas) {
      fail(Err::CrossRef, "morphism documents require an atlas");
    }
    std::filesystem::path p(paths.morphism);
    m.morphism = parse_morphism(load_json(p), *m.atlas, p.parent_path());
  }
  const Groupoid* word_parent = m.atlas   ? m.atlas->top.g.get()
                                : m.groupoid ? m.groupoid->g.get()
                                             : nullptr;
  if (!paths.word1.empty()) {
    if (word_parent == nullptr) {
      fail(Err::CrossRef, "word documents require a groupoid or atlas");
    }
    m.word1 = parse_word(load_json(paths.word1), *word_parent);
  }
  if (!paths.word2.empty()) {
    if (word_parent == nullptr) {
      fail(Err::CrossRef, "word documents require a groupoid or atlas");
    }
    m.word2 = parse_word(load_json(paths.word2), *word_parent);
  }
  return m;
}

}  // namespace holmon
