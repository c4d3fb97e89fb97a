// JSON document formats and the manifest loader for the batch front end.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "holmon/holonomy.hpp"

namespace holmon {

using json = nlohmann::json;

// space = {"points":[...], "opens":[[...],...]}
FinSpace parse_space(const json& doc);
json space_to_json(const FinSpace& s);

// groupoid = {"builder":"pair"|"cyclic","space":ref,"k":int} or explicit
// {"objects":ref,"arrows":[{"id","src","tgt"}],"compose":[[u,v,w]],
//  "inverse":[[u,v]],"identities":[[x,u]],"arrow_opens":[[...]]}.
// A ref is either an inline document or a path string relative to the
// referencing file.
TopGroupoid parse_groupoid(const json& doc, const std::filesystem::path& base_dir);
json groupoid_to_json(const TopGroupoid& tg);

// atlas = {"groupoid":ref,"charts":[{"open":[...],"arrows":[ids]}]}
struct AtlasDoc {
  TopGroupoid top;
  Atlas atlas;
};
AtlasDoc parse_atlas(const json& doc, const std::filesystem::path& base_dir);
json atlas_to_json(const AtlasDoc& a);

// morphism = {"name":str,"target":ref,
//             "charts":[{"chart":i,"map":[[u,k_arrow],...]},...]}
struct MorphismDoc {
  TopGroupoid target_top;
  LocalMorphism morphism;  // unvalidated; atlas filled by the caller
};
MorphismDoc parse_morphism(const json& doc, const AtlasDoc& atlas,
                           const std::filesystem::path& base_dir);
json morphism_to_json(const MorphismDoc& m);

// word = {"base":x,"letters":[ids]}
Word parse_word(const json& doc, const Groupoid& q);
json word_to_json(const Word& w, const Groupoid& q);

json load_json(const std::filesystem::path& path);

// The resolved document bundle for one command invocation.
struct Manifest {
  std::optional<FinSpace> space;
  std::optional<TopGroupoid> groupoid;
  std::optional<AtlasDoc> atlas;
  std::optional<AtlasDoc> atlas2;
  std::optional<MorphismDoc> morphism;
  std::optional<Word> word1;
  std::optional<Word> word2;

  std::size_t budget = 10000;
  std::size_t oracle_cap = 16;
  std::size_t max_len = 4;
  TopologyMode mode = TopologyMode::AtlasGenerated;
};

struct ManifestPaths {
  std::string space, groupoid, atlas, atlas2, morphism, word1, word2;
};

// Loads and cross-validates every referenced document.
Manifest load_manifest(const ManifestPaths& paths);

std::string format_word(const Groupoid& q, const Word& w);

}  // namespace holmon
