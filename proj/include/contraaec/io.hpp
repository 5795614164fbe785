#pragma once

// Canonical JSON serialization for category and presheaf files. Object keys
// and all lists are emitted in sorted order, so serialize(parse(s)) == s for
// files produced by this module.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "contraaec/error.hpp"
#include "contraaec/fincat.hpp"
#include "contraaec/presheaf.hpp"

namespace contraaec {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Categories

inline json category_to_json(const FinCat& C) {
  RawCategory raw = to_raw(C);
  json j;
  j["objects"] = raw.objects;  // already sorted
  json ms = json::array();
  for (const auto& m : raw.morphisms)
    ms.push_back({{"cod", m.cod}, {"dom", m.dom}, {"name", m.name}});
  j["morphisms"] = ms;  // sorted by name in FinCat order
  j["identities"] = raw.identities;
  std::sort(raw.compose.begin(), raw.compose.end(), [](const auto& a, const auto& b) {
    return std::tie(a.g, a.f) < std::tie(b.g, b.f);
  });
  json cs = json::array();
  for (const auto& e : raw.compose)
    cs.push_back({{"f", e.f}, {"g", e.g}, {"result", e.result}});
  j["compose"] = cs;
  return j;
}

inline RawCategory raw_category_from_json(const json& j) {
  RawCategory raw;
  try {
    raw.objects = j.at("objects").get<std::vector<std::string>>();
    for (const auto& m : j.at("morphisms"))
      raw.morphisms.push_back({m.at("name").get<std::string>(), m.at("dom").get<std::string>(),
                               m.at("cod").get<std::string>()});
    if (j.contains("identities"))
      raw.identities = j.at("identities").get<std::map<std::string, std::string>>();
    if (j.contains("compose"))
      for (const auto& e : j.at("compose"))
        raw.compose.push_back({e.at("g").get<std::string>(), e.at("f").get<std::string>(),
                               e.at("result").get<std::string>()});
  } catch (const json::exception& e) {
    throw error(errc::parse_error, std::string("malformed category file: ") + e.what());
  }
  return raw;
}

inline std::string serialize_category(const FinCat& C) { return category_to_json(C).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Presheaves

// base_ref, when nonempty, is written instead of the inline base category.
inline json presheaf_to_json(const Presheaf& X, const std::string& base_ref = "") {
  RawPresheaf raw = to_raw(X);
  json j;
  if (base_ref.empty())
    j["base"] = category_to_json(X.base);
  else
    j["base"] = base_ref;
  j["carriers"] = raw.carriers;
  j["actions"] = raw.actions;
  return j;
}

inline std::string serialize_presheaf(const Presheaf& X, const std::string& base_ref = "") {
  return presheaf_to_json(X, base_ref).dump(2) + "\n";
}

inline RawPresheaf raw_presheaf_from_json(const json& j) {
  RawPresheaf raw;
  try {
    if (j.contains("carriers"))
      raw.carriers = j.at("carriers").get<std::map<std::string, std::vector<std::string>>>();
    if (j.contains("actions"))
      raw.actions =
          j.at("actions").get<std::map<std::string, std::map<std::string, std::string>>>();
  } catch (const json::exception& e) {
    throw error(errc::parse_error, std::string("malformed presheaf file: ") + e.what());
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::parse_error, "cannot write '" + path + "'");
  out << content;
}

inline json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw error(errc::parse_error, "invalid JSON");
  return j;
}

inline bool is_presheaf_json(const json& j) { return j.contains("carriers"); }

inline FinCat load_category(const std::string& path) {
  return validate_category(raw_category_from_json(parse_json(read_file(path))));
}

// A presheaf file carries its base inline or as a path (resolved relative to
// the presheaf file's directory).
inline Presheaf load_presheaf(const std::string& path) {
  json j = parse_json(read_file(path));
  if (!j.contains("base")) throw error(errc::parse_error, "presheaf file lacks a base");
  FinCat base;
  if (j["base"].is_string()) {
    std::filesystem::path ref = j["base"].get<std::string>();
    if (ref.is_relative()) ref = std::filesystem::path(path).parent_path() / ref;
    base = load_category(ref.string());
  } else {
    base = validate_category(raw_category_from_json(j["base"]));
  }
  return validate_presheaf(base, raw_presheaf_from_json(j));
}

}  // namespace contraaec
