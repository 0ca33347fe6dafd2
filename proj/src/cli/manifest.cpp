#include "hudsal/cli/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>

namespace hudsal::cli {

using nlohmann::json;

namespace {

template <typename T>
T get_as(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": field '" + key + "' is missing or has the wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ValidationError(where + ": unknown field '" + key + "'");
  }
}

}  // namespace

IttiParams params_from_json(const json& overrides, IttiParams base) {
  if (!overrides.is_object()) throw ValidationError("params must be a JSON object");
  reject_unknown(overrides,
                 {"pyramid_levels", "center_scales", "deltas", "orientations_deg", "output_scale",
                  "gabor"},
                 "params");
  const std::string where = "params";
  if (overrides.contains("pyramid_levels")) {
    base.pyramid_levels = get_as<int>(overrides, "pyramid_levels", where);
  }
  if (overrides.contains("center_scales")) {
    base.center_scales = get_as<std::vector<int>>(overrides, "center_scales", where);
  }
  if (overrides.contains("deltas")) base.deltas = get_as<std::vector<int>>(overrides, "deltas", where);
  if (overrides.contains("orientations_deg")) {
    base.orientations_deg = get_as<std::vector<double>>(overrides, "orientations_deg", where);
  }
  if (overrides.contains("output_scale")) {
    base.output_scale = get_as<int>(overrides, "output_scale", where);
  }
  if (overrides.contains("gabor")) {
    const json& g = overrides.at("gabor");
    if (!g.is_object()) throw ValidationError("params.gabor must be a JSON object");
    reject_unknown(g, {"wavelength", "sigma", "aspect", "radius"}, "params.gabor");
    if (g.contains("wavelength")) base.gabor.wavelength = get_as<double>(g, "wavelength", "params.gabor");
    if (g.contains("sigma")) base.gabor.sigma = get_as<double>(g, "sigma", "params.gabor");
    if (g.contains("aspect")) base.gabor.aspect = get_as<double>(g, "aspect", "params.gabor");
    if (g.contains("radius")) base.gabor.radius = get_as<int>(g, "radius", "params.gabor");
  }
  base.validate();
  return base;
}

json params_to_json(const IttiParams& params) {
  return {
      {"pyramid_levels", params.pyramid_levels},
      {"center_scales", params.center_scales},
      {"deltas", params.deltas},
      {"orientations_deg", params.orientations_deg},
      {"output_scale", params.output_scale},
      {"gabor",
       {{"wavelength", params.gabor.wavelength},
        {"sigma", params.gabor.sigma},
        {"aspect", params.gabor.aspect},
        {"radius", params.gabor.radius}}},
  };
}

std::string params_fingerprint(const IttiParams& params) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : params_to_json(params).dump()) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

CaseManifest parse_manifest(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ValidationError("manifest must be a JSON object");
  reject_unknown(doc, {"schema_version", "output_dir", "dump_maps", "params", "cases"}, "manifest");
  const int version = get_as<int>(doc, "schema_version", "manifest");
  if (version != kManifestSchemaVersion) {
    throw ValidationError("manifest schema_version " + std::to_string(version) +
                          " is not supported (expected " +
                          std::to_string(kManifestSchemaVersion) + ")");
  }

  CaseManifest out;
  const std::filesystem::path out_dir = get_as<std::string>(doc, "output_dir", "manifest");
  out.output_dir = out_dir.is_absolute() ? out_dir : base_dir / out_dir;
  if (doc.contains("dump_maps")) out.dump_maps = get_as<bool>(doc, "dump_maps", "manifest");
  if (doc.contains("params")) out.params = params_from_json(doc.at("params"));

  if (!doc.contains("cases") || !doc.at("cases").is_array()) {
    throw ValidationError("manifest: field 'cases' is missing or is not an array");
  }
  std::set<std::string> seen;
  std::size_t index = 0;
  for (const json& entry : doc.at("cases")) {
    const std::string where = "manifest case #" + std::to_string(index++);
    if (!entry.is_object()) throw ValidationError(where + " is not an object");
    reject_unknown(entry, {"id", "measured", "hud", "region", "content_group"}, where);
    ManifestCase c;
    c.id = get_as<std::string>(entry, "id", where);
    if (c.id.empty()) throw ValidationError(where + ": id must not be empty");
    if (!seen.insert(c.id).second) throw ValidationError("duplicate case id '" + c.id + "'");
    const std::string case_where = "case '" + c.id + "'";
    const std::filesystem::path measured = get_as<std::string>(entry, "measured", case_where);
    const std::filesystem::path hud = get_as<std::string>(entry, "hud", case_where);
    c.measured = measured.is_absolute() ? measured : base_dir / measured;
    c.hud = hud.is_absolute() ? hud : base_dir / hud;
    c.content_group = get_as<std::string>(entry, "content_group", case_where);

    if (!entry.contains("region") || !entry.at("region").is_object()) {
      throw ValidationError(case_where + ": region must be an object {x, y, w, h}");
    }
    const json& r = entry.at("region");
    reject_unknown(r, {"x", "y", "w", "h"}, case_where + " region");
    c.region = {get_as<int>(r, "x", case_where + " region"), get_as<int>(r, "y", case_where + " region"),
                get_as<int>(r, "w", case_where + " region"), get_as<int>(r, "h", case_where + " region")};
    if (c.region.x < 0 || c.region.y < 0 || c.region.w < 0 || c.region.h < 0) {
      throw ValidationError(case_where + ": region fields must be nonnegative");
    }
    out.cases.push_back(std::move(c));
  }
  return out;
}

CaseManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_manifest(doc, path.parent_path());
}

std::vector<LoadedCase> load_cases(const CaseManifest& manifest) {
  std::vector<LoadedCase> out;
  out.reserve(manifest.cases.size());
  for (const ManifestCase& c : manifest.cases) {
    const std::string where = "case '" + c.id + "'";
    for (const auto& file : {c.measured, c.hud}) {
      if (!std::filesystem::is_regular_file(file)) {
        throw ValidationError(where + ": file " + file.string() + " does not exist");
      }
    }
    try {
      LoadedCase loaded{c, load_png(c.measured), load_png(c.hud)};
      validate_region(c.region, loaded.measured.width(), loaded.measured.height());
      out.push_back(std::move(loaded));
    } catch (const std::exception& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace hudsal::cli
