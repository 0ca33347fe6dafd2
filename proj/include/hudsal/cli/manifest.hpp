#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "hudsal/imagery.hpp"
#include "hudsal/saliency.hpp"

namespace hudsal::cli {

inline constexpr int kManifestSchemaVersion = 1;

struct ManifestCase {
  std::string id;
  std::filesystem::path measured;
  std::filesystem::path hud;
  Region region;
  std::string content_group;
};

/// Batch description. Relative paths are resolved against the manifest's
/// directory when loaded from a file.
struct CaseManifest {
  std::vector<ManifestCase> cases;
  std::filesystem::path output_dir;
  bool dump_maps = false;
  IttiParams params;
};

/// Applies the keys present in `overrides` on top of `base`. Unknown keys
/// and ill-typed values raise ValidationError.
IttiParams params_from_json(const nlohmann::json& overrides, IttiParams base = {});
nlohmann::json params_to_json(const IttiParams& params);

/// 64-bit FNV-1a of the canonical JSON form, as 16 hex digits.
std::string params_fingerprint(const IttiParams& params);

/// Structural checks only: schema version, field types, unique ids,
/// nonnegative regions.
CaseManifest parse_manifest(const nlohmann::json& doc, const std::filesystem::path& base_dir);

/// Reads and parses a manifest file. Malformed JSON is a ValidationError,
/// an unreadable file an IoError.
CaseManifest load_manifest(const std::filesystem::path& path);

struct LoadedCase {
  ManifestCase spec;
  RgbImage measured;
  RgbImage hud;
};

/// Loads every referenced image and checks each region against its measured
/// image. Any failure is reported as a ValidationError naming the case id,
/// before any case is evaluated.
std::vector<LoadedCase> load_cases(const CaseManifest& manifest);

}  // namespace hudsal::cli
