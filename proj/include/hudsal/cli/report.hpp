#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hudsal/imagery.hpp"
#include "hudsal/interference.hpp"
#include "hudsal/saliency.hpp"

namespace hudsal::cli {

/// Exact CSV header of case reports.
inline constexpr const char* kCsvHeader = "id,p,m,region,content_group";

struct CaseReport {
  std::string id;
  double p = 0.0;
  double m = 0.0;
  Region region;
  std::string content_group;
  std::map<std::string, std::string> maps;  // artifact name -> path relative to the output dir
  std::string fingerprint;
};

struct RankEntry {
  std::string id;
  double m = 0.0;
  double p = 0.0;
};

/// Cases of one content group ordered by m, descending; ties keep input order.
struct Ranking {
  std::string content_group;
  std::vector<RankEntry> entries;
};

/// Ranks cases that all belong to the same content group. Indices of cases
/// with different content or backgrounds are not comparable, so mixed
/// groups raise ValidationError.
Ranking rank_group(std::span<const CaseReport> reports);

/// One ranking per content group, in order of first appearance.
std::vector<Ranking> rank_within_groups(std::span<const CaseReport> reports);

/// Fixed 3-decimal rendering used for display columns.
std::string display3(double value);

struct RunInfo {
  std::string backend;
  IttiParams params;
  std::optional<double> gain;
};

nlohmann::json report_json(std::span<const CaseReport> reports, std::span<const Ranking> rankings,
                           const RunInfo& info);
std::string report_csv(std::span<const CaseReport> reports);
std::string rankings_csv(std::span<const Ranking> rankings);

/// Writes m_s.png, m_s_hud.png, h_s.png, e_plus.png and e_minus.png into
/// `dir` and returns their names mapped to paths relative to `root`.
std::map<std::string, std::string> dump_maps(const InterferenceResult& result,
                                             const std::filesystem::path& dir,
                                             const std::filesystem::path& root);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hudsal::cli
