#include "hudsal/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "hudsal/cli/manifest.hpp"

namespace hudsal::cli {

using nlohmann::json;

Ranking rank_group(std::span<const CaseReport> reports) {
  Ranking out;
  if (reports.empty()) return out;
  out.content_group = reports.front().content_group;
  for (const CaseReport& r : reports) {
    if (r.content_group != out.content_group) {
      throw ValidationError("cannot rank case '" + r.id + "' (content_group '" + r.content_group +
                            "') against content_group '" + out.content_group + "'");
    }
    out.entries.push_back({r.id, r.m, r.p});
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const RankEntry& a, const RankEntry& b) { return a.m > b.m; });
  return out;
}

std::vector<Ranking> rank_within_groups(std::span<const CaseReport> reports) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<CaseReport>> groups;
  for (const CaseReport& r : reports) {
    auto [it, inserted] = groups.try_emplace(r.content_group);
    if (inserted) order.push_back(r.content_group);
    it->second.push_back(r);
  }
  std::vector<Ranking> out;
  for (const std::string& g : order) out.push_back(rank_group(groups.at(g)));
  return out;
}

std::string display3(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

namespace {

std::string full_precision(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json report_json(std::span<const CaseReport> reports, std::span<const Ranking> rankings,
                 const RunInfo& info) {
  json cases = json::array();
  for (const CaseReport& r : reports) {
    json c = {
        {"id", r.id},
        {"content_group", r.content_group},
        {"region", {{"x", r.region.x}, {"y", r.region.y}, {"w", r.region.w}, {"h", r.region.h}}},
        {"p", r.p},
        {"m", r.m},
        {"p_display", display3(r.p)},
        {"m_display", display3(r.m)},
        {"fingerprint", r.fingerprint},
    };
    if (!r.maps.empty()) c["maps"] = r.maps;
    cases.push_back(std::move(c));
  }
  json ranks = json::array();
  for (const Ranking& g : rankings) {
    json entries = json::array();
    int rank = 1;
    for (const RankEntry& e : g.entries) {
      entries.push_back({{"rank", rank++}, {"id", e.id}, {"m", e.m}, {"m_display", display3(e.m)},
                         {"p", e.p}, {"p_display", display3(e.p)}});
    }
    ranks.push_back({{"content_group", g.content_group}, {"order_by", "m"}, {"entries", entries}});
  }
  json doc = {
      {"schema_version", 1},
      {"backend",
       {{"name", info.backend},
        {"params", params_to_json(info.params)},
        {"fingerprint", params_fingerprint(info.params)}}},
      {"cases", cases},
      {"rankings", ranks},
  };
  if (info.gain) doc["gain"] = *info.gain;
  return doc;
}

std::string report_csv(std::span<const CaseReport> reports) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const CaseReport& r : reports) {
    out += csv_field(r.id) + "," + full_precision(r.p) + "," + full_precision(r.m) + "," +
           csv_field(format_region(r.region)) + "," + csv_field(r.content_group) + "\n";
  }
  return out;
}

std::string rankings_csv(std::span<const Ranking> rankings) {
  std::string out = "content_group,rank,id,m,p\n";
  for (const Ranking& g : rankings) {
    int rank = 1;
    for (const RankEntry& e : g.entries) {
      out += csv_field(g.content_group) + "," + std::to_string(rank++) + "," + csv_field(e.id) +
             "," + full_precision(e.m) + "," + full_precision(e.p) + "\n";
    }
  }
  return out;
}

std::map<std::string, std::string> dump_maps(const InterferenceResult& result,
                                             const std::filesystem::path& dir,
                                             const std::filesystem::path& root) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, const GrayMap*> items[] = {
      {"m_s", &result.measured_saliency}, {"m_s_hud", &result.region_saliency},
      {"h_s", &result.hud_saliency},      {"e_plus", &result.e_plus},
      {"e_minus", &result.e_minus},
  };
  std::map<std::string, std::string> out;
  for (const auto& [name, map] : items) {
    const auto path = dir / (std::string(name) + ".png");
    save_gray_png(*map, path);
    out[name] = std::filesystem::relative(path, root).generic_string();
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace hudsal::cli
