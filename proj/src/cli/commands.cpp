#include "hudsal/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include "hudsal/cli/manifest.hpp"
#include "hudsal/cli/report.hpp"
#include "hudsal/compositor.hpp"
#include "hudsal/interference.hpp"

namespace hudsal::cli {

namespace fs = std::filesystem;

int resolve_jobs(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("HUDSAL_JOBS"); env != nullptr && *env != '\0') {
    int value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end || value < 1) {
      throw ValidationError("HUDSAL_JOBS must be a positive integer (got '" + std::string(env) +
                            "')");
    }
    return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs task(i) for i in [0, count) on up to `jobs` threads. The first failure
// in index order is rethrown after all workers finish.
void run_parallel(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(jobs));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

IttiParams load_params(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw IoError("cannot open params file " + path);
  try {
    return params_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("--params: " + path + " is not valid JSON: " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("--params: ") + e.what());
  }
}

Region region_flag(const std::string& text) {
  try {
    return parse_region(text);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("--region: ") + e.what());
  }
}

void check_region_flag(const Region& region, const RgbImage& img) {
  try {
    validate_region(region, img.width(), img.height());
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("--region: ") + e.what());
  }
}

void check_gain_flag(double gain) {
  if (!(gain > 0.0) || gain > 4.0) {
    throw ValidationError("--gain: must be in (0, 4] (got " + std::to_string(gain) + ")");
  }
}

void write_reports(const fs::path& dir, std::span<const CaseReport> reports,
                   const RunInfo& info) {
  fs::create_directories(dir);
  const auto rankings = rank_within_groups(reports);
  write_text(dir / "report.json", report_json(reports, rankings, info).dump(2) + "\n");
  write_text(dir / "report.csv", report_csv(reports));
  write_text(dir / "rankings.csv", rankings_csv(rankings));
}

CaseReport make_report(const std::string& id, const std::string& group, const Region& region,
                       const InterferenceResult& result, const IttiParams& params) {
  CaseReport r;
  r.id = id;
  r.p = result.p;
  r.m = result.m;
  r.region = region;
  r.content_group = group;
  r.fingerprint = params_fingerprint(params);
  return r;
}

struct EvaluateArgs {
  std::string measured, hud, region, out, format = "json", id = "case", group = "default", params;
  bool dump = false;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const Region region = region_flag(a.region);
  const IttiParams params = load_params(a.params);
  const RgbImage measured = load_png(a.measured);
  const RgbImage hud = load_png(a.hud);
  check_region_flag(region, measured);

  const IttiBackend backend(params);
  const InterferenceResult result = evaluate(measured, hud, region, backend);
  CaseReport report = make_report(a.id, a.group, region, result, params);
  const fs::path dir = a.out;
  fs::create_directories(dir);
  if (a.dump) report.maps = dump_maps(result, dir, dir);

  const CaseReport reports[] = {report};
  if (a.format == "csv") {
    write_text(dir / "report.csv", report_csv(reports));
  } else {
    const auto rankings = rank_within_groups(reports);
    write_text(dir / "report.json",
               report_json(reports, rankings, {backend.name(), params, std::nullopt}).dump(2) +
                   "\n");
  }
  out << a.id << ": p=" << display3(result.p) << " m=" << display3(result.m) << "\n";
  return kExitOk;
}

int cmd_batch(const std::string& manifest_path, int jobs_flag, std::ostream& out,
              std::ostream& err) {
  const CaseManifest manifest = load_manifest(manifest_path);
  const int jobs = resolve_jobs(jobs_flag);
  if (manifest.cases.empty()) err << "warning: manifest " << manifest_path << " has no cases\n";
  const auto reports = run_batch(manifest, IttiBackend(manifest.params), jobs);
  for (const CaseReport& r : reports) {
    out << r.id << " [" << r.content_group << "]: p=" << display3(r.p) << " m=" << display3(r.m)
        << "\n";
  }
  return kExitOk;
}

int cmd_saliency(const std::string& input, const std::string& output, const std::string& params_path,
                 std::ostream& out) {
  const IttiParams params = load_params(params_path);
  const RgbImage img = load_png(input);
  const GrayMap map = run_backend(IttiBackend(params), img);
  save_gray_png(map, output);
  out << "wrote " << output << "\n";
  return kExitOk;
}

struct CompositeArgs {
  std::string background, hud, region, out;
  double gain = 1.0;
};

int cmd_composite(const CompositeArgs& a, std::ostream& out) {
  check_gain_flag(a.gain);
  const Region region = region_flag(a.region);
  RgbImage background = load_png(a.background);
  check_region_flag(region, background);
  const RgbImage result = composite({std::move(background), load_png(a.hud), region, a.gain});
  save_png(result, a.out);
  out << "wrote " << a.out << "\n";
  return kExitOk;
}

struct SweepArgs {
  std::string background, glyph, region, out, colors = "FFFFFF,FF0000,00FF00,0000FF", params;
  double gain = 1.0;
  bool dump = false;
};

std::vector<Rgb> colors_flag(const std::string& text) {
  std::vector<Rgb> colors;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    try {
      colors.push_back(parse_hex_color(text.substr(pos, end - pos)));
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("--colors: ") + e.what());
    }
    pos = end + 1;
  }
  return colors;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  check_gain_flag(a.gain);
  const Region region = region_flag(a.region);
  const std::vector<Rgb> colors = colors_flag(a.colors);
  const IttiParams params = load_params(a.params);
  const RgbImage background = load_png(a.background);
  const RgbImage glyph = load_png(a.glyph);
  check_region_flag(region, background);

  const IttiBackend backend(params);
  const auto cases = color_sweep(background, glyph, region, colors, backend, a.gain);
  const fs::path dir = a.out;
  fs::create_directories(dir);
  std::vector<CaseReport> reports;
  for (const SweepCase& c : cases) {
    const std::string id = format_hex_color(c.color);
    save_png(c.measured, dir / ("composite_" + id + ".png"));
    CaseReport r = make_report(id, "sweep", region, c.result, params);
    if (a.dump) r.maps = dump_maps(c.result, dir / id, dir);
    reports.push_back(std::move(r));
  }
  write_reports(dir, reports, {backend.name(), params, a.gain});
  for (const CaseReport& r : reports) {
    out << r.id << ": p=" << display3(r.p) << " m=" << display3(r.m) << "\n";
  }
  return kExitOk;
}

}  // namespace

std::vector<CaseReport> run_batch(const CaseManifest& manifest, const SaliencyBackend& backend,
                                  int jobs) {
  const std::vector<LoadedCase> cases = load_cases(manifest);
  std::vector<CaseReport> reports(cases.size());
  run_parallel(cases.size(), jobs, [&](std::size_t i) {
    const LoadedCase& c = cases[i];
    const InterferenceResult result = evaluate(c.measured, c.hud, c.spec.region, backend);
    reports[i] = make_report(c.spec.id, c.spec.content_group, c.spec.region, result,
                             manifest.params);
    if (manifest.dump_maps) {
      reports[i].maps = dump_maps(result, manifest.output_dir / c.spec.id, manifest.output_dir);
    }
  });
  write_reports(manifest.output_dir, reports, {backend.name(), manifest.params, std::nullopt});
  return reports;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Saliency-based interference analysis between HUD content and the scene behind it",
               "hudsal"};
  app.require_subcommand(1);

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate one measured/HUD image pair");
  evaluate_cmd->add_option("--measured", ev.measured, "Measured image (PNG)")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--hud", ev.hud, "HUD source image (PNG)")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--region", ev.region, "HUD region in the measured image, X,Y,W,H")
      ->required();
  evaluate_cmd->add_option("--out", ev.out, "Output directory")->required();
  evaluate_cmd->add_flag("--dump-maps", ev.dump, "Write saliency and difference maps as PNG");
  evaluate_cmd->add_option("--format", ev.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  evaluate_cmd->add_option("--id", ev.id, "Case id used in the report");
  evaluate_cmd->add_option("--content-group", ev.group, "Content group used in the report");
  evaluate_cmd->add_option("--params", ev.params, "JSON file of saliency parameter overrides")
      ->check(CLI::ExistingFile);

  std::string manifest;
  int jobs = 0;
  auto* batch_cmd = app.add_subcommand("batch", "Evaluate every case of a JSON manifest");
  batch_cmd->add_option("manifest", manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  batch_cmd->add_option("--jobs", jobs, "Parallel cases (default: HUDSAL_JOBS or CPU count)")
      ->check(CLI::PositiveNumber);

  std::string sal_in, sal_out, sal_params;
  auto* saliency_cmd = app.add_subcommand("saliency", "Compute and save a saliency map");
  saliency_cmd->add_option("--input", sal_in, "Input image (PNG)")
      ->required()
      ->check(CLI::ExistingFile);
  saliency_cmd->add_option("--out", sal_out, "Output grayscale PNG")->required();
  saliency_cmd->add_option("--params", sal_params, "JSON file of saliency parameter overrides")
      ->check(CLI::ExistingFile);

  CompositeArgs co;
  auto* composite_cmd = app.add_subcommand("composite", "Simulate a transparent HUD over a scene");
  composite_cmd->add_option("--background", co.background, "Scene image (PNG)")
      ->required()
      ->check(CLI::ExistingFile);
  composite_cmd->add_option("--hud", co.hud, "HUD image (PNG)")->required()->check(CLI::ExistingFile);
  composite_cmd->add_option("--region", co.region, "HUD placement, X,Y,W,H")->required();
  composite_cmd->add_option("--out", co.out, "Output PNG")->required();
  composite_cmd->add_option("--gain", co.gain, "Projector brightness scale in (0, 4]");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate one glyph rendered in several colors");
  sweep_cmd->add_option("--background", sw.background, "Scene image (PNG)")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--hud", sw.glyph, "Glyph stencil (PNG, nonzero = glyph)")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--region", sw.region, "HUD placement, X,Y,W,H")->required();
  sweep_cmd->add_option("--out", sw.out, "Output directory")->required();
  sweep_cmd->add_option("--colors", sw.colors, "Comma-separated RRGGBB colors");
  sweep_cmd->add_option("--gain", sw.gain, "Projector brightness scale in (0, 4]");
  sweep_cmd->add_flag("--dump-maps", sw.dump, "Write saliency and difference maps as PNG");
  sweep_cmd->add_option("--params", sw.params, "JSON file of saliency parameter overrides")
      ->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (*evaluate_cmd) return cmd_evaluate(ev, out);
    if (*batch_cmd) return cmd_batch(manifest, jobs, out, err);
    if (*saliency_cmd) return cmd_saliency(sal_in, sal_out, sal_params, out);
    if (*composite_cmd) return cmd_composite(co, out);
    if (*sweep_cmd) return cmd_sweep(sw, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace hudsal::cli
