#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hudsal/cli/manifest.hpp"
#include "hudsal/cli/report.hpp"

namespace hudsal::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitValidation = 2,
};

/// Entry point of the `hudsal` tool. `args` excludes the program name.
/// Subcommands: evaluate, batch, saliency, composite, sweep.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Validates every case (files, decoding, regions) before evaluating any,
/// evaluates on `jobs` threads and writes report.json, report.csv and
/// rankings.csv to the manifest's output directory. Reports are returned in
/// manifest order.
std::vector<CaseReport> run_batch(const CaseManifest& manifest, const SaliencyBackend& backend,
                                  int jobs);

/// Worker count: explicit flag, else HUDSAL_JOBS, else hardware threads.
int resolve_jobs(int flag_value);

}  // namespace hudsal::cli
