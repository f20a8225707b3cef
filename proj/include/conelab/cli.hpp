#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace conelab::cli {

// Everything a run needs; identical configs (seed included) must reproduce
// byte-identical JSON reports.
struct RunConfig {
  std::string subcommand;
  std::string algebra_spec;
  std::string polytope;      // builtin name or path to a vertices file
  std::string element_json;  // spectral input
  std::string frames_json;   // transition input
  std::string check = "orthogonality";  // logic
  std::string level = "all";            // symmetry
  double beta = 0.0;                    // theorem2
  int samples = 200;
  std::uint64_t seed = 1;
  int defect_scan = 0;  // transition: sample count for the defect scan
  double tolerance = 1e-8;
  std::string format = "json";  // json | text
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0 verified, 1 refuted, 2 input error
  std::string rendered;  // report in the requested format
};

RunResult run(const RunConfig& config);

}  // namespace conelab::cli
