#pragma once

#include "cpe/ensembles.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace cpe {

// One batch job: a command plus everything it needs. Built either from a
// JSON config, from command-line flags, or both (flags win).
struct JobConfig {
  std::string command;  // kernel | density | sample | transform | verify
  EnsembleSpec ensemble = make_haar();
  int n = 2;
  std::string out;  // CSV destination; empty means stdout
  std::uint64_t seed = 12345;
  int threads = 0;
  double tol = 1e-9;
  int grid = 256;
  long samples = 10000;
  int bins = 64;
  std::string config_json;  // original JSON, echoed into output headers
};

// Parse a JSON job description:
//   {"command": "kernel", "n": 3, "ensemble": {"kind": "jacobi",
//    "alpha": 1.0, "gamma": 0.3}, "grid": 256, "out": "k.csv", ...}
// Composite ensembles nest: {"kind": "product", "factors": [...]},
// {"kind": "inverse", "inner": {...}}, {"kind": "phase_shift",
// "phase": 0.7, "inner": {...}}, {"kind": "fixed_times",
// "angles": [...], "inner": {...}}.
JobConfig parse_config(const std::string& json_text);

EnsembleSpec ensemble_from_json(const std::string& json_text);

// Execute the job; returns a process exit code. All numeric output is
// CSV with 17 significant digits, preceded by '#' comment lines carrying
// the job description.
int run(const JobConfig& job, std::ostream& log);

}  // namespace cpe
