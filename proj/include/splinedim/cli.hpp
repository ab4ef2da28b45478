#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "splinedim/report.hpp"

namespace splinedim {

// Exit codes of the command-line surface.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsageOrInput = 1;   // usage, parse or validation failure
inline constexpr int kExitInternal = 2;       // a module invariant failed at runtime

// One resolved invocation. Fixed config and seed give byte-identical output.
struct RunConfig {
  std::string command;       // validate | stats | bounds | oracle | certify | refine | order
  std::string mesh_path;
  int r = 0;
  int k_min = 0;             // commands with a degree need r <= k_min <= k_max
  int k_max = 0;
  std::string order = "exhaustive";  // bounds: exhaustive | greedy | ordering file
  std::string strategy = "greedy";   // order: exhaustive | greedy | schumaker-search
  std::string scheme;                // refine: ps6 | ps12
  std::string ordering_path;         // certify: optional ordering file
  bool oracle = false;
  OutputFormat format = OutputFormat::Table;
  std::uint64_t seed = 0;
  std::string out_path;              // empty = stream to `out`
};

// Executes one command; reports stream to `out` (or config.out_path),
// diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (program name excluded) into a RunConfig and
// runs it. The whole surface is testable in-process through these two.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace splinedim
