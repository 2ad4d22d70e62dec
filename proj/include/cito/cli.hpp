#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cito/scenario.hpp"

namespace cito {

struct PlanOptions {
  std::string scenario;          // builtin name or file path
  Vec2 goal_offset{0, 0};        // relative to the target's initial pose
  double goal_dth = 0;
  std::optional<double> mu;
  std::string out_dir;           // default runs/<scenario name>
  std::vector<std::string> overrides;  // dotted.path=json_value
  int workers = 0;               // 0: CITO_WORKERS or hardware default
};

// Exit codes: 0 converged, 1 error, 2 j_max reached without convergence.
int cmd_plan(const PlanOptions& opts);

// 0 match, 1 error or hash mismatch, 3 trajectory mismatch.
int cmd_replay(const std::string& run_dir);

// Per-run and aggregate summary rows on stdout. 1 on missing artifacts.
int cmd_report(const std::vector<std::string>& run_dirs);

// Full CLI entry point (plan/replay/report subcommands).
int run_cli(int argc, char** argv);

}  // namespace cito
