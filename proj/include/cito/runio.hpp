#pragma once

#include <cstdint>
#include <string>

#include "cito/scenario.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cito {

// %.17g, enough digits to round-trip a double exactly.
std::string fmt17(double v);

// FNV-1a, used to tie run.json to the scenario it embeds.
std::uint64_t content_hash(const std::string& text);

std::vector<std::string> dof_names(const RobotModel& m);

void write_trajectory_csv(const std::string& path, const Problem& p,
                          const StateTraj& X, const ControlTraj& U);
std::pair<StateTraj, ControlTraj> read_trajectory_csv(const std::string& path,
                                                      const Problem& p);

void write_penalty_history_csv(const std::string& path,
                               const std::vector<PenaltyIterate>& history);

// Run log: one row per SCVX succession and per HCS step, tagged by the
// penalty iteration they belong to.
void write_run_log_csv(const std::string& path,
                       const std::vector<ScvxReport>& scvx,
                       const std::vector<std::vector<HcsStep>>& hcs);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace cito
