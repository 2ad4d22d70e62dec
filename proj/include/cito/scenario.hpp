#pragma once

#include <optional>
#include <string>

#include "cito/penalty_loop.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cito {

// Serializable scenario description: model, contact candidates, horizon,
// task weights and solver configurations. See docs/scenario_schema.md.
struct Scenario {
  int schema_version = 1;
  std::string name;
  Vec2 gravity{0, 0};
  double friction_mu = 1.0;
  ContactParams contact;
  double alpha = 10, k_upper = 20, k_init = 10;
  int N = 1;
  double dt = 0.1;
  double sim_time = 0.1;
  double substep_h = 0.002;

  std::vector<BodySpec> bodies;
  std::vector<std::string> parent_names;  // per body, empty when none

  struct PairSpec {
    std::string robot_body;
    Vec2 anchor{0, 0};
    double radius = 0;
    std::string env_body;
    Vec2 p0{0, 0}, p1{0, 0};
    Vec2 normal{0, 0};
  };
  std::vector<PairSpec> pairs;

  std::string target_body;
  double w1 = 1e4, w2 = 1;
  bool constrain_orientation = true;

  ScvxConfig scvx;
  PenaltyConfig penalty;
  PostProcessConfig postprocess;

  // Resolves the runtime problem for a goal given as an offset from the
  // target body's initial pose.
  Problem to_problem(const Vec2& goal_offset, double goal_dth = 0,
                     std::optional<double> mu_override = {}) const;

  void validate() const;
};

Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

// One planning run per goal offset, sharing the scenario.
struct TaskVariant {
  Scenario scenario;
  Vec2 goal_offset{0, 0};
  double goal_dth = 0;
};
std::vector<TaskVariant> task_variants(const Scenario& s,
                                       const std::vector<Vec3>& goal_offsets,
                                       std::optional<double> mu_override = {});

}  // namespace cito
