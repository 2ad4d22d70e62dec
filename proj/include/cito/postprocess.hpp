#pragma once

#include "cito/rollout.hpp"

namespace cito {

struct PostProcessConfig {
  double kv = 2.5;          // damping gain, K_v = kv * I unless Kv is set
  Mat Kv;                   // optional full n_a x n_a gain matrix
  double d0 = 0.05;         // m, initial pull-target offset
  double hcs_step = 0.1;    // N/m
  double hcs_step_tol = 1e-3;
  double hcs_cost_tol = 1e-2;
  double hcs_step_max = 20; // N/m cap on the adapted step

  void validate(int n_a) const;
};

struct HcsStep {
  int iter = 0;
  double step = 0;
  double final_cost = 0;
  double pe = 0;
  bool accepted = false;
};

struct PostProcessResult {
  StateTraj X;
  ControlTraj U;
  std::vector<HcsStep> hcs_log;
};

// Face midpoint displaced along the world outward normal.
Vec2 offset_target(const EnvCandidate& env, const Kinematics& kin,
                   double d_offset);

// Closed-loop re-rollout adding pulling forces toward the offset
// targets of stiffness-active pairs plus a mass-weighted damping term
// toward the planned joint velocities. Stiffness entries are untouched.
PostProcessResult pulling_controller(const Problem& p, const State& x1,
                                     const ControlTraj& U,
                                     const PostProcessConfig& cfg,
                                     int n_success);

// Greedy shrink of the nonzero stiffness entries while the nonlinear
// pose error decreases. Joint force entries are untouched.
PostProcessResult hill_climbing_search(const Problem& p, const State& x1,
                                       const ControlTraj& U,
                                       const PostProcessConfig& cfg);

}  // namespace cito
