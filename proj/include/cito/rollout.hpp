#pragma once

#include <utility>
#include <vector>

#include "cito/model.hpp"
#include "cito/vscm.hpp"

namespace cito {

// Control for one period: joint forces plus per-pair virtual stiffness.
struct Control {
  Vec tau;  // n_a
  Vec k;    // n_p, in [0, k_upper]
};

using ControlTraj = std::vector<Control>;
using StateTraj = std::vector<State>;

struct TaskGoal {
  int target_body = -1;
  Vec2 pos{0, 0};
  double th = 0;
  double w1 = 1e4;
  double w2 = 1;
  bool constrain_orientation = true;
};

// Affine map from the configuration to the target body pose:
// pose = P * q + offset. Exists for free targets and for actuated
// chains whose pose is linear in q (e.g. a holonomic x/y/theta stack).
struct PoseMap {
  Mat P;       // 3 x ndof
  Vec3 offset;
};

// A planning instance: model, contact pairs, horizon, goal and bounds.
struct Problem {
  RobotModel model;
  std::vector<ContactPair> pairs;
  double alpha = 10;
  double k_upper = 20;
  double k_init = 10;
  int N = 1;
  double dt = 0.1;
  double substep_h = 0.002;
  TaskGoal goal;
  State x1;

  int n_pairs() const { return static_cast<int>(pairs.size()); }
  int nx() const { return 2 * model.ndof(); }
  int nu() const { return model.n_actuated() + n_pairs(); }
  int substeps() const;

  Vec flat(const Control& u) const;
  Control unflat(const Vec& u) const;
  Vec state_vec(const State& s) const;
  State state_from_vec(const Vec& x) const;

  Vec control_lo() const;  // nu
  Vec control_hi() const;
  Vec state_lo() const;    // nx
  Vec state_hi() const;

  PoseMap pose_map() const;
  Pose2 target_pose(const State& s) const;

  // Trivial standing-still seed: tau = 0, k = k_init.
  ControlTraj initial_guess() const;

  void validate() const;
};

// tau = tau_u + c_tilde - (J_c^T lambda_c)_actuated, clamped to the
// joint force limits; estimates taken at the period-start state.
Vec decompose_control(const Problem& p, const State& s, const Vec& tau_u);

// One control period: holds the decomposed tau and the stiffness fixed,
// integrating dt/h substeps with the virtual wrenches recomputed from
// the instantaneous configuration.
State rollout_step(const Problem& p, const State& s, const Control& u,
                   int step_index = 0);

StateTraj rollout_trajectory(const Problem& p, const State& x1,
                             const ControlTraj& U);

std::pair<double, double> pose_error(const Problem& p, const State& xf);
double final_cost(const Problem& p, const State& xf);
double integrated_cost(const Problem& p, const ControlTraj& U, double omega);
double total_cost(const Problem& p, const StateTraj& X, const ControlTraj& U,
                  double omega);

}  // namespace cito
