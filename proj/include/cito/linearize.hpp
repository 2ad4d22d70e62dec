#pragma once

#include "cito/rollout.hpp"

namespace cito {

// Central-difference Jacobians A_i = df/dx, B_i = df/du of the rollout
// map, evaluated along a nominal trajectory.
struct Linearization {
  std::vector<Mat> A;  // N of nx x nx
  std::vector<Mat> B;  // N of nx x nu
};

// eps is applied per entry; control columns at an active bound fall back
// to a one-sided difference. The default step is wide enough to average
// over the micro-chatter of the compliant contact integration.
std::pair<Mat, Mat> linearize_step(const Problem& p, const State& x,
                                   const Control& u, double eps = 1e-4);

// Deterministic regardless of worker count: every (step, column) task
// writes only its own slot.
Linearization linearize_trajectory(const Problem& p, const StateTraj& X,
                                   const ControlTraj& U, int workers = 1,
                                   double eps = 1e-4);

}  // namespace cito
