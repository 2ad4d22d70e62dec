#pragma once

#include "cito/qp.hpp"

namespace cito {

struct ScvxConfig {
  double r0 = 10;
  double rho0 = 0.0;
  double rho1 = 0.25;
  double rho2 = 0.7;
  double shrink = 2.0;
  double grow = 1.5;
  double r_min = 1e-4;
  double r_max = 1e3;
  int max_successions = 50;
  double dL_tol = 1e-4;

  void validate() const;
};

struct ScvxRecord {
  int succession = 0;
  double radius = 0;
  double L_predicted = 0;
  double C_nominal = 0;
  double C_candidate = 0;
  double rho = 0;
  bool accepted = false;
};

struct ScvxReport {
  std::vector<ScvxRecord> records;
  enum Termination { Converged, MaxSuccessions } termination = MaxSuccessions;
  int successions = 0;
};

struct ScvxResult {
  StateTraj X;
  ControlTraj U;
  double cost = 0;
  ScvxReport report;
};

// (accept, new radius) for a fidelity ratio rho.
std::pair<bool, double> trust_region_update(double rho, double r,
                                            const ScvxConfig& cfg);

// Modified successive convexification: only the control change is
// applied and the states are recomputed by rolling out the dynamics.
ScvxResult scvx(const Problem& p, const State& x1, const ControlTraj& U_init,
                double omega, const ScvxConfig& cfg, int workers = 1);

}  // namespace cito
