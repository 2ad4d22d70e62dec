#pragma once

#include "cito/postprocess.hpp"
#include "cito/scvx.hpp"

namespace cito {

struct PenaltyConfig {
  double omega1 = 0.1;      // initial penalty
  double d_omega_s = 1.5;   // step size on success
  double eps_p = 0.30;      // normalized position tolerance
  double eps_th = 1.0;      // rad
  double eps_k = 0.1;       // N/m, max-stiffness tolerance
  double k_threshold = 2.0; // N/m, post-process gate on k_avg
  int j_max = 20;
  double omega_min = 1e-3;

  void validate() const;
};

struct PenaltyIterate {
  int j = 0;
  double omega = 0;
  double d_omega = 0;
  double k_max = 0;
  double k_avg = 0;
  double pe = 0;
  double pe_ratio = 0;
  double theta_e = 0;
  bool sol_accepted = false;
  bool pp_accepted = false;
};

struct PenaltyResult {
  StateTraj X;
  ControlTraj U;
  std::vector<PenaltyIterate> history;
  bool converged = false;
  double pe0 = 0;
  double final_pe = 0;
  double final_pe_ratio = 0;
  double final_theta_e = 0;
  double final_k_max = 0;
  double final_k_avg = 0;
  std::vector<ScvxReport> scvx_reports;          // one per iteration
  std::vector<std::vector<HcsStep>> hcs_logs;    // one per iteration
};

// (max, mean) over all N * n_p stiffness entries.
std::pair<double, double> stiffness_stats(const ControlTraj& U);

// Automatic penalty adjustment with accept/reject logic and the pulling
// controller + hill-climbing post-process when the average stiffness is
// below the gate.
PenaltyResult penalty_loop(const Problem& p, const State& x1,
                           const ControlTraj& U_init,
                           const PenaltyConfig& cfg,
                           const ScvxConfig& scvx_cfg = {},
                           const PostProcessConfig& pp_cfg = {},
                           int workers = 1);

}  // namespace cito
