#include "cito/penalty_loop.hpp"

#include <cmath>

namespace cito {

void PenaltyConfig::validate() const {
  if (!(omega1 > 0) || !(d_omega_s > 0))
    throw ValidationError("penalty seed and step must be positive");
  if (!(eps_p > 0) || !(eps_th > 0) || !(eps_k > 0) || !(k_threshold > 0))
    throw ValidationError("penalty tolerances must be positive");
  if (j_max < 1) throw ValidationError("j_max must be >= 1");
  if (!(omega_min >= 0)) throw ValidationError("omega_min must be >= 0");
}

std::pair<double, double> stiffness_stats(const ControlTraj& U) {
  double kmax = 0, sum = 0;
  long count = 0;
  for (const Control& u : U) {
    for (Eigen::Index j = 0; j < u.k.size(); ++j) {
      kmax = std::max(kmax, u.k[j]);
      sum += u.k[j];
      ++count;
    }
  }
  return {kmax, count > 0 ? sum / static_cast<double>(count) : 0.0};
}

PenaltyResult penalty_loop(const Problem& p, const State& x1,
                           const ControlTraj& U_init,
                           const PenaltyConfig& cfg,
                           const ScvxConfig& scvx_cfg,
                           const PostProcessConfig& pp_cfg, int workers) {
  cfg.validate();
  scvx_cfg.validate();
  pp_cfg.validate(p.model.n_actuated());

  PenaltyResult res;
  res.pe0 = pose_error(p, x1).first;
  if (!(res.pe0 > 0))
    throw ValidationError("goal coincides with the initial pose (pe0 = 0)");

  ControlTraj U_carry = U_init;
  double omega = cfg.omega1;
  double d_omega_prev = cfg.d_omega_s;  // Delta-omega^0
  double k_avg_prev = kInf;
  int n_success = 0;

  // Stats of the carried solution drive termination; they update only
  // when an iterate is accepted.
  double carried_ratio = kInf, carried_kmax = kInf;

  for (int j = 1; j <= cfg.j_max; ++j) {
    ScvxResult sol = scvx(p, x1, U_carry, omega, scvx_cfg, workers);
    res.scvx_reports.push_back(sol.report);

    const auto [k_max, k_avg] = stiffness_stats(sol.U);
    const auto [pe, th_e] = pose_error(p, sol.X.back());
    const double ratio = pe / res.pe0;
    const bool pose_ok =
        ratio <= cfg.eps_p &&
        (!p.goal.constrain_orientation || th_e <= cfg.eps_th);

    PenaltyIterate it;
    it.j = j;
    it.omega = omega;
    it.k_max = k_max;
    it.k_avg = k_avg;
    it.pe = pe;
    it.pe_ratio = ratio;
    it.theta_e = th_e;

    std::vector<HcsStep> hcs_log;
    if (pose_ok) {
      it.d_omega = cfg.d_omega_s;
      if (k_avg >= k_avg_prev) {
        it.sol_accepted = false;  // stiffness grew: keep the carried U
      } else {
        it.sol_accepted = true;
        k_avg_prev = k_avg;
      }
    } else {
      it.d_omega = -d_omega_prev / 2;
      it.sol_accepted = false;
    }

    if (it.sol_accepted) {
      ++n_success;
      StateTraj X_acc = std::move(sol.X);
      ControlTraj U_acc = std::move(sol.U);
      double acc_ratio = ratio, acc_kmax = k_max;
      if (k_avg < cfg.k_threshold) {
        try {
          PostProcessResult pc =
              pulling_controller(p, x1, U_acc, pp_cfg, n_success);
          PostProcessResult hcs =
              hill_climbing_search(p, x1, pc.U, pp_cfg);
          hcs_log = std::move(hcs.hcs_log);
          const double pe_pp = pose_error(p, hcs.X.back()).first;
          if (pe_pp / res.pe0 <= cfg.eps_p) {
            it.pp_accepted = true;
            X_acc = std::move(hcs.X);
            U_acc = std::move(hcs.U);
            acc_ratio = pe_pp / res.pe0;
            acc_kmax = stiffness_stats(U_acc).first;
          }
        } catch (const RolloutError&) {
          it.pp_accepted = false;  // keep the un-post-processed iterate
        }
      }
      U_carry = U_acc;
      res.X = std::move(X_acc);
      res.U = std::move(U_acc);
      carried_ratio = acc_ratio;
      carried_kmax = acc_kmax;
    }

    res.history.push_back(it);
    res.hcs_logs.push_back(std::move(hcs_log));

    omega = std::max(omega + it.d_omega, cfg.omega_min);
    d_omega_prev = it.d_omega;

    if (carried_kmax <= cfg.eps_k && carried_ratio <= cfg.eps_p) {
      res.converged = true;
      break;
    }
  }

  if (res.U.empty()) {
    // Nothing was ever accepted: fall back to the seed rollout.
    res.U = U_carry;
    res.X = rollout_trajectory(p, x1, res.U);
  }
  const auto [fk_max, fk_avg] = stiffness_stats(res.U);
  const auto [fpe, fth] = pose_error(p, res.X.back());
  res.final_k_max = fk_max;
  res.final_k_avg = fk_avg;
  res.final_pe = fpe;
  res.final_pe_ratio = fpe / res.pe0;
  res.final_theta_e = fth;
  return res;
}

}  // namespace cito
