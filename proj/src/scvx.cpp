#include "cito/scvx.hpp"

#include <cmath>

namespace cito {

void ScvxConfig::validate() const {
  if (!(0 <= rho0 && rho0 < rho1 && rho1 < rho2 && rho2 < 1))
    throw ValidationError("need 0 <= rho0 < rho1 < rho2 < 1");
  if (!(shrink > 1) || !(grow > 1))
    throw ValidationError("shrink and grow factors must exceed 1");
  if (!(0 < r_min && r_min <= r0 && r0 <= r_max))
    throw ValidationError("need 0 < r_min <= r0 <= r_max");
  if (max_successions < 1) throw ValidationError("max_successions must be >= 1");
  if (!(dL_tol >= 0)) throw ValidationError("dL_tol must be non-negative");
}

std::pair<bool, double> trust_region_update(double rho, double r,
                                            const ScvxConfig& cfg) {
  if (rho < cfg.rho0 || !std::isfinite(rho))
    return {false, std::max(r / cfg.shrink, cfg.r_min)};
  if (rho >= cfg.rho2) return {true, std::min(r * cfg.grow, cfg.r_max)};
  return {true, r};
}

ScvxResult scvx(const Problem& p, const State& x1, const ControlTraj& U_init,
                double omega, const ScvxConfig& cfg, int workers) {
  cfg.validate();
  if (static_cast<int>(U_init.size()) != p.N)
    throw ValidationError("initial control trajectory length mismatch");
  const Vec ulo = p.control_lo(), uhi = p.control_hi();
  for (const Control& u : U_init) {
    const Vec v = p.flat(u);
    for (int j = 0; j < p.nu(); ++j)
      if (v[j] < ulo[j] - 1e-9 || v[j] > uhi[j] + 1e-9)
        throw ValidationError("initial controls violate bounds");
  }

  ScvxResult best;
  best.U = U_init;
  best.X = rollout_trajectory(p, x1, best.U);
  best.cost = total_cost(p, best.X, best.U, omega);

  ControlTraj U = best.U;
  StateTraj X = best.X;
  double C = best.cost;
  double r = cfg.r0;

  for (int s = 1; s <= cfg.max_successions; ++s) {
    best.report.successions = s;
    const Linearization lin = linearize_trajectory(p, X, U, workers);
    const ConvexSubproblem sp = build_subproblem(p, X, U, lin, omega, r);
    const QpSolution sol = solve_subproblem(sp);

    if (std::abs(C - sol.L) <= cfg.dL_tol) {
      best.report.termination = ScvxReport::Converged;
      break;
    }

    ControlTraj U_cand(U.size());
    for (size_t i = 0; i < U.size(); ++i) {
      Vec v = p.flat(U[i]) +
              sol.dU.segment(static_cast<int>(i) * p.nu(), p.nu());
      for (int j = 0; j < p.nu(); ++j) v[j] = std::clamp(v[j], ulo[j], uhi[j]);
      U_cand[i] = p.unflat(v);
    }
    const StateTraj X_cand = rollout_trajectory(p, x1, U_cand);
    const double C_cand = total_cost(p, X_cand, U_cand, omega);

    const double rho = (C - C_cand) / (C - sol.L);
    const auto [accepted, r_next] = trust_region_update(rho, r, cfg);
    best.report.records.push_back(
        {s, r, sol.L, C, C_cand, rho, accepted});
    r = r_next;
    if (accepted) {
      U = U_cand;
      X = X_cand;
      C = C_cand;
      if (C < best.cost) {
        best.cost = C;
        best.U = U;
        best.X = X;
      }
    }
  }
  return best;
}

}  // namespace cito
