#include "cito/postprocess.hpp"

#include <cmath>

namespace cito {

void PostProcessConfig::validate(int n_a) const {
  if (Kv.size() != 0 && (Kv.rows() != n_a || Kv.cols() != n_a))
    throw ValidationError("Kv dimension mismatch");
  if (Kv.size() == 0 && !(kv >= 0))
    throw ValidationError("kv must be non-negative");
  if (!(d0 >= 0)) throw ValidationError("d0 must be non-negative");
  if (!(hcs_step > 0) || !(hcs_step_tol > 0) || !(hcs_cost_tol > 0))
    throw ValidationError("HCS step and tolerances must be positive");
}

Vec2 offset_target(const EnvCandidate& env, const Kinematics& kin,
                   double d_offset) {
  if (d_offset < 0) throw ValidationError("offset must be non-negative");
  const Pose2& pose = kin.pose[static_cast<size_t>(env.body)];
  const Vec2 mid = pose.apply(0.5 * (env.p0 + env.p1));
  return mid + d_offset * pose.rotate(env.normal);
}

PostProcessResult pulling_controller(const Problem& p, const State& x1,
                                     const ControlTraj& U,
                                     const PostProcessConfig& cfg,
                                     int n_success) {
  const RobotModel& m = p.model;
  const int n_a = m.n_actuated();
  cfg.validate(n_a);
  const Mat Kv = cfg.Kv.size() != 0 ? cfg.Kv
                                    : Mat(cfg.kv * Mat::Identity(n_a, n_a));
  const double d_off = cfg.d0 / std::max(1, n_success);

  const StateTraj plan = rollout_trajectory(p, x1, U);

  PostProcessResult out;
  out.U = U;
  out.X.reserve(U.size() + 1);
  out.X.push_back(x1);
  State x = x1;
  for (size_t i = 0; i < U.size(); ++i) {
    const Kinematics kin = kinematics(m, x.q);
    Vec tau_pull = Vec::Zero(n_a);
    for (const ContactPair& pair : p.pairs) {
      const double k = U[i].k[pair.index];
      if (k <= 0) continue;
      const Vec2 target = offset_target(pair.env, kin, d_off);
      const Vec2 center = world_point(kin, pair.robot.body, pair.robot.anchor);
      const Vec2 f = k * (target - center);
      const Mat J = point_jacobian(kin, pair.robot.body, center);
      tau_pull += J.leftCols(n_a).transpose() * f;
    }
    // Velocity deviation from the plan, damped through the actuated
    // block of the inertia matrix.
    const Vec qd_err =
        plan[i].qd.head(n_a) - x.qd.head(n_a);
    const Mat Maa = mass_matrix(m, x.q).topLeftCorner(n_a, n_a);
    const Vec tau_damp = Kv * (Maa * qd_err);

    Vec tau = out.U[i].tau + tau_pull + tau_damp;
    for (int j = 0; j < n_a; ++j)
      tau[j] = std::clamp(tau[j], m.force_lo()[j], m.force_hi()[j]);
    out.U[i].tau = tau;
    x = rollout_step(p, x, out.U[i], static_cast<int>(i));
    out.X.push_back(x);
  }
  return out;
}

PostProcessResult hill_climbing_search(const Problem& p, const State& x1,
                                       const ControlTraj& U,
                                       const PostProcessConfig& cfg) {
  cfg.validate(p.model.n_actuated());
  PostProcessResult out;
  out.U = U;
  out.X = rollout_trajectory(p, x1, U);

  double pe = pose_error(p, out.X.back()).first;
  double cf = final_cost(p, out.X.back());
  double step = cfg.hcs_step;
  double prev_dcf = -1;

  for (int iter = 1;; ++iter) {
    bool any_nonzero = false;
    ControlTraj cand = out.U;
    for (Control& u : cand)
      for (Eigen::Index j = 0; j < u.k.size(); ++j)
        if (u.k[j] > 0) {
          u.k[j] = std::max(u.k[j] - step, 0.0);
          any_nonzero = true;
        }
    if (!any_nonzero) break;

    const StateTraj X_cand = rollout_trajectory(p, x1, cand);
    const double pe_cand = pose_error(p, X_cand.back()).first;
    const double cf_cand = final_cost(p, X_cand.back());
    const bool accepted = pe_cand < pe;
    out.hcs_log.push_back({iter, step, cf_cand, pe_cand, accepted});
    if (!accepted) break;

    const double dcf = std::abs(cf_cand - cf);
    out.U = std::move(cand);
    out.X = X_cand;
    pe = pe_cand;
    cf = cf_cand;
    if (dcf < cfg.hcs_cost_tol) break;
    if (prev_dcf > 0) {
      const double next = step * dcf / prev_dcf;
      if (next < cfg.hcs_step_tol) break;
      step = std::min(next, cfg.hcs_step_max);
    }
    prev_dcf = dcf;
  }
  return out;
}

}  // namespace cito
