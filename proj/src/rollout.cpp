#include "cito/rollout.hpp"

#include <cmath>

namespace cito {

int Problem::substeps() const {
  const double ratio = dt / substep_h;
  const int n = static_cast<int>(std::lround(ratio));
  if (n < 1 || std::abs(ratio - n) > 1e-9)
    throw ValidationError("control period must be an integer number of substeps");
  return n;
}

Vec Problem::flat(const Control& u) const {
  Vec v(nu());
  v.head(model.n_actuated()) = u.tau;
  v.tail(n_pairs()) = u.k;
  return v;
}

Control Problem::unflat(const Vec& u) const {
  Control c;
  c.tau = u.head(model.n_actuated());
  c.k = u.tail(n_pairs());
  return c;
}

Vec Problem::state_vec(const State& s) const {
  Vec x(nx());
  x.head(model.ndof()) = s.q;
  x.tail(model.ndof()) = s.qd;
  return x;
}

State Problem::state_from_vec(const Vec& x) const {
  State s;
  s.q = x.head(model.ndof());
  s.qd = x.tail(model.ndof());
  return s;
}

Vec Problem::control_lo() const {
  Vec v(nu());
  v.head(model.n_actuated()) = model.force_lo();
  v.tail(n_pairs()).setZero();
  return v;
}

Vec Problem::control_hi() const {
  Vec v(nu());
  v.head(model.n_actuated()) = model.force_hi();
  v.tail(n_pairs()).setConstant(k_upper);
  return v;
}

Vec Problem::state_lo() const {
  Vec v(nx());
  v.head(model.ndof()) = model.pos_lo();
  v.tail(model.ndof()) = model.vel_lo();
  return v;
}

Vec Problem::state_hi() const {
  Vec v(nx());
  v.head(model.ndof()) = model.pos_hi();
  v.tail(model.ndof()) = model.vel_hi();
  return v;
}

PoseMap Problem::pose_map() const {
  PoseMap pm;
  pm.P = Mat::Zero(3, model.ndof());
  pm.offset.setZero();
  const int tb = goal.target_body;
  const BodySpec& body = model.body(tb);
  if (body.attach == BodySpec::Free) {
    const auto slots = model.free_dofs(tb);
    const double v0[3] = {body.pose0.p.x(), body.pose0.p.y(), body.pose0.th};
    for (int c = 0; c < 3; ++c) {
      if (slots[static_cast<size_t>(c)] >= 0)
        pm.P(c, slots[static_cast<size_t>(c)]) = 1;
      else
        pm.offset[c] = v0[c];
    }
    return pm;
  }
  if (body.attach == BodySpec::Static)
    throw ModelError("goal target must be a dynamic body");

  // Walk the chain from the root; the pose stays affine in q as long as
  // no prismatic joint or anchor offset appears after a rotation.
  std::vector<int> chain;
  for (int b = tb; b >= 0; b = model.body(b).parent) {
    chain.push_back(b);
    if (model.body(b).attach != BodySpec::Jointed)
      throw ModelError("goal target chain must be world-rooted");
    if (model.body(b).parent < 0) break;
  }
  std::reverse(chain.begin(), chain.end());
  double angle = 0;
  bool rotated = false;
  Vec2 pos(0, 0);
  for (int b : chain) {
    const JointSpec& j = model.body(b).joint;
    const int jd = model.joint_dof(b);
    if (rotated && j.origin.norm() > 0)
      throw ModelError("target pose is not linear in the configuration");
    Pose2 fixed;
    fixed.th = angle;
    pos += fixed.rotate(j.origin);
    angle += j.frame_angle;
    if (j.kind == JointSpec::Prismatic) {
      if (rotated)
        throw ModelError("target pose is not linear in the configuration");
      Pose2 jf;
      jf.th = angle;
      const Vec2 axis_w = jf.rotate(j.axis);
      pm.P(0, jd) = axis_w.x();
      pm.P(1, jd) = axis_w.y();
    } else {
      rotated = true;
      pm.P(2, jd) += 1;
    }
  }
  pm.offset = Vec3(pos.x(), pos.y(), angle);
  return pm;
}

Pose2 Problem::target_pose(const State& s) const {
  const PoseMap pm = pose_map();
  const Vec3 v = pm.P * s.q + pm.offset;
  Pose2 p;
  p.p = Vec2(v[0], v[1]);
  p.th = v[2];
  return p;
}

ControlTraj Problem::initial_guess() const {
  Control u;
  u.tau = Vec::Zero(model.n_actuated());
  u.k = Vec::Constant(n_pairs(), k_init);
  for (int i = 0; i < model.n_actuated(); ++i)
    u.tau[i] = std::clamp(0.0, model.force_lo()[i], model.force_hi()[i]);
  return ControlTraj(static_cast<size_t>(N), u);
}

void Problem::validate() const {
  if (N < 0) throw ValidationError("horizon must be non-negative");
  substeps();
  if (goal.target_body < 0 || goal.target_body >= model.num_bodies())
    throw ValidationError("goal target body out of range");
  if (goal.w1 < 0 || goal.w2 < 0)
    throw ValidationError("goal weights must be non-negative");
  if (!(alpha > 0)) throw ValidationError("alpha must be positive");
  if (!(k_upper >= 0) || k_init < 0 || k_init > k_upper)
    throw ValidationError("stiffness bounds are inconsistent");
  model.check_state(x1.q, x1.qd);
  pose_map();
}

Vec decompose_control(const Problem& p, const State& s, const Vec& tau_u) {
  const RobotModel& m = p.model;
  if (tau_u.size() != m.n_actuated())
    throw ModelError("tau_u dimension mismatch");
  const Vec c = bias_forces(m, s.q, s.qd);
  const Kinematics kin = kinematics(m, s.q);
  const Vec qc =
      contact_generalized_force(m, kin, physical_contacts(m, s.q, s.qd));
  Vec tau = tau_u + c.head(m.n_actuated()) - qc.head(m.n_actuated());
  for (int i = 0; i < m.n_actuated(); ++i)
    tau[i] = std::clamp(tau[i], m.force_lo()[i], m.force_hi()[i]);
  return tau;
}

State rollout_step(const Problem& p, const State& s, const Control& u,
                   int step_index) {
  const RobotModel& m = p.model;
  if (u.k.size() != p.n_pairs()) throw ModelError("stiffness dimension mismatch");
  const Vec tau = decompose_control(p, s, u.tau);
  State x = s;
  const int nsub = p.substeps();
  for (int i = 0; i < nsub; ++i) {
    const Kinematics kin = kinematics(m, x.q);
    const auto wrench = net_virtual_wrench(m, p.pairs, u.k, p.alpha, kin);
    x = substep(m, x, tau, wrench, p.substep_h);
    if (!x.q.allFinite() || !x.qd.allFinite())
      throw RolloutError("state diverged during integration", step_index);
  }
  return x;
}

StateTraj rollout_trajectory(const Problem& p, const State& x1,
                             const ControlTraj& U) {
  StateTraj X;
  X.reserve(U.size() + 1);
  X.push_back(x1);
  for (size_t i = 0; i < U.size(); ++i)
    X.push_back(rollout_step(p, X.back(), U[i], static_cast<int>(i)));
  return X;
}

std::pair<double, double> pose_error(const Problem& p, const State& xf) {
  const Pose2 pose = p.target_pose(xf);
  const double pe = (pose.p - p.goal.pos).norm();
  const double th_e = std::abs(wrap_angle(pose.th - p.goal.th));
  return {pe, th_e};
}

double final_cost(const Problem& p, const State& xf) {
  const auto [pe, th_e] = pose_error(p, xf);
  return p.goal.w1 * pe * pe + p.goal.w2 * th_e * th_e;
}

double integrated_cost(const Problem& p, const ControlTraj& U, double omega) {
  if (omega < 0) throw ValidationError("omega must be non-negative");
  double sum = 0;
  for (const Control& u : U) sum += u.k.cwiseAbs().sum();
  (void)p;
  return omega * sum;
}

double total_cost(const Problem& p, const StateTraj& X, const ControlTraj& U,
                  double omega) {
  return final_cost(p, X.back()) + integrated_cost(p, U, omega);
}

}  // namespace cito
