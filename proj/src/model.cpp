#include "cito/model.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

namespace cito {

namespace {

bool finite(const Vec& v) { return v.allFinite(); }

// Plucker spatial inertia about the world origin for a body with world
// COM position c, mass m and COM inertia iz. Coordinates (omega, ux, uy).
Eigen::Matrix3d plucker_inertia(double m, double iz, const Vec2& c) {
  Eigen::Matrix3d I;
  I << iz + m * c.squaredNorm(), -m * c.y(), m * c.x(),
       -m * c.y(), m, 0,
       m * c.x(), 0, m;
  return I;
}

// d/dt of the above given the COM velocity cd.
Eigen::Matrix3d plucker_inertia_dot(double m, const Vec2& c, const Vec2& cd) {
  Eigen::Matrix3d I;
  I << 2 * m * c.dot(cd), -m * cd.y(), m * cd.x(),
       -m * cd.y(), 0, 0,
       m * cd.x(), 0, 0;
  return I;
}

}  // namespace

RobotModel RobotModel::build(std::vector<BodySpec> bodies, Vec2 gravity,
                             double friction_mu, ContactParams contact) {
  RobotModel m;
  m.bodies_ = std::move(bodies);
  m.gravity_ = gravity;
  m.friction_mu_ = friction_mu;
  m.contact_ = contact;

  const int nb = m.num_bodies();
  if (nb == 0) throw ModelError("model has no bodies");
  m.joint_dof_.assign(static_cast<size_t>(nb), -1);
  m.free_index_.assign(static_cast<size_t>(nb), -1);
  m.root_.assign(static_cast<size_t>(nb), -1);

  int dof = 0;
  for (int i = 0; i < nb; ++i) {
    const BodySpec& b = m.bodies_[static_cast<size_t>(i)];
    if (b.name.empty()) throw ModelError("body " + std::to_string(i) + " has no name");
    for (int j = 0; j < i; ++j)
      if (m.bodies_[static_cast<size_t>(j)].name == b.name)
        throw ModelError("duplicate body name '" + b.name + "'");
    const bool dynamic = b.attach != BodySpec::Static;
    if (dynamic && !(b.mass > 0))
      throw ModelError("body '" + b.name + "': dynamic bodies need mass > 0");
    if (dynamic && !(b.inertia_z > 0))
      throw ModelError("body '" + b.name + "': dynamic bodies need inertia_z > 0");
    switch (b.attach) {
      case BodySpec::Static:
        m.root_[static_cast<size_t>(i)] = i;
        break;
      case BodySpec::Free:
        if (!(b.dof_x || b.dof_y || b.dof_th))
          throw ModelError("body '" + b.name + "': free body with no DOF");
        m.root_[static_cast<size_t>(i)] = i;
        break;
      case BodySpec::Jointed: {
        if (b.parent >= i)
          throw ModelError("body '" + b.name + "': parent must precede the body");
        if (b.parent >= 0 &&
            m.bodies_[static_cast<size_t>(b.parent)].attach == BodySpec::Static)
          throw ModelError("body '" + b.name + "': cannot attach a joint to a static body");
        const JointSpec& j = b.joint;
        if (j.kind == JointSpec::Prismatic &&
            std::abs(j.axis.norm() - 1.0) > 1e-9)
          throw ModelError("body '" + b.name + "': prismatic axis must be unit length");
        for (const Limits& lim : {j.pos, j.vel, j.force})
          if (!(lim.lo <= lim.hi))
            throw ModelError("body '" + b.name + "': limit lo > hi");
        m.root_[static_cast<size_t>(i)] =
            b.parent < 0 ? i : m.root_[static_cast<size_t>(b.parent)];
        m.joint_dof_[static_cast<size_t>(i)] = dof++;
        break;
      }
    }
  }
  m.n_a_ = dof;

  m.free_dof_slots_.clear();
  for (int i = 0; i < nb; ++i) {
    const BodySpec& b = m.bodies_[static_cast<size_t>(i)];
    if (b.attach != BodySpec::Free) continue;
    m.free_index_[static_cast<size_t>(i)] = static_cast<int>(m.free_bodies_.size());
    m.free_bodies_.push_back(i);
    std::array<int, 3> slots{-1, -1, -1};
    if (b.dof_x) slots[0] = dof++;
    if (b.dof_y) slots[1] = dof++;
    if (b.dof_th) slots[2] = dof++;
    m.free_dof_slots_.push_back(slots);
  }
  m.n_u_ = dof - m.n_a_;

  const int n = dof;
  m.pos_lo_ = Vec::Constant(n, -kInf);
  m.pos_hi_ = Vec::Constant(n, kInf);
  m.vel_lo_ = Vec::Constant(n, -kInf);
  m.vel_hi_ = Vec::Constant(n, kInf);
  m.force_lo_ = Vec::Constant(m.n_a_, -kInf);
  m.force_hi_ = Vec::Constant(m.n_a_, kInf);
  for (int i = 0; i < nb; ++i) {
    const int jd = m.joint_dof_[static_cast<size_t>(i)];
    if (jd < 0) continue;
    const JointSpec& j = m.bodies_[static_cast<size_t>(i)].joint;
    m.pos_lo_[jd] = j.pos.lo;
    m.pos_hi_[jd] = j.pos.hi;
    m.vel_lo_[jd] = j.vel.lo;
    m.vel_hi_[jd] = j.vel.hi;
    m.force_lo_[jd] = j.force.lo;
    m.force_hi_[jd] = j.force.hi;
  }

  m.collision_pairs_.clear();
  for (int a = 0; a < nb; ++a) {
    const BodySpec& ba = m.bodies_[static_cast<size_t>(a)];
    if (!ba.shape || !ba.collides) continue;
    for (int b = a + 1; b < nb; ++b) {
      const BodySpec& bb = m.bodies_[static_cast<size_t>(b)];
      if (!bb.shape || !bb.collides) continue;
      if (m.root_[static_cast<size_t>(a)] == m.root_[static_cast<size_t>(b)]) continue;
      if (ba.attach == BodySpec::Static && bb.attach == BodySpec::Static) continue;
      m.collision_pairs_.emplace_back(a, b);
    }
  }
  return m;
}

int RobotModel::body_index(const std::string& name) const {
  for (int i = 0; i < num_bodies(); ++i)
    if (bodies_[static_cast<size_t>(i)].name == name) return i;
  throw ModelError("unknown body '" + name + "'");
}

std::array<int, 3> RobotModel::free_dofs(int body) const {
  const int fi = free_index_[static_cast<size_t>(body)];
  if (fi < 0) throw ModelError("body is not free");
  return free_dof_slots_[static_cast<size_t>(fi)];
}

int RobotModel::root_free_body(int body) const {
  const int r = root_[static_cast<size_t>(body)];
  return bodies_[static_cast<size_t>(r)].attach == BodySpec::Free ? r : -1;
}

State RobotModel::initial_state() const {
  State s;
  s.q = Vec::Zero(ndof());
  s.qd = Vec::Zero(ndof());
  for (int i = 0; i < ndof(); ++i)
    s.q[i] = std::clamp(0.0, pos_lo_[i], pos_hi_[i]);
  for (int b : free_bodies_) {
    const auto slots = free_dofs(b);
    const Pose2& p0 = bodies_[static_cast<size_t>(b)].pose0;
    if (slots[0] >= 0) s.q[slots[0]] = p0.p.x();
    if (slots[1] >= 0) s.q[slots[1]] = p0.p.y();
    if (slots[2] >= 0) s.q[slots[2]] = p0.th;
  }
  return s;
}

Pose2 RobotModel::free_body_pose(int body, const Vec& q) const {
  const auto slots = free_dofs(body);
  Pose2 p = bodies_[static_cast<size_t>(body)].pose0;
  if (slots[0] >= 0) p.p.x() = q[slots[0]];
  if (slots[1] >= 0) p.p.y() = q[slots[1]];
  if (slots[2] >= 0) p.th = q[slots[2]];
  return p;
}

void RobotModel::check_state(const Vec& q, const Vec& qd) const {
  if (q.size() != ndof() || qd.size() != ndof())
    throw ModelError("state dimension mismatch: expected " +
                     std::to_string(ndof()));
  if (!finite(q) || !finite(qd)) throw ModelError("non-finite state");
}

Kinematics kinematics(const RobotModel& m, const Vec& q) {
  if (q.size() != m.ndof()) throw ModelError("configuration dimension mismatch");
  const int nb = m.num_bodies();
  Kinematics kin;
  kin.pose.resize(static_cast<size_t>(nb));
  kin.S = Mat::Zero(3, m.ndof());
  kin.dofs.resize(static_cast<size_t>(nb));

  for (int i = 0; i < nb; ++i) {
    const BodySpec& b = m.body(i);
    switch (b.attach) {
      case BodySpec::Static:
        kin.pose[static_cast<size_t>(i)] = b.pose0;
        break;
      case BodySpec::Free: {
        const Pose2 pose = m.free_body_pose(i, q);
        kin.pose[static_cast<size_t>(i)] = pose;
        const auto slots = m.free_dofs(i);
        auto& dofs = kin.dofs[static_cast<size_t>(i)];
        if (slots[0] >= 0) {
          kin.S.col(slots[0]) = Vec3(0, 1, 0);
          dofs.push_back(slots[0]);
        }
        if (slots[1] >= 0) {
          kin.S.col(slots[1]) = Vec3(0, 0, 1);
          dofs.push_back(slots[1]);
        }
        if (slots[2] >= 0) {
          // Rotation about the body origin at p.
          kin.S.col(slots[2]) = Vec3(1, pose.p.y(), -pose.p.x());
          dofs.push_back(slots[2]);
        }
        break;
      }
      case BodySpec::Jointed: {
        Pose2 parent_pose;  // world frame when parent < 0
        std::vector<int> dofs;
        if (b.parent >= 0) {
          parent_pose = kin.pose[static_cast<size_t>(b.parent)];
          dofs = kin.dofs[static_cast<size_t>(b.parent)];
        }
        const int jd = m.joint_dof(i);
        const Vec2 anchor = parent_pose.apply(b.joint.origin);
        const double frame_th = parent_pose.th + b.joint.frame_angle;
        Pose2 pose;
        if (b.joint.kind == JointSpec::Revolute) {
          pose.th = frame_th + q[jd];
          pose.p = anchor;
          kin.S.col(jd) = Vec3(1, anchor.y(), -anchor.x());
        } else {
          pose.th = frame_th;
          Pose2 jf;
          jf.th = frame_th;
          const Vec2 axis_w = jf.rotate(b.joint.axis);
          pose.p = anchor + axis_w * q[jd];
          kin.S.col(jd) = Vec3(0, axis_w.x(), axis_w.y());
        }
        kin.pose[static_cast<size_t>(i)] = pose;
        dofs.push_back(jd);
        kin.dofs[static_cast<size_t>(i)] = std::move(dofs);
        break;
      }
    }
  }
  return kin;
}

KinVel kinematics_velocity(const RobotModel& m, const Vec& q, const Vec& qd) {
  m.check_state(q, qd);
  KinVel kv;
  kv.kin = kinematics(m, q);
  kv.Sdot = Mat::Zero(3, m.ndof());
  kv.twist.assign(static_cast<size_t>(m.num_bodies()), Vec3::Zero());

  for (int i = 0; i < m.num_bodies(); ++i) {
    const BodySpec& b = m.body(i);
    switch (b.attach) {
      case BodySpec::Static:
        break;
      case BodySpec::Free: {
        const auto slots = m.free_dofs(i);
        // Origin velocity is the translational qd directly.
        Vec2 od(0, 0);
        if (slots[0] >= 0) od.x() = qd[slots[0]];
        if (slots[1] >= 0) od.y() = qd[slots[1]];
        if (slots[2] >= 0) kv.Sdot.col(slots[2]) = Vec3(0, od.y(), -od.x());
        break;
      }
      case BodySpec::Jointed: {
        // The joint frame rides on the parent, whose twist is complete
        // by the body-ordering invariant.
        const Vec3 tw_p = b.parent >= 0
                              ? kv.twist[static_cast<size_t>(b.parent)]
                              : Vec3::Zero();
        const int jd = m.joint_dof(i);
        const double om_p = tw_p[0];
        const Vec2 u_p(tw_p[1], tw_p[2]);
        if (b.joint.kind == JointSpec::Revolute) {
          // S = (1, a_y, -a_x) so the anchor is (-S2, S1).
          const Vec2 a(-kv.kin.S(2, jd), kv.kin.S(1, jd));
          const Vec2 adot = u_p + om_p * perp(a);
          kv.Sdot.col(jd) = Vec3(0, adot.y(), -adot.x());
        } else {
          const Vec2 axis_w(kv.kin.S(1, jd), kv.kin.S(2, jd));
          const Vec2 axdot = om_p * perp(axis_w);
          kv.Sdot.col(jd) = Vec3(0, axdot.x(), axdot.y());
        }
        break;
      }
    }
    // Plucker twists add directly over the ancestor joints.
    Vec3 tw = Vec3::Zero();
    for (int d : kv.kin.dofs[static_cast<size_t>(i)])
      tw += kv.kin.S.col(d) * qd[d];
    kv.twist[static_cast<size_t>(i)] = tw;
  }
  return kv;
}

Vec2 world_point(const Kinematics& kin, int body, const Vec2& local) {
  return kin.pose[static_cast<size_t>(body)].apply(local);
}

Vec2 point_velocity(const KinVel& kv, int body, const Vec2& p) {
  const Vec3& tw = kv.twist[static_cast<size_t>(body)];
  return Vec2(tw[1], tw[2]) + tw[0] * perp(p);
}

Mat point_jacobian(const Kinematics& kin, int body, const Vec2& p) {
  Mat J = Mat::Zero(2, kin.S.cols());
  for (int d : kin.dofs[static_cast<size_t>(body)]) {
    const double om = kin.S(0, d);
    J.col(d) = Vec2(kin.S(1, d), kin.S(2, d)) + om * perp(p);
  }
  return J;
}

Mat mass_matrix(const RobotModel& m, const Vec& q) {
  const Kinematics kin = kinematics(m, q);
  Mat M = Mat::Zero(m.ndof(), m.ndof());
  for (int i = 0; i < m.num_bodies(); ++i) {
    const BodySpec& b = m.body(i);
    if (b.attach == BodySpec::Static) continue;
    const Vec2 c = kin.pose[static_cast<size_t>(i)].apply(b.com);
    const Eigen::Matrix3d I = plucker_inertia(b.mass, b.inertia_z, c);
    const auto& dofs = kin.dofs[static_cast<size_t>(i)];
    for (size_t a = 0; a < dofs.size(); ++a) {
      const Vec3 IS = I * kin.S.col(dofs[a]);
      for (size_t bcol = a; bcol < dofs.size(); ++bcol) {
        const double v = kin.S.col(dofs[bcol]).dot(IS);
        M(dofs[a], dofs[bcol]) += v;
        if (dofs[a] != dofs[bcol]) M(dofs[bcol], dofs[a]) += v;
      }
    }
  }
  return M;
}

Vec bias_forces(const RobotModel& m, const Vec& q, const Vec& qd) {
  const KinVel kv = kinematics_velocity(m, q, qd);
  Vec c = Vec::Zero(m.ndof());
  for (int i = 0; i < m.num_bodies(); ++i) {
    const BodySpec& b = m.body(i);
    if (b.attach == BodySpec::Static) continue;
    const auto& dofs = kv.kin.dofs[static_cast<size_t>(i)];
    if (dofs.empty()) continue;
    const Vec2 cw = kv.kin.pose[static_cast<size_t>(i)].apply(b.com);
    const Vec3& tw = kv.twist[static_cast<size_t>(i)];
    const Vec2 cdot = Vec2(tw[1], tw[2]) + tw[0] * perp(cw);
    const Eigen::Matrix3d I = plucker_inertia(b.mass, b.inertia_z, cw);
    const Eigen::Matrix3d Idot = plucker_inertia_dot(b.mass, cw, cdot);
    Vec3 acc = Vec3::Zero();  // twist rate with qdd = 0
    for (int d : dofs) acc += kv.Sdot.col(d) * qd[d];
    // Momentum rate plus gravity wrench, paired through the Jacobian.
    const Vec2 fg = b.mass * m.gravity();
    const Vec3 F = I * acc + Idot * tw - Vec3(cross2(cw, fg), fg.x(), fg.y());
    for (int d : dofs) c[d] += kv.kin.S.col(d).dot(F);
  }
  return c;
}

namespace {

struct WorldShape {
  Shape::Kind kind;
  double radius;
  Vec2 half;
  Pose2 frame;  // pose of the shape center (rect axes follow the body)
};

WorldShape world_shape(const BodySpec& b, const Pose2& pose) {
  WorldShape w;
  const Shape& s = *b.shape;
  w.kind = s.kind;
  w.radius = s.radius;
  w.half = s.half_extents;
  w.frame.th = pose.th;
  w.frame.p = pose.apply(s.center);
  return w;
}

// Closest point on a world-frame rectangle to p, plus the outward normal
// and surface distance (negative when p is inside).
struct RectQuery {
  Vec2 surface_point;
  Vec2 normal;  // outward
  double dist;
};

RectQuery rect_query(const WorldShape& r, const Vec2& p) {
  const Vec2 d = r.frame.inv_apply(p);
  const Vec2 h = r.half;
  RectQuery out;
  const bool inside = std::abs(d.x()) <= h.x() && std::abs(d.y()) <= h.y();
  if (!inside) {
    Vec2 cp(std::clamp(d.x(), -h.x(), h.x()), std::clamp(d.y(), -h.y(), h.y()));
    Vec2 diff = d - cp;
    double dist = diff.norm();
    Vec2 n_local;
    if (dist > 1e-12) {
      n_local = diff / dist;
    } else {
      // On the boundary: use the nearest face normal.
      const double px = h.x() - std::abs(d.x());
      const double py = h.y() - std::abs(d.y());
      n_local = px <= py ? Vec2(d.x() >= 0 ? 1 : -1, 0)
                         : Vec2(0, d.y() >= 0 ? 1 : -1);
    }
    out.surface_point = r.frame.apply(cp);
    out.normal = r.frame.rotate(n_local);
    out.dist = dist;
  } else {
    const double px = h.x() - std::abs(d.x());
    const double py = h.y() - std::abs(d.y());
    Vec2 n_local, cp;
    if (px <= py) {
      n_local = Vec2(d.x() >= 0 ? 1 : -1, 0);
      cp = Vec2(d.x() >= 0 ? h.x() : -h.x(), d.y());
      out.dist = -px;
    } else {
      n_local = Vec2(0, d.y() >= 0 ? 1 : -1);
      cp = Vec2(d.x(), d.y() >= 0 ? h.y() : -h.y());
      out.dist = -py;
    }
    out.surface_point = r.frame.apply(cp);
    out.normal = r.frame.rotate(n_local);
  }
  return out;
}

}  // namespace

std::vector<PhysicalContact> physical_contacts(const RobotModel& m,
                                               const Vec& q, const Vec& qd) {
  const KinVel kv = kinematics_velocity(m, q, qd);
  const ContactParams& cp = m.contact_params();
  const double mu = m.friction_mu();
  std::vector<PhysicalContact> out;

  auto emit = [&](int a, int b, const Vec2& point, const Vec2& normal,
                  double gap) {
    if (gap >= 0) return;
    const Vec2 rel =
        point_velocity(kv, a, point) - point_velocity(kv, b, point);
    const double vn = normal.dot(rel);
    const double fn = std::max(0.0, cp.k_n * (-gap) - cp.b_n * vn);
    if (fn <= 0) return;
    const Vec2 tangent = perp(normal);
    const double vt = tangent.dot(rel);
    const double ft = -mu * fn * std::tanh(vt / cp.v_s);
    out.push_back({a, b, point, normal, fn, ft, gap});
  };

  for (const auto& [a, b] : m.collision_pairs()) {
    const WorldShape wa = world_shape(m.body(a), kv.kin.pose[static_cast<size_t>(a)]);
    const WorldShape wb = world_shape(m.body(b), kv.kin.pose[static_cast<size_t>(b)]);
    if (wa.kind == Shape::Disk && wb.kind == Shape::Disk) {
      const Vec2 d = wa.frame.p - wb.frame.p;
      const double dist = d.norm();
      const double gap = dist - wa.radius - wb.radius;
      if (gap < 0) {
        const Vec2 n = dist > 1e-12 ? Vec2(d / dist) : Vec2(1, 0);
        const Vec2 point = wb.frame.p + n * (wb.radius + gap * 0.5);
        emit(a, b, point, n, gap);
      }
    } else if (wa.kind == Shape::Disk || wb.kind == Shape::Disk) {
      const bool disk_is_a = wa.kind == Shape::Disk;
      const WorldShape& disk = disk_is_a ? wa : wb;
      const WorldShape& rect = disk_is_a ? wb : wa;
      const RectQuery rq = rect_query(rect, disk.frame.p);
      const double gap = rq.dist - disk.radius;
      if (gap < 0) {
        if (disk_is_a)
          emit(a, b, rq.surface_point, rq.normal, gap);
        else
          emit(a, b, rq.surface_point, -rq.normal, gap);
      }
    } else {
      // Rect vs rect by boundary sampling: corners and edge midpoints of
      // each rectangle tested against the other.
      auto sample = [&](const WorldShape& probe, const WorldShape& target,
                        bool probe_is_a) {
        const Vec2 h = probe.half;
        const Vec2 pts[8] = {{h.x(), h.y()},  {h.x(), -h.y()}, {-h.x(), h.y()},
                             {-h.x(), -h.y()}, {h.x(), 0},     {-h.x(), 0},
                             {0, h.y()},       {0, -h.y()}};
        for (const Vec2& pl : pts) {
          const Vec2 pw = probe.frame.apply(pl);
          const RectQuery rq = rect_query(target, pw);
          if (rq.dist < 0) {
            if (probe_is_a)
              emit(a, b, pw, rq.normal, rq.dist);
            else
              emit(a, b, pw, -rq.normal, rq.dist);
          }
        }
      };
      sample(wa, wb, true);
      sample(wb, wa, false);
    }
  }
  return out;
}

Vec contact_generalized_force(const RobotModel& m, const Kinematics& kin,
                              const std::vector<PhysicalContact>& contacts) {
  Vec Q = Vec::Zero(m.ndof());
  for (const PhysicalContact& c : contacts) {
    const Vec2 f = c.fn * c.normal + c.ft * perp(c.normal);
    const Vec3 F(cross2(c.point, f), f.x(), f.y());
    for (int d : kin.dofs[static_cast<size_t>(c.body_a)])
      Q[d] += kin.S.col(d).dot(F);
    for (int d : kin.dofs[static_cast<size_t>(c.body_b)])
      Q[d] -= kin.S.col(d).dot(F);
  }
  return Q;
}

State substep(const RobotModel& m, const State& s, const Vec& tau,
              const std::vector<Wrench2>& free_wrench, double h) {
  if (!(h > 0)) throw ModelError("substep requires h > 0");
  if (tau.size() != m.n_actuated())
    throw ModelError("joint force dimension mismatch");
  if (static_cast<int>(free_wrench.size()) != m.num_free_bodies())
    throw ModelError("free-body wrench count mismatch");
  m.check_state(s.q, s.qd);

  const KinVel kv = kinematics_velocity(m, s.q, s.qd);
  const Mat M = mass_matrix(m, s.q);
  Vec rhs = -bias_forces(m, s.q, s.qd);
  rhs.head(m.n_actuated()) += tau;
  rhs += contact_generalized_force(m, kv.kin, physical_contacts(m, s.q, s.qd));
  for (size_t fi = 0; fi < free_wrench.size(); ++fi) {
    const int body = m.free_bodies()[fi];
    const auto slots = m.free_dofs(body);
    const Wrench2& w = free_wrench[fi];
    if (slots[0] >= 0) rhs[slots[0]] += w.f.x();
    if (slots[1] >= 0) rhs[slots[1]] += w.f.y();
    if (slots[2] >= 0) rhs[slots[2]] += w.tz;
  }

  Eigen::LDLT<Mat> ldlt(M);
  if (ldlt.info() != Eigen::Success)
    throw ModelError("mass matrix factorization failed");
  const Vec qdd = ldlt.solve(rhs);

  State out;
  out.qd = s.qd + h * qdd;
  for (int i = 0; i < m.ndof(); ++i)
    out.qd[i] = std::clamp(out.qd[i], m.vel_lo()[i], m.vel_hi()[i]);
  out.q = s.q + h * out.qd;
  for (int i = 0; i < m.ndof(); ++i) {
    if (out.q[i] < m.pos_lo()[i]) {
      out.q[i] = m.pos_lo()[i];
      if (out.qd[i] < 0) out.qd[i] = 0;
    } else if (out.q[i] > m.pos_hi()[i]) {
      out.q[i] = m.pos_hi()[i];
      if (out.qd[i] > 0) out.qd[i] = 0;
    }
  }
  return out;
}

}  // namespace cito
