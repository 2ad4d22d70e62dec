#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cito/errors.hpp"
#include "cito/geometry.hpp"

namespace cito {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collision geometry in the body frame. Rectangles are axis-aligned in
// the body frame and rotate with it.
struct Shape {
  enum Kind { Disk, Rect } kind = Disk;
  double radius = 0;       // Disk
  Vec2 half_extents{0, 0}; // Rect
  Vec2 center{0, 0};       // offset of the shape center in the body frame
};

struct Limits {
  double lo = -kInf;
  double hi = kInf;
};

struct JointSpec {
  enum Kind { Prismatic, Revolute } kind = Prismatic;
  Vec2 axis{1, 0};     // prismatic axis in the joint frame, unit length
  Vec2 origin{0, 0};   // anchor in the parent body frame
  double frame_angle = 0; // fixed rotation of the joint frame vs the parent
  Limits pos, vel, force;
};

struct BodySpec {
  std::string name;
  double mass = 0;
  double inertia_z = 0;   // about the COM
  Vec2 com{0, 0};         // COM in the body frame
  std::optional<Shape> shape;

  enum Attach { Static, Free, Jointed } attach = Static;
  int parent = -1;        // body index, Jointed only; -1 means the world
  JointSpec joint;        // Jointed only; every joint is actuated

  Pose2 pose0;            // Static: fixed pose. Free: initial pose and the
                          // frozen values of masked-out coordinates.
  // Free only: which planar coordinates are degrees of freedom.
  bool dof_x = true, dof_y = true, dof_th = true;
  bool collides = true;
};

struct ContactParams {
  double k_n = 1e4;  // N/m
  double b_n = 100;  // N s/m
  double v_s = 0.01; // m/s tanh smoothing velocity
};

struct State {
  Vec q, qd;
};

struct PhysicalContact {
  int body_a = -1, body_b = -1;
  Vec2 point{0, 0};   // world
  Vec2 normal{0, 0};  // world, pushes body_a away from body_b
  double fn = 0;      // >= 0
  double ft = 0;      // along perp(normal)
  double gap = 0;     // signed, negative while in contact
};

// Validated planar kinematic model. DOF layout: one slot per joint in
// body order (actuated block), then the active coordinates of each free
// body in body order (unactuated block), so S_a = [I 0], S_u = [0 I].
class RobotModel {
 public:
  static RobotModel build(std::vector<BodySpec> bodies, Vec2 gravity,
                          double friction_mu, ContactParams contact = {});

  const std::vector<BodySpec>& bodies() const { return bodies_; }
  const BodySpec& body(int i) const { return bodies_[static_cast<size_t>(i)]; }
  int body_index(const std::string& name) const;
  int num_bodies() const { return static_cast<int>(bodies_.size()); }

  int n_actuated() const { return n_a_; }
  int n_unactuated() const { return n_u_; }
  int ndof() const { return n_a_ + n_u_; }
  int num_free_bodies() const { return static_cast<int>(free_bodies_.size()); }

  Vec2 gravity() const { return gravity_; }
  double friction_mu() const { return friction_mu_; }
  const ContactParams& contact_params() const { return contact_; }

  // -1 when the body has no joint.
  int joint_dof(int body) const { return joint_dof_[static_cast<size_t>(body)]; }
  // Free-body order index, -1 otherwise.
  int free_index(int body) const { return free_index_[static_cast<size_t>(body)]; }
  const std::vector<int>& free_bodies() const { return free_bodies_; }
  // DOF slots (x, y, th) of a free body; -1 for masked-out coordinates.
  std::array<int, 3> free_dofs(int body) const;
  // Index of the tree root this body hangs from.
  int root(int body) const { return root_[static_cast<size_t>(body)]; }
  // Root free body of the tree containing `body`, or -1.
  int root_free_body(int body) const;
  const std::vector<std::pair<int, int>>& collision_pairs() const {
    return collision_pairs_;
  }

  // Per-DOF and per-joint bounds.
  const Vec& pos_lo() const { return pos_lo_; }
  const Vec& pos_hi() const { return pos_hi_; }
  const Vec& vel_lo() const { return vel_lo_; }
  const Vec& vel_hi() const { return vel_hi_; }
  const Vec& force_lo() const { return force_lo_; }  // n_a
  const Vec& force_hi() const { return force_hi_; }

  // Initial state: joints at 0 (or clamped into limits), free bodies at
  // pose0, all velocities zero.
  State initial_state() const;

  // World pose of a free body given q; masked-out coordinates come from
  // pose0.
  Pose2 free_body_pose(int body, const Vec& q) const;

  void check_state(const Vec& q, const Vec& qd) const;

 private:
  std::vector<BodySpec> bodies_;
  Vec2 gravity_{0, 0};
  double friction_mu_ = 1;
  ContactParams contact_;
  int n_a_ = 0, n_u_ = 0;
  std::vector<int> joint_dof_, free_index_, root_;
  std::vector<int> free_bodies_;
  std::vector<std::array<int, 3>> free_dof_slots_;
  std::vector<std::pair<int, int>> collision_pairs_;
  Vec pos_lo_, pos_hi_, vel_lo_, vel_hi_, force_lo_, force_hi_;
};

// Configuration-level kinematics. Plucker planar coordinates about the
// world origin: motion columns are (omega, vx, vy), so a body's spatial
// velocity is the plain sum of S_j * qd_j over its ancestor joints.
struct Kinematics {
  std::vector<Pose2> pose;            // per body, world
  Mat S;                              // 3 x ndof
  std::vector<std::vector<int>> dofs; // ancestor DOF list per body
};

Kinematics kinematics(const RobotModel& m, const Vec& q);

// Adds velocity products: per-body twists and d/dt of the motion columns.
struct KinVel {
  Kinematics kin;
  Mat Sdot;               // 3 x ndof
  std::vector<Vec3> twist; // per body (omega, ux, uy)
};

KinVel kinematics_velocity(const RobotModel& m, const Vec& q, const Vec& qd);

Vec2 world_point(const Kinematics& kin, int body, const Vec2& local);
// Velocity of the material point of `body` at world location `p`.
Vec2 point_velocity(const KinVel& kv, int body, const Vec2& p);
// 2 x ndof Jacobian of the world position of a body-frame point.
Mat point_jacobian(const Kinematics& kin, int body, const Vec2& world_point);

Mat mass_matrix(const RobotModel& m, const Vec& q);
Vec bias_forces(const RobotModel& m, const Vec& q, const Vec& qd);
std::vector<PhysicalContact> physical_contacts(const RobotModel& m,
                                               const Vec& q, const Vec& qd);

// Generalized force vector of a set of physical contacts.
Vec contact_generalized_force(const RobotModel& m, const Kinematics& kin,
                              const std::vector<PhysicalContact>& contacts);

// One semi-implicit Euler step of h seconds under joint forces tau and
// per-free-body virtual wrenches. Joint limits are clamped, with the
// velocity zeroed at a position stop.
State substep(const RobotModel& m, const State& s, const Vec& tau,
              const std::vector<Wrench2>& free_wrench, double h);

}  // namespace cito
