#pragma once

#include <vector>

#include "cito/model.hpp"

namespace cito {

// Candidate disk on a robot link, anchored in the body frame.
struct RobotCandidate {
  int body = -1;
  Vec2 anchor{0, 0};
  double radius = 0;
};

// Candidate face segment with its outward normal, in the body frame of
// the owning body (a free body, or a static body for floating-base
// robots where the virtual wrench lands on the robot's own free root).
struct EnvCandidate {
  int body = -1;
  Vec2 p0{0, 0}, p1{0, 0};
  Vec2 normal{0, 0};
};

struct ContactPair {
  RobotCandidate robot;
  EnvCandidate env;
  int index = -1;        // position in the stiffness vector
  int wrench_body = -1;  // free body receiving the virtual wrench
};

struct DistanceResult {
  double phi = 0;          // m, negative when the disk overlaps the face
  Vec2 normal{0, 0};       // face outward normal, world frame
  Vec2 robot_point{0, 0};  // nearest point on the robot candidate, world
  Vec2 lever{0, 0};        // wrench body COM -> robot_point
};

// Validates candidate geometry and resolves wrench_body. Throws
// ModelError for degenerate segments, non-unit or non-perpendicular
// normals, or pairs with no associated free body.
std::vector<ContactPair> validate_pairs(const RobotModel& m,
                                        std::vector<ContactPair> pairs);

DistanceResult signed_distance(const RobotModel& m, const ContactPair& pair,
                               const Kinematics& kin);
DistanceResult signed_distance(const RobotModel& m, const ContactPair& pair,
                               const Vec& q);

// gamma = k * exp(-alpha * phi)
double virtual_force_magnitude(double k, double alpha, double phi);

// Force gamma along the face normal, torque = lever x force.
Wrench2 virtual_wrench(const RobotModel& m, const ContactPair& pair,
                       const Kinematics& kin, double gamma);

// Per-free-body sum of the pair wrenches, indexed by free-body order.
std::vector<Wrench2> net_virtual_wrench(const RobotModel& m,
                                        const std::vector<ContactPair>& pairs,
                                        const Vec& stiffness, double alpha,
                                        const Kinematics& kin);

}  // namespace cito
