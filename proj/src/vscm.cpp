#include "cito/vscm.hpp"

#include <cmath>

namespace cito {

std::vector<ContactPair> validate_pairs(const RobotModel& m,
                                        std::vector<ContactPair> pairs) {
  for (size_t i = 0; i < pairs.size(); ++i) {
    ContactPair& p = pairs[i];
    p.index = static_cast<int>(i);
    const std::string tag = "pair " + std::to_string(i);
    if (p.robot.body < 0 || p.robot.body >= m.num_bodies() ||
        p.env.body < 0 || p.env.body >= m.num_bodies())
      throw ModelError(tag + ": unknown body");
    if (p.robot.radius < 0) throw ModelError(tag + ": negative radius");
    if ((p.env.p1 - p.env.p0).norm() <= 1e-12)
      throw ModelError(tag + ": degenerate face segment");
    if (std::abs(p.env.normal.norm() - 1.0) > 1e-9)
      throw ModelError(tag + ": face normal must be unit length");
    if (std::abs(p.env.normal.dot((p.env.p1 - p.env.p0).normalized())) > 1e-9)
      throw ModelError(tag + ": face normal must be perpendicular to the segment");
    const BodySpec& env_body = m.body(p.env.body);
    if (env_body.attach == BodySpec::Free) {
      p.wrench_body = p.env.body;
    } else {
      p.wrench_body = m.root_free_body(p.robot.body);
      if (p.wrench_body < 0)
        throw ModelError(tag + ": no free body to receive the virtual wrench");
    }
  }
  return pairs;
}

DistanceResult signed_distance(const RobotModel& m, const ContactPair& pair,
                               const Kinematics& kin) {
  const Pose2& env_pose = kin.pose[static_cast<size_t>(pair.env.body)];
  const Vec2 a = env_pose.apply(pair.env.p0);
  const Vec2 b = env_pose.apply(pair.env.p1);
  const Vec2 n = env_pose.rotate(pair.env.normal);
  const Vec2 center =
      world_point(kin, pair.robot.body, pair.robot.anchor);

  const Vec2 ab = b - a;
  const double t =
      std::clamp((center - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  const Vec2 nearest = a + t * ab;
  const double dist = (center - nearest).norm();

  DistanceResult res;
  res.phi = dist - pair.robot.radius;
  res.normal = n;
  if (dist > 1e-12) {
    res.robot_point = center - pair.robot.radius * (center - nearest) / dist;
  } else {
    res.robot_point = center - pair.robot.radius * n;
  }
  const int wb = pair.wrench_body;
  const Vec2 com =
      kin.pose[static_cast<size_t>(wb)].apply(m.body(wb).com);
  res.lever = res.robot_point - com;
  return res;
}

DistanceResult signed_distance(const RobotModel& m, const ContactPair& pair,
                               const Vec& q) {
  return signed_distance(m, pair, kinematics(m, q));
}

double virtual_force_magnitude(double k, double alpha, double phi) {
  return k * std::exp(-alpha * phi);
}

Wrench2 virtual_wrench(const RobotModel& m, const ContactPair& pair,
                       const Kinematics& kin, double gamma) {
  const DistanceResult d = signed_distance(m, pair, kin);
  Wrench2 w;
  w.f = gamma * d.normal;
  w.tz = cross2(d.lever, w.f);
  return w;
}

std::vector<Wrench2> net_virtual_wrench(const RobotModel& m,
                                        const std::vector<ContactPair>& pairs,
                                        const Vec& stiffness, double alpha,
                                        const Kinematics& kin) {
  if (stiffness.size() != static_cast<Eigen::Index>(pairs.size()))
    throw ModelError("stiffness vector length mismatch");
  std::vector<Wrench2> out(static_cast<size_t>(m.num_free_bodies()));
  for (size_t i = 0; i < pairs.size(); ++i) {
    const double k = stiffness[static_cast<Eigen::Index>(i)];
    if (k == 0) continue;
    const DistanceResult d = signed_distance(m, pairs[i], kin);
    const double gamma = virtual_force_magnitude(k, alpha, d.phi);
    Wrench2 w;
    w.f = gamma * d.normal;
    w.tz = cross2(d.lever, w.f);
    out[static_cast<size_t>(m.free_index(pairs[i].wrench_body))] += w;
  }
  return out;
}

}  // namespace cito
