#include "cito/vscm.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace cito;
using namespace cito::testing;

namespace {

// Free box with a single disk-tipped pusher, pairing the box's +x face.
struct Rig {
  RobotModel model;
  std::vector<ContactPair> pairs;
};

Rig box_rig() {
  BodySpec pusher;
  pusher.name = "pusher";
  pusher.attach = BodySpec::Jointed;
  pusher.parent = -1;
  pusher.mass = 1;
  pusher.inertia_z = 1e-3;
  pusher.joint.kind = JointSpec::Prismatic;
  pusher.joint.axis = Vec2(1, 0);

  BodySpec box;
  box.name = "box";
  box.attach = BodySpec::Free;
  box.mass = 1;
  box.inertia_z = 0.01;
  box.pose0.p = Vec2(0.5, 0);

  Rig r{RobotModel::build({pusher, box}, Vec2(0, 0), 1.0), {}};
  ContactPair p;
  p.robot.body = 0;
  p.robot.anchor = Vec2(0, 0);
  p.robot.radius = 0.05;
  p.env.body = 1;
  p.env.p0 = Vec2(0.1, -0.1);
  p.env.p1 = Vec2(0.1, 0.1);
  p.env.normal = Vec2(1, 0);
  r.pairs = validate_pairs(r.model, {p});
  return r;
}

}  // namespace

TEST_CASE("gamma: exponential of the signed distance") {
  CHECK(virtual_force_magnitude(10, 10, 0) == doctest::Approx(10.0));
  CHECK(virtual_force_magnitude(0, 10, -3.7) == 0.0);
  CHECK(virtual_force_magnitude(10, 10, 0.05) ==
        doctest::Approx(10 * std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("gamma is monotone in phi and linear in k") {
  double prev = kInf;
  for (double phi = -0.5; phi <= 0.5; phi += 0.01) {
    const double g = virtual_force_magnitude(3.0, 10, phi);
    CHECK(g <= prev);
    prev = g;
    CHECK(virtual_force_magnitude(6.0, 10, phi) == doctest::Approx(2 * g));
  }
}

TEST_CASE("signed distance: radius-zero disk on the face is zero") {
  Rig r = box_rig();
  r.pairs[0].robot.radius = 0;
  Vec q = r.model.initial_state().q;
  q[0] = 0.6;  // on the face plane (box at 0.5, face at +0.1)
  const DistanceResult d = signed_distance(r.model, r.pairs[0], q);
  CHECK(d.phi == doctest::Approx(0.0));
}

TEST_CASE("signed distance along the outward normal") {
  Rig r = box_rig();
  Vec q = r.model.initial_state().q;
  q[0] = 0.75;  // 0.15 beyond the face midpoint at 0.6
  const DistanceResult d = signed_distance(r.model, r.pairs[0], q);
  CHECK(d.phi == doctest::Approx(0.15 - 0.05));
  CHECK(d.normal.x() == doctest::Approx(1.0));
  CHECK(d.normal.y() == doctest::Approx(0.0));
}

TEST_CASE("distance beyond the segment end uses the endpoint") {
  Rig r = box_rig();
  Vec q = r.model.initial_state().q;
  q[0] = 0.7;   // pusher disk center at (0.7, 0)
  q[2] = -0.3;  // box down: face spans y in [-0.4, -0.2], endpoint (0.6, -0.2)
  const DistanceResult d = signed_distance(r.model, r.pairs[0], q);
  const double expect = (Vec2(0.7, 0) - Vec2(0.6, -0.2)).norm() - 0.05;
  CHECK(d.phi == doctest::Approx(expect).epsilon(1e-12));

  // Brute-force nearest point over dense samples agrees.
  double best = kInf;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    const Vec2 pt(0.6, -0.4 + 0.2 * t);
    best = std::min(best, (Vec2(0.7, 0) - pt).norm());
  }
  CHECK(d.phi == doctest::Approx(best - 0.05).epsilon(1e-6));
}

TEST_CASE("signed distance agrees with a dense sampling oracle") {
  Rig r = box_rig();
  for (int trial = 0; trial < 50; ++trial) {
    Vec q(4);
    q << uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-3, 3);
    const DistanceResult d = signed_distance(r.model, r.pairs[0], q);
    const Kinematics kin = kinematics(r.model, q);
    const Vec2 center = world_point(kin, 0, Vec2(0, 0));
    const Vec2 a = world_point(kin, 1, r.pairs[0].env.p0);
    const Vec2 b = world_point(kin, 1, r.pairs[0].env.p1);
    double best = kInf;
    for (int i = 0; i <= 1000; ++i) {
      const double t = i / 1000.0;
      best = std::min(best, (center - Vec2(a + t * (b - a))).norm());
    }
    CHECK(d.phi == doctest::Approx(best - 0.05).epsilon(1e-6));
  }
}

TEST_CASE("virtual wrench force and torque") {
  Rig r = box_rig();
  const Vec q = r.model.initial_state().q;
  const Kinematics kin = kinematics(r.model, q);

  SUBCASE("zero gamma gives a zero wrench") {
    const Wrench2 w = virtual_wrench(r.model, r.pairs[0], kin, 0.0);
    CHECK(w.f.norm() == 0.0);
    CHECK(w.tz == 0.0);
  }
  SUBCASE("lever parallel to the normal gives zero torque") {
    // Pusher at origin on the box axis: lever is along -x, normal +x.
    const Wrench2 w = virtual_wrench(r.model, r.pairs[0], kin, 5.0);
    CHECK(w.f.x() == doctest::Approx(5.0));
    CHECK(w.f.y() == doctest::Approx(0.0));
    CHECK(w.tz == doctest::Approx(0.0));
  }
  SUBCASE("force magnitude equals gamma exactly") {
    const Wrench2 w = virtual_wrench(r.model, r.pairs[0], kin, 2.5);
    CHECK(std::abs(w.f.norm() - 2.5) < 1e-12);
  }
}

TEST_CASE("hand-checked torque: l=(0.1,0), n=(0,1), gamma=2 -> (0,2,0.2)") {
  // Pair the box's +y face and park the pusher so the nearest point on
  // its disk sits 0.1 to the box's +x: lever (0.1, 0), normal (0, 1).
  BodySpec pusher;
  pusher.name = "pusher";
  pusher.attach = BodySpec::Jointed;
  pusher.parent = -1;
  pusher.mass = 1;
  pusher.inertia_z = 1e-3;
  pusher.joint.kind = JointSpec::Prismatic;
  pusher.joint.axis = Vec2(0, 1);
  pusher.joint.origin = Vec2(0.6, 0);

  BodySpec box;
  box.name = "box";
  box.attach = BodySpec::Free;
  box.mass = 1;
  box.inertia_z = 0.01;
  box.pose0.p = Vec2(0.5, 0);

  RobotModel m = RobotModel::build({pusher, box}, Vec2(0, 0), 1.0);
  ContactPair p;
  p.robot.body = 0;
  p.robot.radius = 0;
  p.env.body = 1;
  p.env.p0 = Vec2(-0.1, 0.1);
  p.env.p1 = Vec2(0.1, 0.1);
  p.env.normal = Vec2(0, 1);
  auto pairs = validate_pairs(m, {p});
  const Vec q = m.initial_state().q;  // pusher point at (0.6, 0)
  const Wrench2 w = virtual_wrench(m, pairs[0], kinematics(m, q), 2.0);
  CHECK(w.f.x() == doctest::Approx(0.0));
  CHECK(w.f.y() == doctest::Approx(2.0));
  CHECK(w.tz == doctest::Approx(0.2));
}

TEST_CASE("net wrench: zero stiffness, linearity and brute-force sum") {
  Rig r = box_rig();
  // Four pairs around the box.
  ContactPair base = r.pairs[0];
  std::vector<ContactPair> pairs(4, base);
  pairs[1].env.p0 = Vec2(-0.1, 0.1);
  pairs[1].env.p1 = Vec2(0.1, 0.1);
  pairs[1].env.normal = Vec2(0, 1);
  pairs[2].env.p0 = Vec2(-0.1, -0.1);
  pairs[2].env.p1 = Vec2(-0.1, 0.1);
  pairs[2].env.normal = Vec2(-1, 0);
  pairs[3].env.p0 = Vec2(-0.1, -0.1);
  pairs[3].env.p1 = Vec2(0.1, -0.1);
  pairs[3].env.normal = Vec2(0, -1);
  pairs = validate_pairs(r.model, pairs);

  Vec q(4);
  q << uniform(-0.5, 0.5), uniform(-0.5, 0.5), uniform(-0.5, 0.5),
      uniform(-3, 3);
  const Kinematics kin = kinematics(r.model, q);

  const auto zero = net_virtual_wrench(r.model, pairs, Vec::Zero(4), 10, kin);
  CHECK(zero[0].f.norm() == 0.0);
  CHECK(zero[0].tz == 0.0);

  Vec k1(4), k2(4);
  k1 << uniform(0, 10), uniform(0, 10), uniform(0, 10), uniform(0, 10);
  k2 << uniform(0, 10), uniform(0, 10), uniform(0, 10), uniform(0, 10);
  const auto w1 = net_virtual_wrench(r.model, pairs, k1, 10, kin);
  const auto w2 = net_virtual_wrench(r.model, pairs, k2, 10, kin);
  const auto w12 = net_virtual_wrench(r.model, pairs, Vec(k1 + k2), 10, kin);
  CHECK((w12[0].f - (w1[0].f + w2[0].f)).norm() < 1e-12);
  CHECK(w12[0].tz == doctest::Approx(w1[0].tz + w2[0].tz).epsilon(1e-12));

  // Brute-force sum over individual wrenches.
  Wrench2 sum;
  for (int i = 0; i < 4; ++i) {
    const DistanceResult d = signed_distance(r.model, pairs[static_cast<size_t>(i)], kin);
    sum += virtual_wrench(r.model, pairs[static_cast<size_t>(i)], kin,
                          virtual_force_magnitude(k1[i], 10, d.phi));
  }
  CHECK((w1[0].f - sum.f).norm() < 1e-12);
  CHECK(w1[0].tz == doctest::Approx(sum.tz).epsilon(1e-12));

  CHECK_THROWS_AS(net_virtual_wrench(r.model, pairs, Vec::Zero(3), 10, kin),
                  ModelError);
}

TEST_CASE("symmetric pairs with equal stiffness cancel torques") {
  Rig r = box_rig();
  ContactPair top = r.pairs[0], bottom = r.pairs[0];
  top.env.p0 = Vec2(-0.1, 0.1);
  top.env.p1 = Vec2(0.1, 0.1);
  top.env.normal = Vec2(0, 1);
  bottom.env.p0 = Vec2(-0.1, -0.1);
  bottom.env.p1 = Vec2(0.1, -0.1);
  bottom.env.normal = Vec2(0, -1);
  auto pairs = validate_pairs(r.model, {top, bottom});
  const Vec q = r.model.initial_state().q;  // pusher on the symmetry axis
  const auto w =
      net_virtual_wrench(r.model, pairs, Vec::Constant(2, 3.0), 10,
                         kinematics(r.model, q));
  CHECK(std::abs(w[0].tz) < 1e-12);
}

TEST_CASE("pair validation rejects degenerate geometry") {
  Rig r = box_rig();
  ContactPair bad = r.pairs[0];
  bad.env.p1 = bad.env.p0;
  CHECK_THROWS_AS(validate_pairs(r.model, {bad}), ModelError);
  bad = r.pairs[0];
  bad.env.normal = Vec2(0.5, 0);
  CHECK_THROWS_AS(validate_pairs(r.model, {bad}), ModelError);
  bad = r.pairs[0];
  bad.env.normal = Vec2(0, 1);  // not perpendicular to the vertical face
  CHECK_THROWS_AS(validate_pairs(r.model, {bad}), ModelError);
}

TEST_CASE("static env candidate routes the wrench to the robot's free root") {
  // Free torso with a revolute arm, facing a static brick.
  BodySpec torso;
  torso.name = "torso";
  torso.attach = BodySpec::Free;
  torso.mass = 10;
  torso.inertia_z = 0.3;

  BodySpec arm;
  arm.name = "arm";
  arm.attach = BodySpec::Jointed;
  arm.parent = 0;
  arm.mass = 0.5;
  arm.inertia_z = 0.003;
  arm.com = Vec2(0.125, 0);
  arm.joint.kind = JointSpec::Revolute;
  arm.joint.origin = Vec2(0.15, 0);

  BodySpec brick;
  brick.name = "brick";
  brick.attach = BodySpec::Static;
  brick.pose0.p = Vec2(1.0, 0);

  RobotModel m = RobotModel::build({torso, arm, brick}, Vec2(0, 0), 1.0);
  ContactPair p;
  p.robot.body = 1;
  p.robot.anchor = Vec2(0.25, 0);
  p.robot.radius = 0.05;
  p.env.body = 2;
  p.env.p0 = Vec2(-0.05, -0.2);
  p.env.p1 = Vec2(-0.05, 0.2);
  p.env.normal = Vec2(-1, 0);
  auto pairs = validate_pairs(m, {p});
  CHECK(pairs[0].wrench_body == 0);

  const auto w = net_virtual_wrench(m, pairs, Vec::Constant(1, 5.0), 10,
                                    kinematics(m, m.initial_state().q));
  REQUIRE(w.size() == 1);
  // Brick face pushes the torso away from the brick (-x).
  CHECK(w[0].f.x() < 0);
}
