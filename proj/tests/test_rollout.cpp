#include "cito/rollout.hpp"

#include <doctest.h>

#include "cito/linearize.hpp"
#include "cito/scenario.hpp"
#include "test_helpers.hpp"

using namespace cito;
using namespace cito::testing;

namespace {

Problem pusher_problem() {
  return builtin_scenario("pusher_slider_1d").to_problem(Vec2(0.2, 0));
}

}  // namespace

TEST_CASE("decompose_control: identity without contact or gravity") {
  const Problem p = pusher_problem();
  const Vec tau = decompose_control(p, p.x1, Vec::Constant(1, 1.5));
  CHECK(tau[0] == doctest::Approx(1.5));
}

TEST_CASE("decompose_control: gravity compensation on a vertical joint") {
  BodySpec lift;
  lift.name = "lift";
  lift.attach = BodySpec::Jointed;
  lift.parent = -1;
  lift.mass = 1;
  lift.inertia_z = 1e-3;
  lift.joint.kind = JointSpec::Prismatic;
  lift.joint.axis = Vec2(0, 1);
  lift.joint.force = {-50, 50};

  BodySpec ball;
  ball.name = "ball";
  ball.attach = BodySpec::Free;
  ball.mass = 1;
  ball.inertia_z = 0.01;
  ball.pose0.p = Vec2(5, 5);

  Problem p;
  p.model = RobotModel::build({lift, ball}, Vec2(0, -9.81), 1.0);
  p.N = 1;
  p.dt = 0.1;
  p.goal.target_body = 1;
  p.x1 = p.model.initial_state();
  const Vec tau = decompose_control(p, p.x1, Vec::Zero(1));
  CHECK(tau[0] == doctest::Approx(9.81));
}

TEST_CASE("decompose_control: contact reaction compensation") {
  const Problem p = pusher_problem();
  State s = p.x1;
  s.q[0] = 0.2 - 0.05 + 0.002;  // tip 2 mm into the slider rear face
  const auto contacts = physical_contacts(p.model, s.q, s.qd);
  REQUIRE(contacts.size() == 1);
  const Vec tau = decompose_control(p, s, Vec::Zero(1));
  // The contact pushes the pusher back along -x; tau compensates with +fn.
  CHECK(tau[0] == doctest::Approx(contacts[0].fn).epsilon(1e-9));
}

TEST_CASE("rollout_step: stationary without forces, exact substep count") {
  Problem p = pusher_problem();
  p.dt = 0.1;
  CHECK(p.substeps() == 50);
  p.dt = 1.0;
  CHECK(p.substeps() == 500);
  Control u;
  u.tau = Vec::Zero(1);
  u.k = Vec::Zero(1);
  const State out = rollout_step(p, p.x1, u);
  CHECK(out.q == p.x1.q);
  CHECK(out.qd == p.x1.qd);
}

TEST_CASE("rollout_step: separated pair accelerates along the virtual force") {
  const Problem p = pusher_problem();
  Control u;
  u.tau = Vec::Zero(1);
  u.k = Vec::Constant(1, 10.0);
  const State out = rollout_step(p, p.x1, u);
  // Virtual force on the slider points along +x (the face normal).
  CHECK(out.qd[1] > 0);
  CHECK(out.q[1] > p.x1.q[1]);

  // One explicit substep by hand: gamma = k exp(-alpha phi), a = gamma/m.
  const DistanceResult d = signed_distance(p.model, p.pairs[0], p.x1.q);
  const double gamma = virtual_force_magnitude(10.0, p.alpha, d.phi);
  Problem p1 = p;
  p1.dt = p.substep_h;  // a single substep
  const State one = rollout_step(p1, p.x1, u);
  CHECK(one.qd[1] == doctest::Approx(p.substep_h * gamma / 1.0).epsilon(1e-9));
}

TEST_CASE("rollout_trajectory: N=0, all-zero controls, zero defects") {
  const Problem p = pusher_problem();
  const StateTraj none = rollout_trajectory(p, p.x1, {});
  CHECK(none.size() == 1);

  Control u;
  u.tau = Vec::Zero(1);
  u.k = Vec::Zero(1);
  const ControlTraj U(3, u);
  Problem p3 = p;
  p3.N = 3;
  p3.dt = 0.1;
  const StateTraj X = rollout_trajectory(p3, p3.x1, U);
  REQUIRE(X.size() == 4);
  for (const State& s : X) {
    CHECK(s.q == p.x1.q);
    CHECK(s.qd == p.x1.qd);
  }

  // Defects are zero by construction.
  ControlTraj U2 = p3.initial_guess();
  const StateTraj X2 = rollout_trajectory(p3, p3.x1, U2);
  for (size_t i = 0; i < U2.size(); ++i) {
    const State f = rollout_step(p3, X2[i], U2[i]);
    CHECK((f.q - X2[i + 1].q).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((f.qd - X2[i + 1].qd).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("final cost and pose error") {
  Problem p = pusher_problem();
  State s = p.x1;

  SUBCASE("at the goal the cost is zero") {
    s.q[1] = p.goal.pos.x();
    CHECK(final_cost(p, s) == doctest::Approx(0.0));
    const auto [pe, th] = pose_error(p, s);
    CHECK(pe == 0.0);
    CHECK(th == 0.0);
  }
  SUBCASE("0.2 m error with w1=1e4 costs 400") {
    s.q[1] = p.goal.pos.x() - 0.2;
    CHECK(p.goal.w1 == 1e4);
    CHECK(final_cost(p, s) == doctest::Approx(400.0));
    CHECK(pose_error(p, s).first == doctest::Approx(0.2));
  }
}

TEST_CASE("angle wrapping in the pose error") {
  Scenario s = builtin_scenario("planar_pusher");
  const Problem p = s.to_problem(Vec2(0.0, 0.0), 2 * 3.14159265358979323846);
  // Goal theta = initial + 2*pi: the wrapped error is zero.
  const auto [pe, th] = pose_error(p, p.x1);
  CHECK(pe == doctest::Approx(0.0));
  CHECK(th == doctest::Approx(0.0).epsilon(1e-9));

  const Problem q = s.to_problem(Vec2(0, 0), 3.14159265358979323846);
  const Problem r = s.to_problem(Vec2(0, 0), -3.14159265358979323846);
  CHECK(pose_error(q, q.x1).second ==
        doctest::Approx(pose_error(r, r.x1).second));
}

TEST_CASE("integrated cost") {
  const Problem p = pusher_problem();
  Control u;
  u.tau = Vec::Zero(1);
  u.k = Vec::Zero(1);
  CHECK(integrated_cost(p, ControlTraj(5, u), 0.3) == 0.0);

  Control four;
  four.tau = Vec::Zero(1);
  four.k = Vec::Constant(1, 10.0);
  ControlTraj U(4, four);
  CHECK(integrated_cost(p, U, 0.1) == doctest::Approx(4.0));
  CHECK(integrated_cost(p, U, 0.2) == doctest::Approx(8.0));
  CHECK_THROWS_AS(integrated_cost(p, U, -0.1), ValidationError);

  // C_I = 0 iff every stiffness entry is zero.
  U[2].k[0] = 1e-9;
  CHECK(integrated_cost(p, U, 0.1) > 0.0);
}

TEST_CASE("total cost is continuous under tiny control perturbations") {
  Problem p = pusher_problem();
  const ControlTraj U = p.initial_guess();
  const double base = total_cost(p, rollout_trajectory(p, p.x1, U), U, 0.1);
  for (int trial = 0; trial < 5; ++trial) {
    ControlTraj V = U;
    V[0].tau[0] += uniform(-1e-6, 1e-6);
    V[0].k[0] += uniform(0, 1e-6);
    const double c = total_cost(p, rollout_trajectory(p, p.x1, V), V, 0.1);
    CHECK(std::abs(c - base) <= 1e-3);
  }
}

TEST_CASE("linearize: free body matches the discrete double integrator") {
  BodySpec box;
  box.name = "box";
  box.attach = BodySpec::Free;
  box.mass = 1;
  box.inertia_z = 0.05;
  Problem p;
  p.model = RobotModel::build({box}, Vec2(0, 0), 1.0);
  p.N = 1;
  p.dt = 0.1;
  p.goal.target_body = 0;
  p.x1 = p.model.initial_state();
  Control u;
  u.tau = Vec::Zero(0);
  u.k = Vec::Zero(0);
  const auto [A, B] = linearize_step(p, p.x1, u);
  // Exact map per substep: qd' = qd, q' = q + h qd; composed n times.
  Mat Aexp = Mat::Identity(6, 6);
  Aexp.topRightCorner(3, 3) = 0.1 * Mat::Identity(3, 3);
  CHECK((A - Aexp).lpNorm<Eigen::Infinity>() < 1e-8);
  CHECK(B.cols() == 0);
}

TEST_CASE("linearize: far-separated stiffness column is negligible") {
  Problem p = pusher_problem();
  State far = p.x1;
  far.q[1] = 5.0;  // phi >> 1/alpha
  Control u;
  u.tau = Vec::Zero(1);
  u.k = Vec::Constant(1, 10.0);
  const auto [A, B] = linearize_step(p, far, u);
  CHECK(B.col(1).lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("linearize: Richardson step-halving converges at second order") {
  Problem p = pusher_problem();
  p.dt = 0.1;
  Control u;
  u.tau = Vec::Constant(1, 1.0);
  u.k = Vec::Constant(1, 5.0);
  int checked = 0;
  for (int trial = 0; trial < 8; ++trial) {
    State x = p.x1;
    x.q[0] = uniform(-0.1, 0.1);
    x.qd[0] = uniform(-0.5, 0.5);
    Vec dir(p.nx() + p.nu());
    for (int i = 0; i < dir.size(); ++i) dir[i] = uniform(-1, 1);
    dir.normalize();

    auto dirderiv = [&](double s) {
      Vec xv = p.state_vec(x), uv = p.flat(u);
      Vec xp = xv + s * dir.head(p.nx()), xm = xv - s * dir.head(p.nx());
      Vec up = uv + s * dir.tail(p.nu()), um = uv - s * dir.tail(p.nu());
      const Vec fp =
          p.state_vec(rollout_step(p, p.state_from_vec(xp), p.unflat(up)));
      const Vec fm =
          p.state_vec(rollout_step(p, p.state_from_vec(xm), p.unflat(um)));
      return Vec((fp - fm) / (2 * s));
    };
    const Vec g1 = dirderiv(1e-3);
    const Vec g2 = dirderiv(5e-4);
    const Vec g4 = dirderiv(2.5e-4);
    const Vec limit = (4 * g4 - g2) / 3;  // Richardson extrapolation
    const double e1 = (g1 - limit).norm();
    const double e2 = (g2 - limit).norm();
    if (e2 < 1e-14) continue;  // derivative is locally exact
    const double ratio = e1 / e2;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
    ++checked;
  }
  CHECK(checked >= 4);
}

TEST_CASE("linearize_trajectory: worker count does not change results") {
  Problem p = pusher_problem();
  p.N = 2;
  p.dt = 0.5;
  ControlTraj U = p.initial_guess();
  U[1].tau[0] = 2.0;
  const StateTraj X = rollout_trajectory(p, p.x1, U);
  const Linearization l1 = linearize_trajectory(p, X, U, 1);
  const Linearization l4 = linearize_trajectory(p, X, U, 4);
  REQUIRE(l1.A.size() == 2);
  for (size_t i = 0; i < 2; ++i) {
    CHECK((l1.A[i] - l4.A[i]).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((l1.B[i] - l4.B[i]).lpNorm<Eigen::Infinity>() == 0.0);
  }
  // Per-step results equal the standalone computation.
  const auto [A0, B0] = linearize_step(p, X[0], U[0]);
  CHECK((l1.A[0] - A0).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((l1.B[0] - B0).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("linearization predicts the nonlinear step to first order") {
  Problem p = pusher_problem();
  p.dt = 0.1;
  Control u;
  u.tau = Vec::Constant(1, 0.5);
  u.k = Vec::Constant(1, 8.0);
  const auto [A, B] = linearize_step(p, p.x1, u);
  const Vec f0 = p.state_vec(rollout_step(p, p.x1, u));

  auto residual = [&](double s) {
    Vec dx = Vec::Constant(p.nx(), s);
    Vec du = Vec::Constant(p.nu(), s);
    du[1] = std::abs(du[1]);  // keep stiffness in bounds
    const Vec xp = p.state_vec(p.x1) + dx;
    const Vec up = p.flat(u) + du;
    const Vec f = p.state_vec(rollout_step(p, p.state_from_vec(xp), p.unflat(up)));
    return (f - f0 - A * dx - B * du).norm();
  };
  const double r1 = residual(1e-3);
  const double r2 = residual(5e-4);
  // Quadratic decay of the linearization residual: ratio near 4.
  CHECK(r1 / std::max(r2, 1e-300) > 2.5);
}
