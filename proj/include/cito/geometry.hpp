#pragma once

#include <Eigen/Core>
#include <cmath>

namespace cito {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

// z x u, the planar 90-degree rotation.
inline Vec2 perp(const Vec2& u) { return Vec2(-u.y(), u.x()); }

// Planar cross product a x b (z component).
inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Wraps an angle difference into (-pi, pi].
inline double wrap_angle(double a) {
  return std::atan2(std::sin(a), std::cos(a));
}

// World pose of a planar body frame.
struct Pose2 {
  Vec2 p{0, 0};
  double th = 0;

  Mat2 rot() const {
    const double c = std::cos(th), s = std::sin(th);
    Mat2 r;
    r << c, -s, s, c;
    return r;
  }
  Vec2 apply(const Vec2& local) const { return p + rot() * local; }
  Vec2 rotate(const Vec2& local) const { return rot() * local; }
  Vec2 inv_apply(const Vec2& world) const {
    return rot().transpose() * (world - p);
  }
};

// Planar force/torque on a free body: (f, tau_z about the body COM).
struct Wrench2 {
  Vec2 f{0, 0};
  double tz = 0;

  Wrench2& operator+=(const Wrench2& o) {
    f += o.f;
    tz += o.tz;
    return *this;
  }
};

}  // namespace cito
