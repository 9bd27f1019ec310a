#ifndef BIKEGEO_SCREW_HPP
#define BIKEGEO_SCREW_HPP

#include "bikegeo/vec3.hpp"

namespace bikegeo {

// Proper rigid motion as a rotation matrix plus translation, q -> R q + t.
struct RigidMotion {
  Mat3 rotation;
  Vec3 translation;

  Vec3 apply(const Vec3& q) const { return rotation * q + translation; }

  RigidMotion compose(const RigidMotion& inner) const {
    // this o inner
    RigidMotion out;
    out.rotation = rotation * inner.rotation;
    out.translation = rotation * inner.translation + translation;
    return out;
  }

  double orthogonality_residual() const;
};

// Chasles form of a proper rigid motion: rotation by delta_theta about the
// line through axis_point along axis_dir, composed with translation by
// delta_z along it.  delta_theta lies in [0, 2pi), measured right-handed
// about axis_dir; winding carries the integer number of extra full turns
// when the producer knows it (closed forms do, numeric extraction cannot).
struct ScrewMotion {
  Vec3 axis_point;
  Vec3 axis_dir{0, 0, 1};
  double delta_theta = 0.0;
  double delta_z = 0.0;
  long winding = 0;
  // Signed angle before reduction (delta_theta = mod(signed, 2pi)).
  double signed_theta = 0.0;

  Vec3 apply(const Vec3& q) const;
  RigidMotion to_rigid() const;
  // Axis orientation with positive translation (flips axis_dir and the
  // angle when delta_z < 0); use for orientation-independent angle
  // comparisons.
  ScrewMotion with_positive_translation() const;
};

// Decompose a rigid motion into screw form.  The rotation-angle-pi case is
// handled through the symmetric part of R; for a (near) identity rotation
// the axis direction is taken from `axis_hint` (the motion is then a pure
// translation and must translate along the hint).
ScrewMotion screw_from_rigid(const RigidMotion& motion, const Vec3& axis_hint);

// Wrap an angle to [0, 2pi).
double wrap_angle(double theta);

// Distance between two angles mod 2pi, in [0, pi].
double angle_distance(double alpha, double beta);

}  // namespace bikegeo

#endif  // BIKEGEO_SCREW_HPP
