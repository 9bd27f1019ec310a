#ifndef BIKEGEO_CLOSEDFORM_HPP
#define BIKEGEO_CLOSEDFORM_HPP

#include "bikegeo/dynamics.hpp"
#include "bikegeo/params.hpp"
#include "bikegeo/screw.hpp"
#include "bikegeo/vec3.hpp"

namespace bikegeo {

// Cylindrical coordinates of the front track about the magnetic axis;
// theta is kept unwound (continuous real, not reduced mod 2pi).
struct CylindricalSample {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double z = 0.0;
};

// kappa^2(t) = (1+a)^2 - 4a sn^2(omega t, k); t = 0 sits at a curvature
// maximum (matches aligned_initial_state).  Valid for all parameters
// including the k = 1 soliton branch, where it reduces to 4 sech^2(t).
double kappa_sq_closed(double t, const GeodesicParams& params);

// Signed closed-form curvature with the continuity convention: equal to
// sqrt(kappa_sq) for a != 1 and to 2 cn(omega t, k) at a = 1.
double kappa_closed(double t, const GeodesicParams& params);

// Closed-form torsion from kappa^2 (2 tau - b) = b (a^2 - 1).
double tau_closed(double t, const GeodesicParams& params);

// Front track about the axis (axis = z-direction through the origin,
// theta right-handed about it, theta(0) = z(0) = 0):
//   r = sqrt(A - 4a sn^2)/|p|,
//   theta = (b/2|p|) [t + (B/omega) Pi(omega t, n, k)],
//   z = [( |p|^2 + 1 ) t - 4 omega E(omega t, k)] / (2|p|).
// Near the singular characteristic (|1-n| < n_guard) theta falls back to
// adaptive quadrature of theta'.
CylindricalSample cylindrical_track(double t, const GeodesicParams& params,
                                    double n_guard = 1e-6);

// The same point in axis-frame Cartesian coordinates (r cos, r sin, z).
Vec3 front_track_cartesian(double t, const GeodesicParams& params);

// Full phase state in the axis frame, derived from the closed forms:
// x from the track, x' by differentiating it, r = x' - p, and the frame
// direction v = (K x r)/|r|^2 from the Killing field K = x x p + delta p.
PhaseState phase_state_closed(double t, const GeodesicParams& params);

// Monodromy over one period T = 2K/omega in closed form:
//   dtheta = (b / (omega |p|)) [K(k) + B Pi(n,k)],
//   dz     = [(|p|^2 + 1) K(k) - 4 omega^2 E(k)] / (omega |p|).
// Axis placement follows the aligned canonical seed: point x1, direction
// p/|p| (pass the seed's magnetic data to place it in a world frame).
ScrewMotion monodromy_closed(const GeodesicParams& params);
ScrewMotion monodromy_closed(const GeodesicParams& params, const MagneticData& axis);

}  // namespace bikegeo

#endif  // BIKEGEO_CLOSEDFORM_HPP
