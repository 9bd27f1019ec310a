#ifndef BIKEGEO_DYNAMICS_HPP
#define BIKEGEO_DYNAMICS_HPP

#include <cstddef>
#include <vector>

#include "bikegeo/errors.hpp"
#include "bikegeo/params.hpp"
#include "bikegeo/vec3.hpp"

namespace bikegeo {

// A point of the constrained cotangent system
//
//   x' = p + r
//   v' = p + r - (v.p) v
//   p' = 0
//   r' = (v.p) r - [r.(r+p)] v
//
// with v.v = 1, r.v = 0 and unit front speed |p + r| = 1.  x is the front
// wheel, v the frame direction (back wheel at y = x - v), p the constant
// momentum, r the fiber momentum, t arc length along the front track.
struct PhaseState {
  Vec3 x;
  Vec3 v;
  Vec3 p;
  Vec3 r;
  double t = 0.0;

  Vec3 front() const { return x; }
  Vec3 back() const { return x - v; }
  Vec3 x_dot() const { return p + r; }
  double hamiltonian() const { return 0.5 * (p + r).norm_sq(); }
  // Conserved triple product b = p.(v x x').
  double b_invariant() const { return triple(p, v, p + r); }
  // Residuals of the holonomic constraints.
  double v_norm_residual() const { return v.norm() - 1.0; }
  double rv_residual() const { return dot(r, v); }
};

// Derivative of a PhaseState under the geodesic flow.
struct PhaseDerivative {
  Vec3 x_dot;
  Vec3 v_dot;
  Vec3 p_dot;
  Vec3 r_dot;
};

PhaseDerivative hamiltonian_rhs(const PhaseState& s);

// Adaptive integration failed (step-size underflow or step budget); carries
// the last accepted state so callers can inspect the partial result.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& msg, const PhaseState& last_good)
      : Error(msg), last_good_(last_good) {}
  const PhaseState& last_good_state() const { return last_good_; }

 private:
  PhaseState last_good_;
};

// Canonical seed x = 0, v = (1,0,0), p = (0,a,b), r = (0,1-a,-b).
// Sits at a curvature minimum (kappa = |1-a|); a = b = 0 gives the p = 0
// circle branch.  Negative a is rejected: (a,b) -> (a,-b) reflection makes
// a >= 0 canonical.
PhaseState canonical_initial_state(double a, double b);

// Seed at a curvature maximum: x = 0, v = (1,0,0), p = (0,-a,b),
// r = (0,1+a,-b), so kappa(0) = 1 + a and the track matches the
// elliptic-function closed forms with no time shift.
PhaseState aligned_initial_state(double a, double b);

// Parameters (a, b) read back from any admissible state:
// b = p.(v x x'), a = sqrt(|p|^2 - b^2).
GeodesicParams params_from_state(const PhaseState& s);

struct IntegrationOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double dt_out = 0.01;
  std::size_t max_steps = 4000000;
};

// One accepted integrator step with endpoint derivatives, enough for cubic
// Hermite evaluation anywhere inside [t0, t0 + h].
struct StepRecord {
  double t0 = 0.0;
  double h = 0.0;
  PhaseState y0;
  PhaseDerivative f0;
  PhaseState y1;
  PhaseDerivative f1;
};

// Time-stamped samples of a front/back track plus the dense step data and
// constraint-drift bookkeeping of the run that produced it.
class SampledPath {
 public:
  SampledPath() = default;
  SampledPath(std::vector<PhaseState> samples, std::vector<StepRecord> steps,
              double a, double b, double pre_proj_vdrift, double pre_proj_rvdrift);

  const std::vector<PhaseState>& samples() const { return samples_; }
  const std::vector<StepRecord>& steps() const { return steps_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double t_begin() const;
  double t_end() const;

  // Hermite dense evaluation (projected back onto the constraints).
  PhaseState at(double t) const;

  // Largest per-step constraint drift observed before projection.
  double pre_projection_vdrift() const { return pre_proj_vdrift_; }
  double pre_projection_rvdrift() const { return pre_proj_rvdrift_; }

 private:
  std::vector<PhaseState> samples_;
  std::vector<StepRecord> steps_;
  double a_ = 0.0;
  double b_ = 0.0;
  double pre_proj_vdrift_ = 0.0;
  double pre_proj_rvdrift_ = 0.0;
};

// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) with PI step-size
// control.  v is renormalized and r projected onto v-perp after every
// accepted step; output samples land exactly on multiples of dt_out (the
// integrator steps onto them, no interpolation error at samples).
SampledPath integrate(const PhaseState& s0, double t_end,
                      const IntegrationOptions& opts = {});

// Killing magnetic field driving the front track, x'' = x' x K with
//   K = (x - x1) x p + delta p,
//   x1 = y0 + ((x0' x v0) x p)/|p|^2,   delta = ((x0' x v0).p)/|p|^2 = -b/|p|^2.
struct MagneticData {
  Vec3 K_axis_point;  // x1
  Vec3 p;
  double delta = 0.0;

  Vec3 axis_dir() const { return p.normalized(); }
  Vec3 field_at(const Vec3& x) const { return cross(x - K_axis_point, p) + delta * p; }
};

MagneticData magnetic_data(const PhaseState& s0);

// Maximum drift of the conserved quantities over the samples of a path.
struct InvariantReport {
  double drift_H = 0.0;
  double drift_p = 0.0;  // max componentwise deviation
  double drift_b = 0.0;
  double drift_vnorm = 0.0;
  double drift_rv = 0.0;
  double b = 0.0;
  double a = 0.0;
};

InvariantReport invariant_report(const SampledPath& path);

// Non-minimality witness of the long-geodesic shortcut construction:
// reorient the frame about the fixed back wheel (spherical arc), ride
// straight to y(nT), reorient again.  Returns (n*T, arc1 + |dy| + arc2).
struct ShortcutBound {
  double geodesic_len = 0.0;
  double shortcut_len = 0.0;
};

ShortcutBound shortcut_bound(const SampledPath& path, int n_periods);

}  // namespace bikegeo

#endif  // BIKEGEO_DYNAMICS_HPP
