#ifndef BIKEGEO_SHOOTING_HPP
#define BIKEGEO_SHOOTING_HPP

#include <cstdint>
#include <vector>

#include "bikegeo/dynamics.hpp"
#include "bikegeo/vec3.hpp"

namespace bikegeo {

// A placement of the bike frame: front wheel position and unit frame
// direction (back wheel at x - v).
struct FramePlacement {
  Vec3 x;
  Vec3 v;
};

struct ShootingResult {
  Vec3 p;
  Vec3 x_dot0;  // initial front velocity realizing the connection
  double duration = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct ShootOptions {
  int restarts = 16;
  int max_lm_iterations = 35;
  double target_residual = 1e-9;
  double min_duration = 1e-3;
  double max_duration = 0.0;         // 0: derived from the placement gap
  double duration_hint = 0.0;        // 0: derived from the placement gap
  int stop_after = 0;                // stop once this many solutions found (0: never)
  std::uint64_t seed = 0x42696b65;   // fixed for deterministic output
  double integrator_rel_tol = 1e-9;
  double integrator_abs_tol = 1e-11;
};

// Boundary-value solver: find momenta p and durations t so the geodesic
// starting at `from` reaches `to`.  Decision variables are a local chart of
// (x0' on S^2, p with the admissibility constraint v0.(x0'-p) = 0, t);
// the objective |x(t)-x_to|^2 + |v(t)-v_to|^2 is driven to zero by damped
// Gauss-Newton (Levenberg-Marquardt) with central-difference Jacobians and
// quasi-random restarts.  Returns all distinct converged connections sorted
// by duration; throws NoSolutionFound if every restart fails (which proves
// nothing about existence).
std::vector<ShootingResult> shoot(const FramePlacement& from,
                                  const FramePlacement& to,
                                  const ShootOptions& opts = {});

}  // namespace bikegeo

#endif  // BIKEGEO_SHOOTING_HPP
