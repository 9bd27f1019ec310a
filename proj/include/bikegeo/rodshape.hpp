#ifndef BIKEGEO_RODSHAPE_HPP
#define BIKEGEO_RODSHAPE_HPP

#include <array>
#include <optional>
#include <vector>

#include "bikegeo/dynamics.hpp"
#include "bikegeo/params.hpp"
#include "bikegeo/vec3.hpp"

namespace bikegeo {

// Frenet data of a front track at one instant.  kappa is signed (sign only
// varies for a = 1, where the track has inflections); N and B flip together
// with the sign so the Frenet equations hold for either choice.  F = v.x'
// and G = p.x' are the auxiliary scalars with 2G = 1 + a^2 - kappa^2.
struct FrenetSample {
  double t = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
  double kappa_prime = 0.0;
  Vec3 T;
  Vec3 N;
  Vec3 B_vec;
  double F = 0.0;
  double G = 0.0;
};

// Frenet data from the phase state alone: kappa^2 = |r|^2 - b^2 and
// tau = b/2 + b(a^2-1)/(2 kappa^2), never finite differences.  `sign`
// selects the Frenet branch (+1 unless tracking continuity across an
// inflection at a = 1).
FrenetSample curvature_torsion(const PhaseState& s, const GeodesicParams& params,
                               double sign = 1.0);

// Signed curvature series over the samples of a path; flips sign at each
// inflection (detected as kappa^2 dipping to ~0, only possible at a = 1) so
// kappa(t) is continuous.
std::vector<double> signed_kappa_series(const SampledPath& path,
                                        const GeodesicParams& params);

// Full Frenet samples along a path, with the continuity sign convention.
std::vector<FrenetSample> frenet_series(const SampledPath& path,
                                        const GeodesicParams& params);

// The phase cubic P(u) = (u + b^2) [(1+a)^2 - u] [u - (1-a)^2] with
// (u')^2 = P(u) for u = kappa^2.  coeffs are in decreasing degree:
// P(u) = c[0] u^3 + c[1] u^2 + c[2] u + c[3].
struct KappaSqPolynomial {
  double root_neg = 0.0;   // -b^2
  double root_min = 0.0;   // (1-a)^2
  double root_max = 0.0;   // (1+a)^2
  std::array<double, 4> coeffs{};
};

KappaSqPolynomial kappa_sq_polynomial(double a, double b);

// Attained ranges of curvature and torsion.  kappa in [|1-a|, 1+a] (signed
// [-2,2] at a = 1).  tau runs between its values at the curvature extrema,
//   tau(kappa = 1+a)   = ab/(1+a),
//   tau(kappa = |1-a|) = ab/(a-1)   (a != 1),
// which follow from kappa^2 (2 tau - b) = b(a^2 - 1); integrated tracks
// attain exactly these values.
struct Ranges {
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double tau_min = 0.0;
  double tau_max = 0.0;
};

Ranges ranges(double a, double b);

// Period of kappa^2 and of kappa itself (doubled at a = 1).
struct Periods {
  double T_kappa_sq = 0.0;
  double T_kappa = 0.0;
};

Periods period(const GeodesicParams& params);

// Curvature extremum located by bisection on the dense output of
// (kappa^2)' = 2 (x'.v)(kappa^2 + b^2).
struct KappaEvent {
  double t = 0.0;
  double kappa_sq = 0.0;
  bool is_max = false;
};

std::vector<KappaEvent> kappa_extrema(const SampledPath& path);

// Frame direction at the first curvature maximum; checks the back-track
// pinning identity v = -x''/(1+a) there.
Vec3 back_frame_at_kappa_max(const SampledPath& path);

// True only on the a = 0 circle branch; for a > 0 verifies that the
// translation part of the monodromy is nonzero.
bool closedness_check(const GeodesicParams& params, const SampledPath& path);

}  // namespace bikegeo

#endif  // BIKEGEO_RODSHAPE_HPP
