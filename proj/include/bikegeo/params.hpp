#ifndef BIKEGEO_PARAMS_HPP
#define BIKEGEO_PARAMS_HPP

#include "bikegeo/elliptic.hpp"
#include "bikegeo/errors.hpp"

namespace bikegeo {

// The pair (a, b) classifying a geodesic front track, together with the
// derived quantities that drive every closed form:
//
//   omega = sqrt((a+1)^2 + b^2) / 2,   k^2 = 4a / ((a+1)^2 + b^2),
//   A = (|p|^2 + a)^2 / |p|^2,  B = (|p|^2 - a)/(|p|^2 + a),  n = 4a/A,
//   T = 2 K(k) / omega     (period of kappa^2; diverges at a=1, b=0).
//
// A, B, n are only meaningful for |p| > 0 and are NaN on the circle branch.
struct GeodesicParams {
  double a = 0.0;
  double b = 0.0;
  double p_norm = 0.0;
  double omega = 0.0;
  elliptic::Modulus k;
  double A = 0.0;
  double B = 0.0;
  double n = 0.0;
  double period_T = 0.0;

  static GeodesicParams from_ab(double a, double b);

  bool is_circle() const { return a == 0.0; }
  bool is_soliton() const { return k.k >= 1.0; }  // a = 1, b = 0
  bool has_axis_data() const { return p_norm > 0.0; }
  // True on the singular characteristic locus a^2 + b^2 = a (n -> 1).
  bool near_singular_characteristic(double guard = 1e-6) const {
    return has_axis_data() && std::abs(1.0 - n) < guard;
  }
};

// Kirchhoff-rod coefficients of a geodesic front track:
//   a1 = (1 + a^2)/2,  a2 = b,  a3 = b(a^2 - 1),  a4 = sqrt(a^2 + b^2),
// satisfying a3 = 2 a2 (a1 - 1) identically.
struct KirchhoffParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
};

KirchhoffParams kirchhoff_params(double a, double b);

}  // namespace bikegeo

#endif  // BIKEGEO_PARAMS_HPP
