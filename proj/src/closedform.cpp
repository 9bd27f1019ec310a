#include "bikegeo/closedform.hpp"

#include <cmath>
#include <functional>

namespace bikegeo {

namespace {

using elliptic::JacobiTriple;
using elliptic::jacobi_sn_cn_dn;

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

void require_axis(const GeodesicParams& params, const char* who) {
  if (!params.has_axis_data())
    throw CircleBranchError(std::string(who) + ": undefined for p = 0");
}

// theta'(s) without the (b/2|p|) prefactor: 1 + B/(1 - n sn^2(omega s, k)).
double theta_rate_reduced(double s, const GeodesicParams& g) {
  const JacobiTriple j = jacobi_sn_cn_dn(g.omega * s, g.k);
  return 1.0 + g.B / (1.0 - g.n * j.sn * j.sn);
}

// Axis crossings of the n = 1 singular track in (0, x] of the Jacobi
// argument: sn^2 = 1 at x = K mod 2K, once per period.
long axis_crossings(double x, double bigK) {
  return static_cast<long>(std::floor((x + bigK) / (2.0 * bigK)));
}

// Unwound theta(t); quadrature fallback near the singular characteristic.
double theta_closed(double t, const GeodesicParams& g, double n_guard) {
  if (g.b == 0.0) return 0.0;
  const double pref = 0.5 * g.b / g.p_norm;
  if (!g.near_singular_characteristic(n_guard)) {
    const double pi_inc = elliptic::incomplete_pi(g.omega * t, g.n, g.k);
    return pref * (t + g.B / g.omega * pi_inc);
  }
  // Singular characteristic a^2 + b^2 = a: B -> 0 while Pi(n,k) -> inf.
  // Below |B| ~ 1e-7 the peak of the quadrature fallback is unresolvable
  // and the limit form applies.
  if (std::abs(g.B) <= 1e-7) {
    // The track crosses the axis once per period; theta picks up a jump of
    // pi (sign of b, the |p|^2 -> a+ limit) at each crossing, and the
    // smooth part degenerates to b t / (2|p|).
    const double bigK = elliptic::complete_k(g.k);
    const double pi = 3.14159265358979323846;
    return pref * t + std::copysign(pi, g.b) *
                          static_cast<double>(axis_crossings(g.omega * t, bigK));
  }
  const double reduced = integrate_1d(
      [&g](double s) { return theta_rate_reduced(s, g); }, 0.0, t, 1e-12);
  return pref * reduced;
}

}  // namespace

double kappa_sq_closed(double t, const GeodesicParams& params) {
  const JacobiTriple j = jacobi_sn_cn_dn(params.omega * t, params.k);
  const double one_plus_a = 1.0 + params.a;
  return one_plus_a * one_plus_a - 4.0 * params.a * j.sn * j.sn;
}

double kappa_closed(double t, const GeodesicParams& params) {
  if (std::abs(params.a - 1.0) <= 1e-12) {
    const JacobiTriple j = jacobi_sn_cn_dn(params.omega * t, params.k);
    return 2.0 * j.cn;
  }
  return std::sqrt(std::max(0.0, kappa_sq_closed(t, params)));
}

double tau_closed(double t, const GeodesicParams& params) {
  const double a = params.a, b = params.b;
  const double ksq = kappa_sq_closed(t, params);
  if (ksq <= 1e-12) return 0.5 * b;  // inflection, a = 1 only
  return 0.5 * b + 0.5 * b * (a * a - 1.0) / ksq;
}

CylindricalSample cylindrical_track(double t, const GeodesicParams& params,
                                    double n_guard) {
  require_axis(params, "cylindrical_track");
  const JacobiTriple j = jacobi_sn_cn_dn(params.omega * t, params.k);
  CylindricalSample c;
  c.t = t;
  c.r = std::sqrt(std::max(0.0, params.A - 4.0 * params.a * j.sn * j.sn)) /
        params.p_norm;
  c.theta = theta_closed(t, params, n_guard);
  const double p2 = params.p_norm * params.p_norm;
  c.z = 0.5 *
        ((p2 + 1.0) * t -
         4.0 * params.omega * elliptic::incomplete_e(params.omega * t, params.k)) /
        params.p_norm;
  return c;
}

Vec3 front_track_cartesian(double t, const GeodesicParams& params) {
  const CylindricalSample c = cylindrical_track(t, params);
  return {c.r * std::cos(c.theta), c.r * std::sin(c.theta), c.z};
}

PhaseState phase_state_closed(double t, const GeodesicParams& params) {
  require_axis(params, "phase_state_closed");
  const CylindricalSample c = cylindrical_track(t, params);
  const double pn = params.p_norm;
  const double p2 = pn * pn;
  const JacobiTriple j = jacobi_sn_cn_dn(params.omega * t, params.k);

  const double cth = std::cos(c.theta), sth = std::sin(c.theta);
  const Vec3 x{c.r * cth, c.r * sth, c.z};

  // Derivatives of the closed forms.
  const double rho_dot =
      c.r > 1e-12
          ? -4.0 * params.a * params.omega * j.sn * j.cn * j.dn / (p2 * c.r)
          : 0.0;
  const double theta_dot =
      params.b == 0.0
          ? 0.0
          : 0.5 * params.b / pn *
                (1.0 + params.B / (1.0 - params.n * j.sn * j.sn));
  const double z_dot = params.a * (2.0 * j.sn * j.sn - 1.0) / pn;
  const Vec3 x_dot{rho_dot * cth - c.r * sth * theta_dot,
                   rho_dot * sth + c.r * cth * theta_dot, z_dot};

  const Vec3 p{0, 0, pn};
  const Vec3 r_vec = x_dot - p;
  const double delta = -params.b / p2;
  const Vec3 K = cross(x, p) + delta * p;
  const double r2 = r_vec.norm_sq();
  if (r2 < 1e-14)
    throw DegenerateError("phase_state_closed: r vanishes (linear track)");
  PhaseState s;
  s.x = x;
  s.v = cross(K, r_vec) / r2;
  s.p = p;
  s.r = r_vec;
  s.t = t;
  return s;
}

ScrewMotion monodromy_closed(const GeodesicParams& params) {
  require_axis(params, "monodromy_closed");
  if (params.is_soliton())
    throw SolitonError("monodromy_closed: aperiodic at (a,b) = (1,0)");
  const double K = elliptic::complete_k(params.k);
  const double E = elliptic::complete_e(params.k);
  const double pn = params.p_norm;
  const double p2 = pn * pn;
  const double w = params.omega;

  double dtheta;
  if (params.b == 0.0) {
    dtheta = 0.0;
  } else if (!params.near_singular_characteristic()) {
    dtheta = params.b / (w * pn) * (K + params.B * elliptic::complete_pi(params.n, params.k));
  } else {
    dtheta = theta_closed(params.period_T, params, 1e-6);
  }
  const double dz = ((p2 + 1.0) * K - 4.0 * w * w * E) / (w * pn);

  ScrewMotion s;
  s.axis_point = {0, 0, 0};
  s.axis_dir = {0, 0, 1};
  s.signed_theta = dtheta;
  s.delta_theta = wrap_angle(dtheta);
  s.winding = static_cast<long>(std::floor(dtheta / (2.0 * 3.14159265358979323846)));
  s.delta_z = dz;
  return s;
}

ScrewMotion monodromy_closed(const GeodesicParams& params,
                             const MagneticData& axis) {
  ScrewMotion s = monodromy_closed(params);
  s.axis_point = axis.K_axis_point;
  s.axis_dir = axis.axis_dir();
  return s;
}

}  // namespace bikegeo
