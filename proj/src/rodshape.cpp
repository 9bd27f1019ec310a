#include "bikegeo/rodshape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bikegeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_constant_torsion(double a) { return std::abs(a - 1.0) <= 1e-12; }

double kappa_sq_of_state(const PhaseState& s, double b) {
  return s.r.norm_sq() - b * b;
}

double f_of_state(const PhaseState& s) { return dot(s.x_dot(), s.v); }

}  // namespace

GeodesicParams GeodesicParams::from_ab(double a, double b) {
  if (a < 0.0) throw DomainError("params: a must be non-negative");
  GeodesicParams g;
  g.a = a;
  g.b = b;
  g.p_norm = std::sqrt(a * a + b * b);
  const double four_omega_sq = (a + 1.0) * (a + 1.0) + b * b;
  g.omega = 0.5 * std::sqrt(four_omega_sq);
  const double m = std::min(1.0, 4.0 * a / four_omega_sq);
  g.k = elliptic::Modulus::from_m(m);
  if (g.p_norm > 0.0) {
    const double p2 = g.p_norm * g.p_norm;
    g.A = (p2 + a) * (p2 + a) / p2;
    g.B = (p2 - a) / (p2 + a);
    // 4a/A algebraically, but 1 - B^2 keeps n <= 1 exactly through the
    // singular characteristic p^2 = a.
    g.n = 1.0 - g.B * g.B;
  } else {
    g.A = g.B = g.n = kNaN;
  }
  g.period_T = m < 1.0 ? 2.0 * elliptic::complete_k(g.k) / g.omega : kInf;
  return g;
}

KirchhoffParams kirchhoff_params(double a, double b) {
  KirchhoffParams kp;
  kp.a1 = 0.5 * (1.0 + a * a);
  kp.a2 = b;
  kp.a3 = b * (a * a - 1.0);
  kp.a4 = std::sqrt(a * a + b * b);
  return kp;
}

FrenetSample curvature_torsion(const PhaseState& s, const GeodesicParams& params,
                               double sign) {
  const double a = params.a, b = params.b;
  const double kappa_sq = kappa_sq_of_state(s, b);
  if (kappa_sq + b * b < 1e-12)
    throw DegenerateError("curvature_torsion: kappa^2 + b^2 vanishes (linear track)");

  FrenetSample fs;
  fs.t = s.t;
  fs.T = s.x_dot();
  fs.F = f_of_state(s);
  fs.G = dot(s.p, fs.T);

  // T' = r' and T'' = r'' are exact algebraic expressions of the state; the
  // frame and kappa' come from them without ever dividing by a small kappa
  // (kappa = |T'| stays well conditioned through the a = 1 inflections).
  const PhaseDerivative d = hamiltonian_rhs(s);
  const Vec3 T_dot = d.r_dot;  // x'' = r' since p' = 0
  const double vp = dot(s.v, s.p);
  const Vec3 T_ddot = dot(d.v_dot, s.p) * s.r + vp * d.r_dot -
                      (dot(d.r_dot, fs.T) + dot(s.r, d.r_dot)) * s.v -
                      dot(s.r, fs.T) * d.v_dot;

  const double kappa_abs =
      kappa_sq >= 1e-4 ? std::sqrt(kappa_sq) : T_dot.norm();
  fs.kappa = sign * kappa_abs;
  const double ksq = kappa_abs * kappa_abs;
  fs.tau = kappa_sq > 1e-12 ? 0.5 * b + 0.5 * b * (a * a - 1.0) / kappa_sq
                            : 0.5 * b;  // inflection, a = 1 only

  if (kappa_abs >= 1e-9) {
    fs.N = T_dot / fs.kappa;
    // Two complementary routes to kappa'.  The norm identity
    // |T''|^2 = kappa^4 + kappa'^2 + (kappa tau)^2 avoids dividing by a
    // small kappa but loses the value when kappa' itself is near zero
    // (curvature extrema); there N is clean and T''.N serves instead.
    const double mag_sq = T_ddot.norm_sq() - ksq * ksq - ksq * fs.tau * fs.tau;
    if (mag_sq > 1e-6 * T_ddot.norm_sq()) {
      fs.kappa_prime = sign * std::copysign(std::sqrt(std::max(0.0, mag_sq)),
                                            dot(T_dot, T_ddot));
    } else {
      fs.kappa_prime = dot(T_ddot, fs.N);
    }
  } else {
    // Exactly at an inflection T' = 0; invert the constant-momentum
    // decomposition p = c T - kappa' N - kappa (tau - b) B instead.  There
    // kappa' = +-b != 0, and with w = (c T - p)/kappa' the inversion is
    // N = (w - alpha T x w)/(1 + alpha^2), alpha = kappa (tau - b)/kappa'.
    fs.kappa_prime = (sign >= 0.0 ? 1.0 : -1.0) * std::abs(b);
    const double c = 0.5 * (1.0 + a * a - kappa_sq);
    const double alpha = fs.kappa * (fs.tau - b) / fs.kappa_prime;
    const Vec3 w = (c * fs.T - s.p) / fs.kappa_prime;
    fs.N = (w - alpha * cross(fs.T, w)) / (1.0 + alpha * alpha);
  }
  fs.B_vec = cross(fs.T, fs.N);
  return fs;
}

std::vector<double> signed_kappa_series(const SampledPath& path,
                                        const GeodesicParams& params) {
  const auto& samples = path.samples();
  std::vector<double> out;
  out.reserve(samples.size());
  // Inflections occur exactly in the constant-torsion family a = 1, where
  // every local minimum of kappa^2 touches zero; elsewhere kappa stays
  // positive and no sign bookkeeping is needed.
  const bool can_inflect = is_constant_torsion(params.a);
  double sign = 1.0;
  double f_prev = samples.empty() ? 0.0 : f_of_state(samples.front());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f_here = f_of_state(samples[i]);
    if (can_inflect && i > 0 && f_prev < 0.0 && f_here >= 0.0) sign = -sign;
    out.push_back(sign * std::sqrt(std::max(
                             0.0, kappa_sq_of_state(samples[i], params.b))));
    f_prev = f_here;
  }
  return out;
}

std::vector<FrenetSample> frenet_series(const SampledPath& path,
                                        const GeodesicParams& params) {
  const std::vector<double> kappas = signed_kappa_series(path, params);
  const auto& samples = path.samples();
  std::vector<FrenetSample> out;
  out.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double sign = kappas[i] >= 0.0 ? 1.0 : -1.0;
    out.push_back(curvature_torsion(samples[i], params, sign));
  }
  return out;
}

KappaSqPolynomial kappa_sq_polynomial(double a, double b) {
  KappaSqPolynomial p;
  const double alpha = (1.0 - a) * (1.0 - a);
  const double beta = (1.0 + a) * (1.0 + a);
  const double gamma = b * b;
  p.root_neg = -gamma;
  p.root_min = alpha;
  p.root_max = beta;
  p.coeffs = {-1.0, alpha + beta - gamma, gamma * (alpha + beta) - alpha * beta,
              -gamma * alpha * beta};
  return p;
}

Ranges ranges(double a, double b) {
  if (a < 0.0) throw DomainError("ranges: a must be non-negative");
  if (is_constant_torsion(a) && b == 0.0)
    throw SolitonError("ranges: (1,0) is the aperiodic soliton/line point");
  Ranges r;
  if (is_constant_torsion(a)) {
    r.kappa_min = -2.0;
    r.kappa_max = 2.0;
    r.tau_min = r.tau_max = 0.5 * b;
    return r;
  }
  r.kappa_min = std::abs(1.0 - a);
  r.kappa_max = 1.0 + a;
  if (a == 0.0) {
    r.tau_min = r.tau_max = 0.0;
    return r;
  }
  const double tau_at_kappa_max = a * b / (1.0 + a);
  const double tau_at_kappa_min = a * b / (a - 1.0);
  r.tau_min = std::min(tau_at_kappa_max, tau_at_kappa_min);
  r.tau_max = std::max(tau_at_kappa_max, tau_at_kappa_min);
  return r;
}

Periods period(const GeodesicParams& params) {
  if (params.is_soliton())
    throw SolitonError("period: K(1) diverges at (a,b) = (1,0)");
  Periods p;
  p.T_kappa_sq = params.period_T;
  p.T_kappa = is_constant_torsion(params.a) ? 2.0 * params.period_T
                                            : params.period_T;
  return p;
}

std::vector<KappaEvent> kappa_extrema(const SampledPath& path) {
  const double b = path.b();
  std::vector<KappaEvent> events;
  const auto& steps = path.steps();
  if (steps.empty()) return events;
  if (kappa_sq_of_state(steps.front().y0, b) + b * b < 1e-12)
    throw NotApplicableError("kappa_extrema: linear front track");

  double f_prev = f_of_state(steps.front().y0);
  for (const StepRecord& st : steps) {
    const double f_here = f_of_state(st.y1);
    if ((f_prev < 0.0) != (f_here < 0.0) && f_prev != 0.0) {
      double lo = st.t0, hi = st.t0 + st.h;
      const bool was_neg = f_prev < 0.0;
      for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((f_of_state(path.at(mid)) < 0.0) == was_neg)
          lo = mid;
        else
          hi = mid;
      }
      KappaEvent ev;
      ev.t = 0.5 * (lo + hi);
      ev.kappa_sq = kappa_sq_of_state(path.at(ev.t), b);
      ev.is_max = !was_neg;  // (kappa^2)' = 2F(kappa^2+b^2): + -> - at maxima
      events.push_back(ev);
    }
    f_prev = f_here;
  }
  return events;
}

Vec3 back_frame_at_kappa_max(const SampledPath& path) {
  const GeodesicParams params = GeodesicParams::from_ab(path.a(), path.b());
  const double one_plus_a = 1.0 + params.a;

  if (params.is_circle()) {
    // kappa == 1 everywhere; every point qualifies.
    const PhaseState s = path.samples().front();
    const Vec3 xdd = hamiltonian_rhs(s).r_dot;
    if ((s.v + xdd / one_plus_a).norm() > 1e-7)
      throw ExtractionError("back frame: v != -x'' on circle track");
    return s.v;
  }

  const std::vector<KappaEvent> events = kappa_extrema(path);
  for (const KappaEvent& ev : events) {
    if (!ev.is_max) continue;
    const PhaseState s = path.at(ev.t);
    const Vec3 xdd = hamiltonian_rhs(s).r_dot;
    const Vec3 residual = s.v + xdd / one_plus_a;
    if (residual.norm() > 1e-7)
      throw ExtractionError("back frame: |v + x''/(1+a)| above tolerance");
    return s.v;
  }
  throw NotApplicableError("back frame: no curvature maximum in path span");
}

bool closedness_check(const GeodesicParams& params, const SampledPath& path) {
  if (params.is_circle() || !params.has_axis_data()) return true;
  if (params.is_soliton()) return false;  // unbounded track
  // Non-trivial translation along the magnetic axis over one period.
  const double T = params.period_T;
  if (path.t_end() - path.t_begin() + 1e-9 < T)
    throw DomainError("closedness_check: path shorter than one period");
  const Vec3 u = path.samples().front().p.normalized();
  const double dz =
      dot(u, path.at(path.t_begin() + T).x - path.at(path.t_begin()).x);
  if (std::abs(dz) < 1e-9)
    throw ExtractionError("closedness_check: vanishing axial translation");
  return false;
}

}  // namespace bikegeo
