#include "bikegeo/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace bikegeo {

namespace {

using State = std::array<double, 12>;

State pack(const PhaseState& s) {
  return {s.x.x, s.x.y, s.x.z, s.v.x, s.v.y, s.v.z,
          s.p.x, s.p.y, s.p.z, s.r.x, s.r.y, s.r.z};
}

PhaseState unpack(const State& y, double t) {
  PhaseState s;
  s.x = {y[0], y[1], y[2]};
  s.v = {y[3], y[4], y[5]};
  s.p = {y[6], y[7], y[8]};
  s.r = {y[9], y[10], y[11]};
  s.t = t;
  return s;
}

State rhs(const State& y) {
  const Vec3 v{y[3], y[4], y[5]};
  const Vec3 p{y[6], y[7], y[8]};
  const Vec3 r{y[9], y[10], y[11]};
  const Vec3 xd = p + r;
  const double vp = dot(v, p);
  const Vec3 vd = xd - vp * v;
  const Vec3 rd = vp * r - dot(r, xd) * v;
  return {xd.x, xd.y, xd.z, vd.x, vd.y, vd.z, 0, 0, 0, rd.x, rd.y, rd.z};
}

PhaseDerivative to_derivative(const State& f) {
  return {{f[0], f[1], f[2]}, {f[3], f[4], f[5]}, {f[6], f[7], f[8]}, {f[9], f[10], f[11]}};
}

// Dormand-Prince 5(4) coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Projection {
  double vdrift = 0.0;
  double rvdrift = 0.0;
};

Projection project_constraints(State& y) {
  Vec3 v{y[3], y[4], y[5]};
  Vec3 r{y[9], y[10], y[11]};
  Projection out;
  const double vn = v.norm();
  out.vdrift = std::abs(vn - 1.0);
  v = v / vn;
  const double rv = dot(r, v);
  out.rvdrift = std::abs(rv);
  r -= rv * v;
  y[3] = v.x; y[4] = v.y; y[5] = v.z;
  y[9] = r.x; y[10] = r.y; y[11] = r.z;
  return out;
}

void validate_state(const PhaseState& s) {
  if (std::abs(s.v.norm() - 1.0) > 1e-8)
    throw DomainError("phase state: |v| must be 1");
  if (std::abs(dot(s.r, s.v)) > 1e-8)
    throw DomainError("phase state: r.v must vanish");
  if (std::abs((s.p + s.r).norm() - 1.0) > 1e-7)
    throw DomainError("phase state: unit front speed |p+r| = 1 expected");
}

}  // namespace

PhaseDerivative hamiltonian_rhs(const PhaseState& s) {
  return to_derivative(rhs(pack(s)));
}

PhaseState canonical_initial_state(double a, double b) {
  if (a < 0.0)
    throw DomainError("canonical seed: a >= 0 (use the (a,b) -> (a,-b) reflection)");
  PhaseState s;
  s.x = {0, 0, 0};
  s.v = {1, 0, 0};
  s.p = {0, a, b};
  s.r = {0, 1.0 - a, -b};
  s.t = 0.0;
  return s;
}

PhaseState aligned_initial_state(double a, double b) {
  if (a < 0.0)
    throw DomainError("aligned seed: a >= 0 (use the (a,b) -> (a,-b) reflection)");
  PhaseState s;
  s.x = {0, 0, 0};
  s.v = {1, 0, 0};
  s.p = {0, -a, b};
  s.r = {0, 1.0 + a, -b};
  s.t = 0.0;
  return s;
}

GeodesicParams params_from_state(const PhaseState& s) {
  const double b = s.b_invariant();
  const double a2 = s.p.norm_sq() - b * b;
  const double a = std::sqrt(std::max(0.0, a2));
  return GeodesicParams::from_ab(a, b);
}

SampledPath::SampledPath(std::vector<PhaseState> samples,
                         std::vector<StepRecord> steps, double a, double b,
                         double pre_proj_vdrift, double pre_proj_rvdrift)
    : samples_(std::move(samples)),
      steps_(std::move(steps)),
      a_(a),
      b_(b),
      pre_proj_vdrift_(pre_proj_vdrift),
      pre_proj_rvdrift_(pre_proj_rvdrift) {}

double SampledPath::t_begin() const {
  return steps_.empty() ? (samples_.empty() ? 0.0 : samples_.front().t)
                        : steps_.front().t0;
}

double SampledPath::t_end() const {
  return steps_.empty() ? (samples_.empty() ? 0.0 : samples_.back().t)
                        : steps_.back().t0 + steps_.back().h;
}

PhaseState SampledPath::at(double t) const {
  if (steps_.empty()) throw DomainError("path: no dense data");
  if (t < t_begin() - 1e-12 || t > t_end() + 1e-12)
    throw DomainError("path: dense evaluation outside integrated range");
  // Binary search for the step containing t.
  std::size_t lo = 0, hi = steps_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (steps_[mid].t0 <= t)
      lo = mid;
    else
      hi = mid - 1;
  }
  const StepRecord& st = steps_[lo];
  const double h = st.h;
  const double s = std::clamp((t - st.t0) / h, 0.0, 1.0);
  // Cubic Hermite basis.
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  const State y0 = pack(st.y0), y1 = pack(st.y1);
  const State f0 = pack(PhaseState{st.f0.x_dot, st.f0.v_dot, st.f0.p_dot, st.f0.r_dot, 0});
  const State f1 = pack(PhaseState{st.f1.x_dot, st.f1.v_dot, st.f1.p_dot, st.f1.r_dot, 0});
  State y;
  for (int i = 0; i < 12; ++i)
    y[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
  project_constraints(y);
  return unpack(y, t);
}

SampledPath integrate(const PhaseState& s0, double t_end,
                      const IntegrationOptions& opts) {
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw DomainError("integrate: t_end must be positive and finite");
  if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0) || !(opts.dt_out > 0.0))
    throw DomainError("integrate: tolerances and dt_out must be positive");
  validate_state(s0);

  const GeodesicParams seed_params = params_from_state(s0);

  State y = pack(s0);
  project_constraints(y);
  double t = 0.0;
  State f = rhs(y);

  std::vector<PhaseState> samples;
  std::vector<StepRecord> steps;
  samples.reserve(static_cast<std::size_t>(t_end / opts.dt_out) + 2);
  samples.push_back(unpack(y, s0.t));

  double max_vdrift = 0.0, max_rvdrift = 0.0;

  long out_index = 1;
  double next_out = std::min(out_index * opts.dt_out, t_end);
  double h = std::min(1e-3, t_end);
  double err_prev = 1.0;
  std::size_t n_steps = 0;

  State k2, k3, k4, k5, k6, k7, ytmp, y_new;

  while (t < t_end) {
    if (++n_steps > opts.max_steps)
      throw IntegrationError("integrate: max step count exceeded",
                             unpack(y, s0.t + t));

    bool clipped = false;
    double h_try = h;
    if (t + h_try >= next_out) {
      h_try = next_out - t;
      clipped = true;
    }
    if (h_try < 1e-14 * std::max(1.0, std::abs(t)) && !clipped)
      throw IntegrationError("integrate: step size underflow",
                             unpack(y, s0.t + t));

    // Stages.
    for (int i = 0; i < 12; ++i) ytmp[i] = y[i] + h_try * a21 * f[i];
    k2 = rhs(ytmp);
    for (int i = 0; i < 12; ++i)
      ytmp[i] = y[i] + h_try * (a31 * f[i] + a32 * k2[i]);
    k3 = rhs(ytmp);
    for (int i = 0; i < 12; ++i)
      ytmp[i] = y[i] + h_try * (a41 * f[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(ytmp);
    for (int i = 0; i < 12; ++i)
      ytmp[i] = y[i] + h_try * (a51 * f[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(ytmp);
    for (int i = 0; i < 12; ++i)
      ytmp[i] = y[i] + h_try * (a61 * f[i] + a62 * k2[i] + a63 * k3[i] +
                                a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(ytmp);
    for (int i = 0; i < 12; ++i)
      y_new[i] = y[i] + h_try * (b1 * f[i] + b3 * k3[i] + b4 * k4[i] +
                                 b5 * k5[i] + b6 * k6[i]);
    k7 = rhs(y_new);

    double err = 0.0;
    for (int i = 0; i < 12; ++i) {
      const double e = h_try * (e1 * f[i] + e3 * k3[i] + e4 * k4[i] +
                                e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / 12.0);
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      const double t_new = clipped ? next_out : t + h_try;

      StepRecord rec;
      rec.t0 = s0.t + t;
      rec.h = t_new - t;
      rec.y0 = unpack(y, s0.t + t);
      rec.f0 = to_derivative(f);

      const Projection proj = project_constraints(y_new);
      max_vdrift = std::max(max_vdrift, proj.vdrift);
      max_rvdrift = std::max(max_rvdrift, proj.rvdrift);

      y = y_new;
      t = t_new;
      f = rhs(y);  // recomputed after projection; reused as next k1

      rec.y1 = unpack(y, s0.t + t);
      rec.f1 = to_derivative(f);
      steps.push_back(rec);

      if (clipped) {
        samples.push_back(unpack(y, s0.t + t));
        ++out_index;
        next_out = std::min(out_index * opts.dt_out, t_end);
      }

      // PI controller; clipped steps do not shrink the remembered step.
      const double fac =
          std::clamp(0.9 * std::pow(err + 1e-30, -0.17) * std::pow(err_prev, 0.04),
                     0.2, 5.0);
      if (!clipped)
        h = h_try * fac;
      else
        h = std::max(h, h_try * fac);
      err_prev = std::max(err, 1e-10);
    } else {
      h = h_try * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }

  return SampledPath(std::move(samples), std::move(steps), seed_params.a,
                     seed_params.b, max_vdrift, max_rvdrift);
}

MagneticData magnetic_data(const PhaseState& s0) {
  const double p2 = s0.p.norm_sq();
  if (p2 == 0.0)
    throw CircleBranchError("magnetic data undefined for p = 0 (circle branch)");
  const Vec3 xd0 = s0.x_dot();
  const Vec3 y0 = s0.back();
  const Vec3 w = cross(xd0, s0.v);
  MagneticData md;
  md.p = s0.p;
  md.K_axis_point = y0 + cross(w, s0.p) / p2;
  md.delta = dot(w, s0.p) / p2;
  return md;
}

InvariantReport invariant_report(const SampledPath& path) {
  const auto& samples = path.samples();
  if (samples.empty()) throw DomainError("invariant_report: empty path");
  const PhaseState& s0 = samples.front();
  const double H0 = s0.hamiltonian();
  const double b0 = s0.b_invariant();
  InvariantReport rep;
  rep.b = b0;
  rep.a = std::sqrt(std::max(0.0, s0.p.norm_sq() - b0 * b0));
  for (const PhaseState& s : samples) {
    rep.drift_H = std::max(rep.drift_H, std::abs(s.hamiltonian() - H0));
    const Vec3 dp = s.p - s0.p;
    rep.drift_p = std::max({rep.drift_p, std::abs(dp.x), std::abs(dp.y), std::abs(dp.z)});
    rep.drift_b = std::max(rep.drift_b, std::abs(s.b_invariant() - b0));
    rep.drift_vnorm = std::max(rep.drift_vnorm, std::abs(s.v_norm_residual()));
    rep.drift_rv = std::max(rep.drift_rv, std::abs(s.rv_residual()));
  }
  return rep;
}

ShortcutBound shortcut_bound(const SampledPath& path, int n_periods) {
  if (n_periods < 1) throw DomainError("shortcut_bound: n_periods >= 1");
  const GeodesicParams params = GeodesicParams::from_ab(path.a(), path.b());
  // A linear front track (soliton parameters with r = 0, so kappa = 0) is a
  // global minimizer; the construction needs a periodic non-linear track.
  const PhaseState& s0 = path.samples().front();
  const double kappa_sq0 = s0.r.norm_sq() - path.b() * path.b();
  if (params.is_soliton() && std::abs(kappa_sq0) < 1e-12)
    throw NotApplicableError("shortcut_bound: linear front track");
  if (params.is_soliton())
    throw NotApplicableError("shortcut_bound: soliton is aperiodic");

  const double T = params.period_T;
  const double t_last = n_periods * T;
  if (t_last > path.t_end() - path.t_begin() + 1e-9)
    throw DomainError("shortcut_bound: path does not span n periods");

  const PhaseState sA = path.at(path.t_begin());
  const PhaseState sB = path.at(path.t_begin() + t_last);
  const Vec3 dy = sB.back() - sA.back();
  const double L = dy.norm();

  ShortcutBound out;
  out.geodesic_len = t_last;
  if (L < 1e-12) {
    // Back wheel returns: pure reorientation about it.
    out.shortcut_len = angle_between(sA.v, sB.v);
  } else {
    const Vec3 u = dy / L;
    out.shortcut_len = angle_between(sA.v, u) + L + angle_between(u, sB.v);
  }
  return out;
}

}  // namespace bikegeo
