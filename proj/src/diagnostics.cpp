#include "bikegeo/diagnostics.hpp"

#include <cmath>

#include "bikegeo/closedform.hpp"
#include "bikegeo/dynamics.hpp"
#include "bikegeo/elliptic.hpp"
#include "bikegeo/errors.hpp"
#include "bikegeo/rodshape.hpp"
#include "bikegeo/transforms.hpp"

namespace bikegeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

void add(std::vector<CheckResult>& out, const std::string& name, double measured,
         double bound) {
  out.push_back({name, measured, bound, measured <= bound});
}

std::vector<CheckResult> elliptic_suite() {
  using namespace elliptic;
  std::vector<CheckResult> out;
  double worst_id = 0.0;
  for (double m : {0.1, 0.5, 0.9}) {
    const Modulus mod = Modulus::from_m(m);
    for (double u = -5.0; u <= 5.0; u += 0.21) {
      const JacobiTriple j = jacobi_sn_cn_dn(u, mod);
      worst_id = std::max(worst_id, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
      worst_id = std::max(worst_id, std::abs(j.dn * j.dn + m * j.sn * j.sn - 1.0));
    }
  }
  add(out, "jacobi identities sn^2+cn^2=1, dn^2+m sn^2=1", worst_id, 1e-12);

  double worst_leg = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double m = 0.1 * i;
    const Modulus mod = Modulus::from_m(m), modc = Modulus::from_m(1.0 - m);
    worst_leg = std::max(
        worst_leg,
        std::abs(complete_e(mod) * complete_k(modc) +
                 complete_e(modc) * complete_k(mod) -
                 complete_k(mod) * complete_k(modc) - kPi / 2));
  }
  add(out, "Legendre relation", worst_leg, 1e-12);

  double worst_qp = 0.0;
  for (double m : {0.3, 0.7}) {
    const Modulus mod = Modulus::from_m(m);
    const double K = complete_k(mod);
    for (double x : {-1.1, 0.4, 2.7}) {
      worst_qp = std::max(worst_qp,
                          std::abs(incomplete_e(x + 2 * K, mod) -
                                   incomplete_e(x, mod) - 2 * complete_e(mod)));
      worst_qp = std::max(
          worst_qp, std::abs(incomplete_pi(x + 2 * K, 0.4, mod) -
                             incomplete_pi(x, 0.4, mod) - 2 * complete_pi(0.4, mod)));
    }
  }
  add(out, "quasi-periodicity of incomplete E, Pi", worst_qp, 1e-11);
  return out;
}

std::vector<CheckResult> dynamics_suite() {
  std::vector<CheckResult> out;
  double worst_H = 0.0, worst_b = 0.0, worst_con = 0.0, worst_killing = 0.0;
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {1.5, 2.0}}) {
    const GeodesicParams params = GeodesicParams::from_ab(a, b);
    IntegrationOptions opts;
    opts.dt_out = params.period_T / 64;
    const SampledPath path =
        integrate(aligned_initial_state(a, b), 4.0 * params.period_T, opts);
    const InvariantReport rep = invariant_report(path);
    worst_H = std::max({worst_H, rep.drift_H, rep.drift_p});
    worst_b = std::max(worst_b, rep.drift_b);
    worst_con = std::max({worst_con, rep.drift_vnorm, rep.drift_rv});
    const MagneticData md = magnetic_data(path.samples().front());
    for (const PhaseState& s : path.samples()) {
      const Vec3 lhs = hamiltonian_rhs(s).r_dot;
      const Vec3 rhs = cross(s.x_dot(), md.field_at(s.x));
      worst_killing = std::max(worst_killing, (lhs - rhs).norm());
    }
  }
  add(out, "H and p drift over 4T", worst_H, 1e-9);
  add(out, "b drift over 4T", worst_b, 1e-9);
  add(out, "constraint residuals |v|-1, r.v", worst_con, 1e-10);
  add(out, "Killing field x''= x' x K", worst_killing, 1e-8);

  const SampledPath circle = integrate(canonical_initial_state(0, 0), 2 * kPi, {});
  double worst_circle = 0.0;
  for (const PhaseState& s : circle.samples()) {
    worst_circle = std::max(worst_circle, std::abs((s.x - s.back()).norm() - 1.0));
    worst_circle = std::max(worst_circle, (s.back() - Vec3{-1, 0, 0}).norm());
  }
  add(out, "p=0 circle branch: fixed hub, unit radius", worst_circle, 1e-9);
  return out;
}

std::vector<CheckResult> rodshape_suite() {
  std::vector<CheckResult> out;
  double worst_p = 0.0, worst_energy = 0.0, worst_range = 0.0, worst_radial = 0.0;
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {1.5, 2.0}, {0.3, 0.0}}) {
    const GeodesicParams params = GeodesicParams::from_ab(a, b);
    IntegrationOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-13;
    opts.dt_out = 2.0 * params.period_T / 401;
    const SampledPath path =
        integrate(aligned_initial_state(a, b), 2.0 * params.period_T, opts);
    const Vec3 p0 = path.samples().front().p;
    const MagneticData md = magnetic_data(path.samples().front());
    const Ranges rng = ranges(a, b);
    for (const FrenetSample& f : frenet_series(path, params)) {
      const Vec3 prec = (0.5 * (1 + a * a - f.kappa * f.kappa)) * f.T -
                        f.kappa_prime * f.N - f.kappa * (f.tau - b) * f.B_vec;
      worst_p = std::max(worst_p, (prec - p0).norm());
      const double e21 =
          f.kappa_prime * f.kappa_prime +
          0.25 * std::pow(1 + a * a - f.kappa * f.kappa, 2) +
          f.kappa * f.kappa * (f.tau - b) * (f.tau - b) - (a * a + b * b);
      worst_energy = std::max(worst_energy, std::abs(e21));
      worst_range = std::max(
          {worst_range, rng.kappa_min - std::abs(f.kappa),
           std::abs(f.kappa) - rng.kappa_max, rng.tau_min - f.tau,
           f.tau - rng.tau_max});
    }
    const Vec3 u = md.axis_dir();
    const double p2 = p0.norm_sq();
    for (const PhaseState& s : path.samples()) {
      const Vec3 w = s.x - md.K_axis_point;
      const Vec3 perp = w - dot(w, u) * u;
      const double ksq = s.r.norm_sq() - b * b;
      worst_radial = std::max(
          worst_radial,
          std::abs(b * b + ksq - p2 * perp.norm_sq() - b * b / p2));
    }
  }
  add(out, "constant-momentum reconstruction", worst_p, 1e-7);
  add(out, "energy law residual", worst_energy, 1e-8);
  add(out, "kappa/tau range compliance", worst_range, 1e-8);
  add(out, "radial periodicity identity", worst_radial, 1e-8);
  return out;
}

std::vector<CheckResult> closedform_suite() {
  std::vector<CheckResult> out;
  double worst_ksq = 0.0, worst_mono = 0.0, worst_rperiod = 0.0;
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {1.5, 2.0}}) {
    const GeodesicParams params = GeodesicParams::from_ab(a, b);
    IntegrationOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-13;
    opts.dt_out = params.period_T / 128;
    const SampledPath path =
        integrate(aligned_initial_state(a, b), 2.5 * params.period_T, opts);
    for (const PhaseState& s : path.samples()) {
      const double ksq_num = s.r.norm_sq() - b * b;
      worst_ksq = std::max(worst_ksq,
                           std::abs(ksq_num - kappa_sq_closed(s.t, params)));
    }
    const ScrewMotion closed = monodromy_closed(params);
    const ScrewMotion num = extract_monodromy(path, params);
    worst_mono = std::max(worst_mono,
                          angle_distance(closed.delta_theta, num.delta_theta));
    worst_mono = std::max(worst_mono, std::abs(closed.delta_z - num.delta_z));
    for (double t = 0.0; t < params.period_T; t += params.period_T / 16) {
      worst_rperiod =
          std::max(worst_rperiod,
                   std::abs(cylindrical_track(t + params.period_T, params).r -
                            cylindrical_track(t, params).r));
    }
  }
  add(out, "kappa^2 closed form vs numeric", worst_ksq, 1e-7);
  add(out, "monodromy closed form vs numeric", worst_mono, 1e-6);
  add(out, "radial period r(t+T) = r(t)", worst_rperiod, 1e-10);
  return out;
}

std::vector<CheckResult> transforms_suite() {
  std::vector<CheckResult> out;
  double worst_inv = 0.0, worst_speed = 0.0, worst_sq = 0.0, worst_half = 0.0;
  for (auto [a, b] : {std::pair{0.5, 1.0}, {0.7, 0.5}}) {
    const GeodesicParams params = GeodesicParams::from_ab(a, b);
    IntegrationOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-13;
    opts.dt_out = params.period_T / 64;
    const SampledPath path =
        integrate(aligned_initial_state(a, b), 2.5 * params.period_T, opts);
    const SampledPath flipped = flip_path(path);
    for (std::size_t i = 0; i < path.samples().size(); ++i) {
      const PhaseState& s = path.samples()[i];
      const FramePose twice = flip(flip(FramePose{s.x, s.v}));
      worst_inv = std::max(worst_inv, (twice.x - s.x).norm() +
                                          (twice.v - s.v).norm());
      worst_speed = std::max(
          worst_speed,
          std::abs(flipped.samples()[i].x_dot().norm() - s.x_dot().norm()));
    }
    const ScrewMotion M = extract_monodromy(path, params);
    const ScrewMotion I = half_monodromy(path, params);
    for (const Vec3& q : {Vec3{1, 2, 3}, Vec3{-0.5, 0.3, 2}}) {
      worst_sq = std::max(worst_sq, (I.apply(I.apply(q)) - M.apply(q)).norm());
    }
    worst_half = std::max(worst_half, std::abs(I.delta_z - 0.5 * M.delta_z));
  }
  add(out, "flip involution", worst_inv, 1e-14);
  add(out, "flip preserves speed", worst_speed, 1e-9);
  add(out, "I o I = M on probe points", worst_sq, 1e-6);
  add(out, "dz(I) = dz(M)/2", worst_half, 1e-8);
  return out;
}

}  // namespace

std::vector<CheckResult> run_check_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (all || suite == "elliptic") {
    auto r = elliptic_suite();
    out.insert(out.end(), r.begin(), r.end());
  }
  if (all || suite == "dynamics") {
    auto r = dynamics_suite();
    out.insert(out.end(), r.begin(), r.end());
  }
  if (all || suite == "rodshape") {
    auto r = rodshape_suite();
    out.insert(out.end(), r.begin(), r.end());
  }
  if (all || suite == "closedform") {
    auto r = closedform_suite();
    out.insert(out.end(), r.begin(), r.end());
  }
  if (all || suite == "transforms") {
    auto r = transforms_suite();
    out.insert(out.end(), r.begin(), r.end());
  }
  if (out.empty())
    throw DomainError("check: unknown suite '" + suite +
                      "' (elliptic|dynamics|rodshape|closedform|transforms|all)");
  return out;
}

}  // namespace bikegeo
