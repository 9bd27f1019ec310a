#include "bikegeo/shooting.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace bikegeo {

namespace {

struct Chart {
  Vec3 x0;
  Vec3 v0;
  Vec3 d0;      // chart center on S^2 for x0'
  Vec3 E1, E2;  // tangent basis at d0
  Vec3 e1, e2;  // basis of v0-perp for the free part of p
};

Vec3 x_dot0_of(const Chart& c, double alpha, double beta) {
  return (c.d0 + alpha * c.E1 + beta * c.E2).normalized();
}

PhaseState state_of(const Chart& c, const Eigen::VectorXd& q) {
  const Vec3 xd0 = x_dot0_of(c, q(0), q(1));
  // Admissibility v0.(x0' - p) = 0 pins the v0-component of p.
  const Vec3 p = dot(xd0, c.v0) * c.v0 + q(2) * c.e1 + q(3) * c.e2;
  PhaseState s;
  s.x = c.x0;
  s.v = c.v0;
  s.p = p;
  s.r = xd0 - p;
  s.t = 0.0;
  return s;
}

Eigen::VectorXd endpoint_residual(const Chart& c, const Eigen::VectorXd& q,
                                  const FramePlacement& to,
                                  const ShootOptions& opts) {
  const double t_end = q(4);
  IntegrationOptions iopts;
  iopts.rel_tol = opts.integrator_rel_tol;
  iopts.abs_tol = opts.integrator_abs_tol;
  iopts.dt_out = t_end;  // endpoint only
  Eigen::VectorXd f(6);
  try {
    const SampledPath path = integrate(state_of(c, q), t_end, iopts);
    const PhaseState end = path.samples().back();
    f << end.x.x - to.x.x, end.x.y - to.x.y, end.x.z - to.x.z,
        end.v.x - to.v.x, end.v.y - to.v.y, end.v.z - to.v.z;
  } catch (const IntegrationError&) {
    // Penalize the point so the damping backs the step off.
    f.setConstant(1e6);
  }
  return f;
}

struct LmOutcome {
  Eigen::VectorXd q;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

LmOutcome levenberg_marquardt(const Chart& chart, Eigen::VectorXd q,
                              const FramePlacement& to, const ShootOptions& opts,
                              double duration_cap) {
  // Box constraints keep the chart valid and the momentum physical; wild
  // Gauss-Newton steps would otherwise hand the integrator arbitrarily
  // fast dynamics.
  const auto clamp_duration = [&](Eigen::VectorXd& v) {
    v(0) = std::clamp(v(0), -2.0, 2.0);
    v(1) = std::clamp(v(1), -2.0, 2.0);
    v(2) = std::clamp(v(2), -3.0, 3.0);
    v(3) = std::clamp(v(3), -3.0, 3.0);
    v(4) = std::clamp(v(4), opts.min_duration, duration_cap);
  };
  clamp_duration(q);

  Eigen::VectorXd f = endpoint_residual(chart, q, to, opts);
  double cost = f.squaredNorm();
  double lambda = 1e-3;
  LmOutcome out;

  for (int iter = 0; iter < opts.max_lm_iterations; ++iter) {
    out.iterations = iter + 1;
    if (std::sqrt(cost) <= opts.target_residual) break;
    // Give up on restarts that are clearly not contracting.
    if (iter >= 18 && cost > 1e-6) break;

    // Central-difference Jacobian; the duration column may become
    // one-sided at the clamp.
    Eigen::Matrix<double, 6, 5> J;
    for (int j = 0; j < 5; ++j) {
      const double step = 1e-6 * std::max(1.0, std::abs(q(j)));
      Eigen::VectorXd qp = q, qm = q;
      qp(j) += step;
      qm(j) -= step;
      clamp_duration(qp);
      clamp_duration(qm);
      const double denom = qp(j) - qm(j);
      const Eigen::VectorXd fp = endpoint_residual(chart, qp, to, opts);
      const Eigen::VectorXd fm = endpoint_residual(chart, qm, to, opts);
      J.col(j) = (fp - fm) / (denom != 0.0 ? denom : 1.0);
    }

    const Eigen::Matrix<double, 5, 5> JtJ = J.transpose() * J;
    const Eigen::Matrix<double, 5, 1> g = J.transpose() * f;

    bool stepped = false;
    for (int inner = 0; inner < 10; ++inner) {
      Eigen::Matrix<double, 5, 5> H = JtJ;
      for (int d = 0; d < 5; ++d) H(d, d) += lambda * std::max(JtJ(d, d), 1e-12);
      const Eigen::Matrix<double, 5, 1> dq = H.ldlt().solve(-g);
      Eigen::VectorXd q_new = q + dq;
      clamp_duration(q_new);
      const Eigen::VectorXd f_new = endpoint_residual(chart, q_new, to, opts);
      const double cost_new = f_new.squaredNorm();
      if (cost_new < cost) {
        q = q_new;
        f = f_new;
        cost = cost_new;
        lambda = std::max(1e-12, lambda * 0.35);
        stepped = true;
        break;
      }
      lambda *= 5.0;
    }
    if (!stepped) break;  // stagnated
  }

  out.q = q;
  out.residual = std::sqrt(cost);
  out.converged = out.residual <= 10.0 * opts.target_residual &&
                  q(4) > opts.min_duration * (1.0 + 1e-9);
  return out;
}

}  // namespace

std::vector<ShootingResult> shoot(const FramePlacement& from,
                                  const FramePlacement& to,
                                  const ShootOptions& opts) {
  if (std::abs(from.v.norm() - 1.0) > 1e-9 || std::abs(to.v.norm() - 1.0) > 1e-9)
    throw DomainError("shoot: frame directions must be unit vectors");

  const Vec3 gap = to.x - from.x;
  const double gap_len = gap.norm();
  const double base_duration =
      opts.duration_hint > 0.0
          ? opts.duration_hint
          : std::max(10.0 * opts.min_duration,
                     gap_len + angle_between(from.v, to.v) + 0.2);

  // Chart centers for the initial front velocity: informed guesses first,
  // then quasi-uniform directions from a golden-angle spiral on the
  // sphere; the seed rotates the start of the sequence.
  std::vector<Vec3> centers;
  if (gap_len > 1e-9) centers.push_back(gap / gap_len);
  centers.push_back(to.v);
  centers.push_back(any_perpendicular(from.v));
  const double golden = 3.14159265358979323846 * (3.0 - std::sqrt(5.0));
  const int fib_count = std::max(opts.restarts, 8);
  const int offset = static_cast<int>(opts.seed % 97);
  for (int i = 0; static_cast<int>(centers.size()) < opts.restarts; ++i) {
    const int j = i + offset;
    const double z = 1.0 - 2.0 * ((j % fib_count) + 0.5) / fib_count;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * j;
    centers.push_back({rad * std::cos(phi), rad * std::sin(phi), z});
  }

  const double duration_cap = opts.max_duration > 0.0
                                  ? opts.max_duration
                                  : std::max(2.5 * base_duration, 8.0);

  std::vector<ShootingResult> results;
  const double duration_factors[] = {1.0, 1.7, 0.6, 1.0, 2.6, 1.0, 0.45, 1.3};

  for (int restart = 0; restart < opts.restarts; ++restart) {
    Chart chart;
    chart.x0 = from.x;
    chart.v0 = from.v;
    chart.d0 = centers[restart % centers.size()];
    chart.E1 = any_perpendicular(chart.d0);
    chart.E2 = cross(chart.d0, chart.E1);
    chart.e1 = any_perpendicular(from.v);
    chart.e2 = cross(from.v, chart.e1);

    Eigen::VectorXd q(5);
    if (restart == 0) {
      q << 0.0, 0.0, 0.0, 0.0, base_duration;
    } else if (restart == 1) {
      // Straight-riding seed: p = x0' (r0 = 0).
      q << 0.0, 0.0, dot(chart.d0, chart.e1), dot(chart.d0, chart.e2),
          base_duration;
    } else {
      // Momentum components from a Halton(2,3) sequence over the box.
      const auto halton = [](int index, int base) {
        double f = 1.0, r = 0.0;
        for (int i = index + 1; i > 0; i /= base) {
          f /= base;
          r += f * (i % base);
        }
        return r;
      };
      const int hindex = restart + static_cast<int>(opts.seed % 97);
      q << 0.0, 0.0, 3.6 * (halton(hindex, 2) - 0.5),
          3.6 * (halton(hindex, 3) - 0.5),
          base_duration * duration_factors[restart % 8];
    }

    LmOutcome lm = levenberg_marquardt(chart, q, to, opts, duration_cap);
    if (!lm.converged) continue;

    // Re-integrate the candidate at tight tolerance and keep the honest
    // endpoint residual.
    const PhaseState seed = state_of(chart, lm.q);
    IntegrationOptions verify;
    verify.rel_tol = 1e-12;
    verify.abs_tol = 1e-13;
    verify.dt_out = lm.q(4);
    const PhaseState end = integrate(seed, lm.q(4), verify).samples().back();
    const double residual =
        std::sqrt((end.x - to.x).norm_sq() + (end.v - to.v).norm_sq());

    ShootingResult res;
    res.p = seed.p;
    res.x_dot0 = seed.x_dot();
    res.duration = lm.q(4);
    res.residual = residual;
    res.iterations = lm.iterations;
    res.converged = residual <= 1e-8;
    if (!res.converged) continue;

    // Distinct-solution clustering by parameter distance.
    bool duplicate = false;
    for (const ShootingResult& r : results) {
      if ((r.p - res.p).norm() < 1e-4 &&
          std::abs(r.duration - res.duration) < 1e-4 &&
          (r.x_dot0 - res.x_dot0).norm() < 1e-4) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) results.push_back(res);
    if (opts.stop_after > 0 &&
        static_cast<int>(results.size()) >= opts.stop_after)
      break;
  }

  if (results.empty())
    throw NoSolutionFound("shoot: no restart converged (existence undecided)");
  std::sort(results.begin(), results.end(),
            [](const ShootingResult& l, const ShootingResult& r) {
              return l.duration < r.duration;
            });
  return results;
}

}  // namespace bikegeo
