#include "bikegeo/transforms.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "bikegeo/closedform.hpp"

namespace bikegeo {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

double angle_distance(double alpha, double beta) {
  double d = std::abs(wrap_angle(alpha) - wrap_angle(beta));
  return std::min(d, kTwoPi - d);
}

double RigidMotion::orthogonality_residual() const {
  const Mat3 should_be_id = rotation * rotation.transposed();
  double res = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      res = std::max(res, std::abs(should_be_id.m[i][j] - (i == j ? 1.0 : 0.0)));
  return res;
}

Vec3 ScrewMotion::apply(const Vec3& q) const {
  const Mat3 R = rotation_about(axis_dir, delta_theta);
  return axis_point + R * (q - axis_point) + delta_z * axis_dir;
}

RigidMotion ScrewMotion::to_rigid() const {
  RigidMotion m;
  m.rotation = rotation_about(axis_dir, delta_theta);
  m.translation = axis_point - m.rotation * axis_point + delta_z * axis_dir;
  return m;
}

ScrewMotion ScrewMotion::with_positive_translation() const {
  if (delta_z >= 0.0) return *this;
  ScrewMotion s = *this;
  s.axis_dir = -axis_dir;
  s.delta_z = -delta_z;
  s.signed_theta = -signed_theta;
  s.delta_theta = wrap_angle(-delta_theta);
  s.winding = static_cast<long>(std::floor(s.signed_theta / kTwoPi));
  return s;
}

ScrewMotion screw_from_rigid(const RigidMotion& motion, const Vec3& axis_hint) {
  const Mat3& R = motion.rotation;
  const Vec3& t = motion.translation;
  const double cos_theta = std::clamp(0.5 * (R.trace() - 1.0), -1.0, 1.0);
  // Antisymmetric part: w = sin(theta) * axis.
  const Vec3 w{0.5 * (R.m[2][1] - R.m[1][2]), 0.5 * (R.m[0][2] - R.m[2][0]),
               0.5 * (R.m[1][0] - R.m[0][1])};
  const double sin_norm = w.norm();

  Vec3 axis;
  double theta;
  if (sin_norm > 1e-8) {
    axis = w / sin_norm;
    theta = std::atan2(sin_norm, cos_theta);
    if (dot(axis, axis_hint) < 0.0) {
      axis = -axis;
      theta = -theta;
    }
  } else if (cos_theta > 0.0) {
    // Rotation (numerically) trivial: a pure translation along the hint.
    axis = axis_hint.normalized();
    theta = std::asin(std::clamp(dot(w, axis), -1.0, 1.0));
  } else {
    // Rotation by pi: R + I = 2 axis axis^T, read the axis off the
    // dominant column of the symmetric part.
    Vec3 best{0, 0, 0};
    for (int j = 0; j < 3; ++j) {
      const Vec3 col{R.m[0][j] + (j == 0), R.m[1][j] + (j == 1),
                     R.m[2][j] + (j == 2)};
      if (col.norm_sq() > best.norm_sq()) best = col;
    }
    axis = best.normalized();
    if (dot(axis, axis_hint) < 0.0) axis = -axis;
    theta = kPi;
  }

  ScrewMotion s;
  s.axis_dir = axis;
  s.signed_theta = theta;
  s.delta_theta = wrap_angle(theta);
  s.winding = static_cast<long>(std::floor(theta / kTwoPi));
  s.delta_z = dot(t, axis);
  const Vec3 t_perp = t - s.delta_z * axis;

  if (std::abs(std::sin(0.5 * theta)) > 1e-7) {
    // (I - R) q = t_perp in the axis-perpendicular plane:
    // q = (t_perp + cot(theta/2) axis x t_perp) / 2.
    const double cot_half = std::cos(0.5 * theta) / std::sin(0.5 * theta);
    s.axis_point = 0.5 * (t_perp + cot_half * cross(axis, t_perp));
  } else {
    // Pure translation: any point serves as axis anchor, but the motion is
    // a screw only if the perpendicular translation vanishes.
    if (t_perp.norm() > 1e-5 * (1.0 + t.norm()))
      throw ExtractionError(
          "screw decomposition: translation not parallel to the rotation axis");
    s.axis_point = {0, 0, 0};
  }
  return s;
}

FramePose flip(const FramePose& pose) {
  return {pose.x - 2.0 * pose.v, -pose.v};
}

namespace {

PhaseState flip_state(const PhaseState& s) {
  PhaseState f;
  const Vec3 xd = s.x_dot();
  const Vec3 xd_flip = -xd + 2.0 * dot(xd, s.v) * s.v;
  f.x = s.x - 2.0 * s.v;
  f.v = -s.v;
  f.p = s.p;
  f.r = xd_flip - s.p;
  f.t = s.t;
  return f;
}

PhaseDerivative flip_derivative(const PhaseState& s, const PhaseDerivative& d) {
  // Chain rule through (x, v) -> (x - 2v, -v) with x'' = r'.
  const Vec3 xd = s.x_dot();
  const Vec3 xdd = d.r_dot;
  const Vec3 xd_flip = -xd + 2.0 * dot(xd, s.v) * s.v;
  const Vec3 xdd_flip = -xdd + 2.0 * (dot(xdd, s.v) + dot(xd, d.v_dot)) * s.v +
                        2.0 * dot(xd, s.v) * d.v_dot;
  PhaseDerivative out;
  out.x_dot = xd_flip;
  out.v_dot = -d.v_dot;
  out.p_dot = {0, 0, 0};
  out.r_dot = xdd_flip;  // r~ = x~' - p, so r~' = x~''
  return out;
}

}  // namespace

SampledPath flip_path(const SampledPath& path) {
  std::vector<PhaseState> samples;
  samples.reserve(path.samples().size());
  for (const PhaseState& s : path.samples()) samples.push_back(flip_state(s));

  std::vector<StepRecord> steps;
  steps.reserve(path.steps().size());
  for (const StepRecord& st : path.steps()) {
    StepRecord f;
    f.t0 = st.t0;
    f.h = st.h;
    f.y0 = flip_state(st.y0);
    f.f0 = flip_derivative(st.y0, st.f0);
    f.y1 = flip_state(st.y1);
    f.f1 = flip_derivative(st.y1, st.f1);
    steps.push_back(f);
  }
  return SampledPath(std::move(samples), std::move(steps), path.a(), path.b(),
                     path.pre_projection_vdrift(), path.pre_projection_rvdrift());
}

std::pair<double, double> reflect_params(double a, double b) { return {a, -b}; }

TorsionShiftResult torsion_shift_rescale(const GeodesicParams& params) {
  const double a = params.a, b = params.b;
  if (a <= 0.0)
    throw DomainError("torsion_shift_rescale: the circle (a = 0) has no partner");
  TorsionShiftResult out;
  out.image = GeodesicParams::from_ab(1.0 / a, -b / a);
  out.scale = a;

  // Sampled verification of the curvature/torsion relations against the
  // closed forms of both parameter pairs (skipped at the aperiodic point).
  if (!params.is_soliton()) {
    const double T_img = out.image.period_T;
    for (int i = 0; i <= 32; ++i) {
      const double t = T_img * i / 32.0;
      const double k_img = std::abs(kappa_closed(t, out.image));
      const double k_src = std::abs(kappa_closed(t / a, params)) / a;
      if (std::abs(k_img - k_src) > 1e-8)
        throw ExtractionError("torsion_shift_rescale: curvature relation failed");
      const double tau_img = tau_closed(t, out.image);
      const double tau_src = tau_closed(t / a, params) / a - b / a;
      if (std::abs(tau_img - tau_src) > 1e-8)
        throw ExtractionError("torsion_shift_rescale: torsion relation failed");
    }
  }
  return out;
}

Registration register_points(const std::vector<Vec3>& source,
                             const std::vector<Vec3>& target) {
  if (source.size() != target.size() || source.size() < 3)
    throw DomainError("register_points: need >= 3 paired points");
  const std::size_t n = source.size();

  Eigen::Vector3d cs = Eigen::Vector3d::Zero(), ct = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    cs += Eigen::Vector3d(source[i].x, source[i].y, source[i].z);
    ct += Eigen::Vector3d(target[i].x, target[i].y, target[i].z);
  }
  cs /= static_cast<double>(n);
  ct /= static_cast<double>(n);

  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d s(source[i].x, source[i].y, source[i].z);
    const Eigen::Vector3d t(target[i].x, target[i].y, target[i].z);
    H += (s - cs) * (t - ct).transpose();
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d U = svd.matrixU(), V = svd.matrixV();
  Eigen::Matrix3d R = V * U.transpose();
  if (R.determinant() < 0.0) {
    V.col(2) *= -1.0;
    R = V * U.transpose();
  }
  const Eigen::Vector3d trans = ct - R * cs;

  Registration reg;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) reg.motion.rotation.m[i][j] = R(i, j);
  reg.motion.translation = {trans(0), trans(1), trans(2)};

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 mapped = reg.motion.apply(source[i]);
    ss += (mapped - target[i]).norm_sq();
  }
  reg.rms = std::sqrt(ss / static_cast<double>(n));
  return reg;
}

namespace {

void require_quasi_periodic(const GeodesicParams& params) {
  if (params.is_circle() || !params.has_axis_data())
    throw NotApplicableError("monodromy: circular front track");
  if (params.is_soliton())
    throw NotApplicableError("monodromy: soliton is aperiodic");
}

// Front+back correspondences between times t_i and t_i + shift, fronts
// taken from `target_path` (pass the flipped path for half-monodromy).
Registration register_shifted(const SampledPath& source_path,
                              const SampledPath& target_path, double shift,
                              double period) {
  const double t0 = source_path.t_begin();
  constexpr int kPairs = 16;
  std::vector<Vec3> source, target;
  source.reserve(2 * kPairs);
  target.reserve(2 * kPairs);
  for (int i = 0; i < kPairs; ++i) {
    const double t = t0 + period * i / kPairs;
    const PhaseState s = source_path.at(t);
    const PhaseState g = target_path.at(t + shift);
    source.push_back(s.front());
    source.push_back(s.back());
    target.push_back(g.front());
    target.push_back(g.back());
  }
  return register_points(source, target);
}

}  // namespace

MonodromyExtraction extract_monodromy_detailed(const SampledPath& path,
                                               const GeodesicParams& params) {
  require_quasi_periodic(params);
  const double T = params.period_T;
  if (path.t_end() - path.t_begin() + 1e-9 < 2.0 * T)
    throw DomainError("extract_monodromy: path must span >= 2 periods");

  const Registration reg = register_shifted(path, path, T, T);
  if (reg.rms > 1e-7)
    throw ExtractionError("extract_monodromy: registration residual too large");

  const Vec3 p_hat = path.samples().front().p.normalized();
  MonodromyExtraction out;
  out.screw = screw_from_rigid(reg.motion, p_hat);
  out.registration_rms = reg.rms;
  if (cross(out.screw.axis_dir, p_hat).norm() > 1e-6)
    throw ExtractionError("extract_monodromy: axis not parallel to p");
  return out;
}

ScrewMotion extract_monodromy(const SampledPath& path,
                              const GeodesicParams& params) {
  return extract_monodromy_detailed(path, params).screw;
}

ScrewMotion half_monodromy(const SampledPath& path, const GeodesicParams& params) {
  require_quasi_periodic(params);
  if (params.b == 0.0)
    throw NotApplicableError("half_monodromy: planar geodesic (b = 0)");
  const double T = params.period_T;
  if (path.t_end() - path.t_begin() + 1e-9 < 2.0 * T)
    throw DomainError("half_monodromy: path must span >= 2 periods");

  const SampledPath flipped = flip_path(path);
  const Registration reg = register_shifted(path, flipped, 0.5 * T, T);
  if (reg.rms > 1e-7)
    throw ExtractionError("half_monodromy: registration residual too large");

  const Vec3 p_hat = path.samples().front().p.normalized();
  const ScrewMotion half = screw_from_rigid(reg.motion, p_hat);
  const ScrewMotion mono = extract_monodromy(path, params);

  // I o I = M on probe points.
  const Vec3 probes[4] = {{0.3, -0.7, 1.1}, {-2.0, 0.4, 0.9}, {1.5, 2.5, -3.0},
                          {0.0, 0.0, 0.0}};
  for (const Vec3& q : probes) {
    const Vec3 twice = half.apply(half.apply(q));
    if ((twice - mono.apply(q)).norm() > 1e-6)
      throw ExtractionError("half_monodromy: I^2 != M");
  }
  if (std::abs(half.delta_z - 0.5 * mono.delta_z) > 1e-8)
    throw ExtractionError("half_monodromy: dz(I) != dz(M)/2");
  return half;
}

ConjectureReport conjecture_check(const SampledPath& path,
                                  const GeodesicParams& params, double tol) {
  if (params.b == 0.0)
    throw NotApplicableError("conjecture_check: planar geodesic excluded");
  const ScrewMotion half = half_monodromy(path, params).with_positive_translation();
  const ScrewMotion mono =
      extract_monodromy(path, params).with_positive_translation();
  ConjectureReport rep;
  rep.angle_found = half.delta_theta;
  rep.angle_predicted = wrap_angle(0.5 * mono.delta_theta + kPi);
  rep.matches = angle_distance(rep.angle_found, rep.angle_predicted) <= tol;
  return rep;
}

}  // namespace bikegeo
