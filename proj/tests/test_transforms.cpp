#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bikegeo/closedform.hpp"
#include "bikegeo/dynamics.hpp"
#include "bikegeo/rodshape.hpp"
#include "bikegeo/transforms.hpp"

using namespace bikegeo;

namespace {
constexpr double kPi = 3.14159265358979323846;

SampledPath run(double a, double b, double periods, int per_period = 64,
                double rel = 1e-12) {
  const GeodesicParams g = GeodesicParams::from_ab(a, b);
  IntegrationOptions opts;
  opts.rel_tol = rel;
  opts.abs_tol = rel * 0.1;
  opts.dt_out = g.period_T / per_period;
  return integrate(aligned_initial_state(a, b), periods * g.period_T, opts);
}
}  // namespace

TEST_CASE("flip is the stated involution") {
  const FramePose pose{{1, 2, 3}, {0, 0, 1}};
  const FramePose f = flip(pose);
  CHECK((f.x - Vec3{1, 2, 1}).norm() <= 1e-15);
  CHECK((f.v - Vec3{0, 0, -1}).norm() <= 1e-15);
  const FramePose ff = flip(f);
  CHECK((ff.x - pose.x).norm() <= 1e-15);
  CHECK((ff.v - pose.v).norm() <= 1e-15);
  // Back wheel unchanged: x - v = x~ - v~.
  CHECK(((pose.x - pose.v) - (f.x - f.v)).norm() <= 1e-15);
}

TEST_CASE("flip_path keeps the back track, speed, and parameters") {
  auto path = run(0.5, 1.0, 2.5);
  auto flipped = flip_path(path);
  REQUIRE(flipped.samples().size() == path.samples().size());
  for (std::size_t i = 0; i < path.samples().size(); ++i) {
    const PhaseState& s = path.samples()[i];
    const PhaseState& f = flipped.samples()[i];
    CHECK((f.back() - s.back()).norm() <= 1e-12);
    CHECK(std::abs(f.x_dot().norm() - s.x_dot().norm()) <= 1e-9);
    CHECK(std::abs(dot(f.r, f.v)) <= 1e-10);
    // p~ = p and the parameters are recomputed unchanged.
    CHECK((f.p - s.p).norm() <= 1e-12);
    const GeodesicParams g = params_from_state(f);
    CHECK(g.a == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(g.b == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("flipped circle is a unit circle about the same hub") {
  auto path = integrate(aligned_initial_state(0, 1), 6.0, {});
  auto flipped = flip_path(path);
  const Vec3 hub = path.samples().front().back();
  for (const PhaseState& f : flipped.samples()) {
    CHECK((f.back() - hub).norm() <= 1e-9);
    CHECK(std::abs((f.x - hub).norm() - 1.0) <= 1e-9);
  }
}

TEST_CASE("flipped curvature is the half-period shift") {
  const double a = 0.5, b = 1.0;
  const GeodesicParams g = GeodesicParams::from_ab(a, b);
  auto path = run(a, b, 3);
  auto flipped = flip_path(path);
  for (double t = 0; t <= 1.4 * g.period_T; t += g.period_T / 41) {
    const PhaseState orig = path.at(t);
    const PhaseState fl = flipped.at(t + 0.5 * g.period_T);
    const double k_orig = std::sqrt(std::max(0.0, orig.r.norm_sq() - b * b));
    const double k_flip = std::sqrt(std::max(0.0, fl.r.norm_sq() - b * b));
    CHECK(std::abs(k_flip - k_orig) <= 1e-6);
  }
}

TEST_CASE("reflect_params") {
  CHECK(reflect_params(0.5, 1.0) == std::pair{0.5, -1.0});
  CHECK(reflect_params(0.7, 0.0) == std::pair{0.7, 0.0});
  auto twice = reflect_params(0.5, -1.0);
  CHECK(reflect_params(twice.first, twice.second) == std::pair{0.5, -1.0});
}

TEST_CASE("torsion shift and rescale") {
  // The relations kappa~(t) = kappa(t/a)/a and tau~(t) = tau(t/a)/a - b/a
  // hold with image parameters (1/a, -b/a); (1/a, +b/a) is the mirror
  // image.  The verification against both closed forms runs inside.
  {
    const TorsionShiftResult r =
        torsion_shift_rescale(GeodesicParams::from_ab(2.0, 1.0));
    CHECK(r.scale == doctest::Approx(2.0));
    CHECK(r.image.a == doctest::Approx(0.5));
    CHECK(r.image.b == doctest::Approx(-0.5));
  }
  {
    // a = 1 is a fixed point of a -> 1/a.
    const TorsionShiftResult r =
        torsion_shift_rescale(GeodesicParams::from_ab(1.0, 0.7));
    CHECK(r.image.a == doctest::Approx(1.0));
    CHECK(std::abs(r.image.b) == doctest::Approx(0.7));
  }
  {
    // b = 0 recovers the planar wide/narrow involution a -> 1/a.
    const TorsionShiftResult r =
        torsion_shift_rescale(GeodesicParams::from_ab(0.4, 0.0));
    CHECK(r.image.a == doctest::Approx(2.5));
    CHECK(r.image.b == 0.0);
  }
  CHECK_THROWS_AS(torsion_shift_rescale(GeodesicParams::from_ab(0.0, 1.0)),
                  DomainError);
  // Applying the involution twice returns to the start.
  const TorsionShiftResult once =
      torsion_shift_rescale(GeodesicParams::from_ab(3.0, 2.0));
  const TorsionShiftResult back = torsion_shift_rescale(once.image);
  CHECK(back.image.a == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(back.image.b) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("rigid registration recovers a synthetic motion") {
  RigidMotion truth;
  truth.rotation = rotation_about(Vec3{1, 2, -1}.normalized(), 0.83);
  truth.translation = {0.4, -1.2, 2.0};
  std::vector<Vec3> src, dst;
  for (int i = 0; i < 9; ++i) {
    const Vec3 q{std::sin(1.7 * i), std::cos(0.9 * i + 0.3), 0.25 * i};
    src.push_back(q);
    dst.push_back(truth.apply(q));
  }
  const Registration reg = register_points(src, dst);
  CHECK(reg.rms <= 1e-12);
  CHECK(reg.motion.orthogonality_residual() <= 1e-12);
  CHECK(reg.motion.rotation.det() == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < src.size(); ++i)
    CHECK((reg.motion.apply(src[i]) - dst[i]).norm() <= 1e-12);
}

TEST_CASE("screw decomposition of synthetic motions") {
  // Generic screw.
  {
    ScrewMotion truth;
    truth.axis_point = {1, 0, -2};
    truth.axis_dir = Vec3{0, 1, 1}.normalized();
    truth.delta_theta = 2.2;
    truth.signed_theta = 2.2;
    truth.delta_z = 0.7;
    const ScrewMotion rec = screw_from_rigid(truth.to_rigid(), truth.axis_dir);
    CHECK(angle_distance(rec.delta_theta, truth.delta_theta) <= 1e-12);
    CHECK(rec.delta_z == doctest::Approx(truth.delta_z).epsilon(1e-12));
    CHECK(cross(rec.axis_dir, truth.axis_dir).norm() <= 1e-12);
    for (const Vec3& q : {Vec3{0.3, 1, 2}, Vec3{-4, 0.5, 0}})
      CHECK((rec.apply(q) - truth.apply(q)).norm() <= 1e-11);
  }
  // Rotation angle pi: axis recovered from the symmetric part.
  {
    ScrewMotion truth;
    truth.axis_point = {0.5, -0.5, 0};
    truth.axis_dir = Vec3{1, 1, 0}.normalized();
    truth.delta_theta = kPi;
    truth.signed_theta = kPi;
    truth.delta_z = -0.4;
    const ScrewMotion rec = screw_from_rigid(truth.to_rigid(), truth.axis_dir);
    CHECK(angle_distance(rec.delta_theta, kPi) <= 1e-7);
    for (const Vec3& q : {Vec3{1, 2, 3}, Vec3{0, -1, 1}})
      CHECK((rec.apply(q) - truth.apply(q)).norm() <= 1e-9);
  }
  // Pure translation along the hint.
  {
    RigidMotion trans;
    trans.translation = {0, 0, 1.5};
    const ScrewMotion rec = screw_from_rigid(trans, Vec3{0, 0, 1});
    CHECK(angle_distance(rec.delta_theta, 0.0) <= 1e-12);
    CHECK(rec.delta_z == doctest::Approx(1.5));
  }
  // Perpendicular translation with trivial rotation is not a screw about
  // the hint.
  {
    RigidMotion bad;
    bad.translation = {1, 0, 0};
    CHECK_THROWS_AS(screw_from_rigid(bad, Vec3{0, 0, 1}), ExtractionError);
  }
}

TEST_CASE("positive-translation normalization") {
  ScrewMotion s;
  s.axis_point = {0, 0, 0};
  s.axis_dir = {0, 0, 1};
  s.delta_theta = 1.0;
  s.signed_theta = 1.0;
  s.delta_z = -2.0;
  const ScrewMotion n = s.with_positive_translation();
  CHECK(n.delta_z == doctest::Approx(2.0));
  CHECK((n.axis_dir - Vec3{0, 0, -1}).norm() <= 1e-15);
  CHECK(n.delta_theta == doctest::Approx(2 * kPi - 1.0));
  // The normalized form is the same motion.
  for (const Vec3& q : {Vec3{1, 2, 3}, Vec3{-0.3, 0.4, 5}})
    CHECK((n.apply(q) - s.apply(q)).norm() <= 1e-12);
}

TEST_CASE("monodromy extraction against the closed form") {
  const GeodesicParams g = GeodesicParams::from_ab(0.5, 1.0);
  auto path = run(0.5, 1.0, 2.5);
  const MonodromyExtraction ext = extract_monodromy_detailed(path, g);
  CHECK(ext.registration_rms <= 1e-7);
  const ScrewMotion closed = monodromy_closed(g, magnetic_data(path.samples().front()));
  CHECK(angle_distance(ext.screw.delta_theta, closed.delta_theta) <= 1e-6);
  CHECK(std::abs(ext.screw.delta_z - closed.delta_z) <= 1e-6);
  // Axis parallel to p, anchored on the magnetic axis.
  const Vec3 p_hat = path.samples().front().p.normalized();
  CHECK(cross(ext.screw.axis_dir, p_hat).norm() <= 1e-6);
  const Vec3 dx = ext.screw.axis_point - closed.axis_point;
  CHECK((dx - dot(dx, p_hat) * p_hat).norm() <= 1e-6);
}

TEST_CASE("planar monodromy is a pure translation") {
  const GeodesicParams g = GeodesicParams::from_ab(0.7, 0.0);
  auto path = run(0.7, 0.0, 2.5);
  const ScrewMotion m = extract_monodromy(path, g);
  CHECK(angle_distance(m.delta_theta, 0.0) <= 1e-8);
  CHECK(m.delta_z == doctest::Approx(monodromy_closed(g).delta_z).epsilon(1e-8));
}

TEST_CASE("monodromy composes across periods") {
  const GeodesicParams g = GeodesicParams::from_ab(0.5, 1.0);
  auto path = run(0.5, 1.0, 6.2, 32);
  const ScrewMotion m = extract_monodromy(path, g);
  const RigidMotion rigid = m.to_rigid();
  for (int n = 1; n <= 5; ++n) {
    RigidMotion accum;
    for (int i = 0; i < n; ++i) accum = rigid.compose(accum);
    double worst = 0.0;
    for (double t = 0; t < g.period_T; t += g.period_T / 7) {
      const Vec3 mapped = accum.apply(path.at(t).x);
      worst = std::max(worst, (mapped - path.at(t + n * g.period_T).x).norm());
    }
    CHECK(worst <= n * 1e-6);
  }
}

TEST_CASE("half monodromy squares to the monodromy") {
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 1.0}}) {
    const GeodesicParams g = GeodesicParams::from_ab(a, b);
    auto path = run(a, b, 2.5);
    const ScrewMotion I = half_monodromy(path, g);  // verifies I^2 = M inside
    const ScrewMotion M = extract_monodromy(path, g);
    CHECK(std::abs(I.delta_z - 0.5 * M.delta_z) <= 1e-8);
    const double half_angle = wrap_angle(0.5 * M.delta_theta);
    const double alt_angle = wrap_angle(0.5 * M.delta_theta + kPi);
    const bool matches_either =
        angle_distance(I.delta_theta, half_angle) <= 1e-6 ||
        angle_distance(I.delta_theta, alt_angle) <= 1e-6;
    CHECK(matches_either);
  }
  // Planar geodesics are excluded.
  auto planar = run(0.7, 0.0, 2.5);
  CHECK_THROWS_AS(half_monodromy(planar, GeodesicParams::from_ab(0.7, 0.0)),
                  NotApplicableError);
}

TEST_CASE("conjectured rotation angle of the square root") {
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 1.0}}) {
    const GeodesicParams g = GeodesicParams::from_ab(a, b);
    auto path = run(a, b, 2.5);
    const ConjectureReport rep = conjecture_check(path, g);
    CHECK(rep.matches);
    CHECK(angle_distance(rep.angle_found, rep.angle_predicted) <= 1e-4);
  }
  auto planar = run(0.3, 0.0, 2.5);
  CHECK_THROWS_AS(conjecture_check(planar, GeodesicParams::from_ab(0.3, 0.0)),
                  NotApplicableError);
}

TEST_CASE("extraction preconditions") {
  const GeodesicParams g = GeodesicParams::from_ab(0.5, 1.0);
  auto short_path = run(0.5, 1.0, 1.2);
  CHECK_THROWS_AS(extract_monodromy(short_path, g), DomainError);
  auto circle = integrate(aligned_initial_state(0, 1), 8.0, {});
  CHECK_THROWS_AS(extract_monodromy(circle, GeodesicParams::from_ab(0, 1)),
                  NotApplicableError);
}

TEST_CASE("reflected parameters give the mirror-image track") {
  // Reflecting through the xy-plane maps the (a, b) geodesic onto the
  // (a, -b) geodesic when the seed is mirrored the same way.
  const double a = 0.6, b = 0.9;
  IntegrationOptions opts;
  opts.dt_out = 0.2;
  auto plus = integrate(aligned_initial_state(a, b), 4.0, opts);
  auto minus = integrate(aligned_initial_state(a, -b), 4.0, opts);
  REQUIRE(plus.samples().size() == minus.samples().size());
  for (std::size_t i = 0; i < plus.samples().size(); ++i) {
    const Vec3 xp = plus.samples()[i].x;
    const Vec3 xm = minus.samples()[i].x;
    CHECK(std::abs(xp.x - xm.x) <= 1e-9);
    CHECK(std::abs(xp.y - xm.y) <= 1e-9);
    CHECK(std::abs(xp.z + xm.z) <= 1e-9);  // z negated
  }
  // Mirrored torsion, equal curvature.
  const GeodesicParams gp = GeodesicParams::from_ab(a, b);
  const GeodesicParams gm = GeodesicParams::from_ab(a, -b);
  for (double t = 0.1; t < 4.0; t += 0.37) {
    CHECK(kappa_sq_closed(t, gp) == doctest::Approx(kappa_sq_closed(t, gm)));
    CHECK(tau_closed(t, gp) == doctest::Approx(-tau_closed(t, gm)));
  }
}
