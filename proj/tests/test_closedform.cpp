#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bikegeo/closedform.hpp"
#include "bikegeo/dynamics.hpp"
#include "bikegeo/transforms.hpp"

using namespace bikegeo;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("closed-form curvature") {
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.2, 0.3}}) {
    const GeodesicParams g = GeodesicParams::from_ab(a, b);
    CHECK(kappa_sq_closed(0.0, g) == doctest::Approx((1 + a) * (1 + a)));
    CHECK(kappa_sq_closed(0.5 * g.period_T, g) ==
          doctest::Approx((1 - a) * (1 - a)).epsilon(1e-12));
    // Range containment.
    for (double t = 0; t < 2 * g.period_T; t += g.period_T / 37) {
      const double ksq = kappa_sq_closed(t, g);
      CHECK(ksq >= (1 - a) * (1 - a) - 1e-12);
      CHECK(ksq <= (1 + a) * (1 + a) + 1e-12);
    }
  }
  // Euler soliton: kappa(t) = 2 sech(t).
  const GeodesicParams soliton = GeodesicParams::from_ab(1, 0);
  for (double t : {-3.0, -1.0, 0.0, 0.5, 2.0, 6.0}) {
    CHECK(std::sqrt(kappa_sq_closed(t, soliton)) ==
          doctest::Approx(2.0 / std::cosh(t)).epsilon(1e-12));
    CHECK(kappa_closed(t, soliton) ==
          doctest::Approx(2.0 / std::cosh(t)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form torsion") {
  const GeodesicParams g = GeodesicParams::from_ab(0.5, 1.0);
  CHECK(tau_closed(0.0, g) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(tau_closed(0.5 * g.period_T, g) == doctest::Approx(-1.0).epsilon(1e-12));
  const GeodesicParams ct = GeodesicParams::from_ab(1.0, 2.0);
  for (double t = 0.1; t < 2 * ct.period_T; t += 0.3)
    CHECK(tau_closed(t, ct) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cylindrical track basics") {
  const GeodesicParams g = GeodesicParams::from_ab(0.5, 1.0);
  const CylindricalSample c0 = cylindrical_track(0.0, g);
  CHECK(c0.r == doctest::Approx(std::sqrt(g.A) / g.p_norm).epsilon(1e-13));
  CHECK(c0.theta == 0.0);
  CHECK(c0.z == 0.0);

  // Planar: theta identically zero.
  const GeodesicParams planar = GeodesicParams::from_ab(0.8, 0.0);
  for (double t = 0; t < 2 * planar.period_T; t += 0.3) {
    CHECK(cylindrical_track(t, planar).theta == 0.0);
    const Vec3 x = front_track_cartesian(t, planar);
    CHECK(x.y == 0.0);  // stays in the xz-plane of the axis frame
  }

  CHECK_THROWS_AS(cylindrical_track(1.0, GeodesicParams::from_ab(0, 0)),
                  CircleBranchError);
}

TEST_CASE("radial quasi-periodicity and per-period increments") {
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {1.5, 0.5}}) {
    const GeodesicParams g = GeodesicParams::from_ab(a, b);
    const ScrewMotion mono = monodromy_closed(g);
    for (double t = 0; t < g.period_T; t += g.period_T / 11) {
      const CylindricalSample c1 = cylindrical_track(t, g);
      const CylindricalSample c2 = cylindrical_track(t + g.period_T, g);
      CHECK(std::abs(c2.r - c1.r) <= 1e-10);
      CHECK(std::abs(c2.theta - c1.theta - mono.signed_theta) <= 1e-9);
      CHECK(std::abs(c2.z - c1.z - mono.delta_z) <= 1e-9);
    }
  }
}

TEST_CASE("closed-form phase states are admissible and consistent") {
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 2.0}, {0.3, 0.0}}) {
    const GeodesicParams g = GeodesicParams::from_ab(a, b);
    for (double t = 0; t <= 2 * g.period_T; t += g.period_T / 23) {
      const PhaseState s = phase_state_closed(t, g);
      CHECK(std::abs(s.v.norm() - 1.0) <= 1e-10);
      CHECK(std::abs(dot(s.r, s.v)) <= 1e-10);
      CHECK(std::abs(s.x_dot().norm() - 1.0) <= 1e-10);
      CHECK(s.b_invariant() == doctest::Approx(b).epsilon(1e-9));
      CHECK(std::abs(s.r.norm_sq() - b * b - kappa_sq_closed(t, g)) <= 1e-10);
    }
  }
}

TEST_CASE("closed-form track matches integration after rigid alignment") {
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.5, 0.5}}) {
    const GeodesicParams g = GeodesicParams::from_ab(a, b);
    IntegrationOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-13;
    opts.dt_out = g.period_T / 32;
    auto path = integrate(aligned_initial_state(a, b), 2 * g.period_T, opts);

    std::vector<Vec3> closed_pts, num_pts;
    for (const PhaseState& s : path.samples()) {
      closed_pts.push_back(front_track_cartesian(s.t, g));
      num_pts.push_back(s.x);
    }
    const Registration reg = register_points(closed_pts, num_pts);
    CHECK(reg.rms <= 1e-6);
    for (std::size_t i = 0; i < num_pts.size(); ++i)
      CHECK((reg.motion.apply(closed_pts[i]) - num_pts[i]).norm() <= 1e-6);
  }
}

TEST_CASE("closed-form monodromy") {
  // Planar: pure translation.
  {
    const ScrewMotion m = monodromy_closed(GeodesicParams::from_ab(0.7, 0.0));
    CHECK(m.delta_theta == 0.0);
    CHECK(m.delta_z != 0.0);
  }
  // Circular front track: zero axial translation, rotation by T exactly.
  {
    const GeodesicParams g = GeodesicParams::from_ab(0, 0.7);
    const ScrewMotion m = monodromy_closed(g);
    CHECK(std::abs(m.delta_z) <= 1e-12);
    CHECK(m.signed_theta == doctest::Approx(g.period_T).epsilon(1e-12));
  }
  // Frozen spot value at (0.5, 1), cross-validated against the numeric
  // extraction elsewhere.
  {
    const ScrewMotion m = monodromy_closed(GeodesicParams::from_ab(0.5, 1.0));
    CHECK(m.signed_theta == doctest::Approx(4.1010988207478582).epsilon(1e-12));
    CHECK(m.delta_z == doctest::Approx(0.23035025165309455).epsilon(1e-11));
    CHECK(m.delta_theta == doctest::Approx(m.signed_theta));
    CHECK(m.winding == 0);
  }
  CHECK_THROWS_AS(monodromy_closed(GeodesicParams::from_ab(1, 0)), SolitonError);
  CHECK_THROWS_AS(monodromy_closed(GeodesicParams::from_ab(0, 0)),
                  CircleBranchError);
}

TEST_CASE("monodromy closed vs numeric on a parameter sample") {
  for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {0.3, 2.0}}) {
    const GeodesicParams g = GeodesicParams::from_ab(a, b);
    IntegrationOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-13;
    opts.dt_out = g.period_T / 64;
    auto path = integrate(aligned_initial_state(a, b), 2.5 * g.period_T, opts);
    const ScrewMotion closed = monodromy_closed(g, magnetic_data(path.samples().front()));
    const ScrewMotion num = extract_monodromy(path, g);
    CHECK(angle_distance(closed.delta_theta, num.delta_theta) <= 1e-6);
    CHECK(std::abs(closed.delta_z - num.delta_z) <= 1e-6);
    CHECK(cross(closed.axis_dir, num.axis_dir).norm() <= 1e-6);
  }
}

TEST_CASE("theta near the singular characteristic") {
  // Just off the locus a^2+b^2 = a the guard kicks in and integrates
  // theta' instead of using the Pi formula; both routes must agree where
  // the formula is still usable.
  const GeodesicParams g_close = GeodesicParams::from_ab(0.5, 0.5 + 3e-3);
  REQUIRE(!g_close.near_singular_characteristic());
  const GeodesicParams g_guarded = GeodesicParams::from_ab(0.5, 0.5 + 3e-4);
  REQUIRE(g_guarded.near_singular_characteristic());
  for (double t : {0.2, 0.7, 1.9}) {
    // Away from the guard the Pi formula and the quadrature fallback agree;
    // inside it they still cross-check at a looser tolerance.
    CHECK(std::abs(cylindrical_track(t, g_close, /*n_guard=*/0.0).theta -
                   cylindrical_track(t, g_close, /*n_guard=*/1.0).theta) <= 1e-9);
    CHECK(std::abs(cylindrical_track(t, g_guarded, /*n_guard=*/0.0).theta -
                   cylindrical_track(t, g_guarded, /*n_guard=*/1.0).theta) <= 1e-7);
  }

  // Exactly on the locus: theta is the linear drift plus a pi jump at each
  // axis crossing (once per period, at t = T/2 mod T).
  const GeodesicParams g_sing = GeodesicParams::from_ab(0.5, 0.5);
  REQUIRE(g_sing.n == doctest::Approx(1.0));
  const double pref = 0.5 * g_sing.b / g_sing.p_norm;
  const double t_before = 0.49 * g_sing.period_T;
  const double t_after = 0.51 * g_sing.period_T;
  const double th_before = cylindrical_track(t_before, g_sing).theta;
  const double th_after = cylindrical_track(t_after, g_sing).theta;
  CHECK(th_before == doctest::Approx(pref * t_before).epsilon(1e-12));
  CHECK(th_after ==
        doctest::Approx(pref * t_after + kPi).epsilon(1e-12));
}

TEST_CASE("soliton track height") {
  // k = 1 branch of the z formula stays finite and odd.
  const GeodesicParams g = GeodesicParams::from_ab(1, 0);
  const CylindricalSample c = cylindrical_track(1.7, g);
  CHECK(std::isfinite(c.z));
  CHECK(cylindrical_track(-1.7, g).z == doctest::Approx(-c.z).epsilon(1e-12));
  CHECK(c.theta == 0.0);
}

TEST_CASE("cylindrical track parity in t") {
  // r is even, theta and z odd (the seed sits at a curvature maximum).
  const GeodesicParams g = GeodesicParams::from_ab(0.5, 1.0);
  for (double t : {0.3, 1.1, 2.9}) {
    const CylindricalSample fwd = cylindrical_track(t, g);
    const CylindricalSample bwd = cylindrical_track(-t, g);
    CHECK(bwd.r == doctest::Approx(fwd.r).epsilon(1e-12));
    CHECK(bwd.theta == doctest::Approx(-fwd.theta).epsilon(1e-12));
    CHECK(bwd.z == doctest::Approx(-fwd.z).epsilon(1e-12));
  }
}
