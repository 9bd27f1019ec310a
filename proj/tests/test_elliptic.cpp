#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bikegeo/elliptic.hpp"
#include "oracles.hpp"

using namespace bikegeo;
using namespace bikegeo::elliptic;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("carlson_rf basic values") {
  CHECK(carlson_rf(1, 1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(carlson_rf(0, 1, 1) == doctest::Approx(kPi / 2).epsilon(1e-15));
  // Frozen from the AGM oracle: RF(0,2,1) = K(1/sqrt 2)/sqrt 2.
  CHECK(carlson_rf(0, 2, 1) ==
        doctest::Approx(1.3110287771460596).epsilon(1e-14));
  // Symmetry in the arguments.
  CHECK(carlson_rf(0.3, 1.7, 0.9) == doctest::Approx(carlson_rf(1.7, 0.9, 0.3)));
  // Homogeneity RF(:foo) scales as lambda^{-1/2}.
  CHECK(carlson_rf(2 * 0.3, 2 * 1.7, 2 * 0.9) ==
        doctest::Approx(carlson_rf(0.3, 1.7, 0.9) / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("carlson_rf domain errors") {
  CHECK_THROWS_AS(carlson_rf(0, 0, 1), DomainError);
  CHECK_THROWS_AS(carlson_rf(-1, 1, 1), DomainError);
}

TEST_CASE("carlson_rj basic values") {
  CHECK(carlson_rj(1, 1, 1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  // RJ(0,1,1,1) = RD(0,1,1) = 3 pi / 4 (checked against the quadrature oracle).
  CHECK(carlson_rj(0, 1, 1, 1) == doctest::Approx(3 * kPi / 4).epsilon(1e-14));
  // Frozen from split-substitution quadrature of the defining integral.
  CHECK(carlson_rj(0, 2, 1, 0.5) ==
        doctest::Approx(2.9366712692381185).epsilon(1e-13));
  CHECK_THROWS_AS(carlson_rj(0, 1, 1, 0.0), DomainError);
  CHECK_THROWS_AS(carlson_rj(0, 1, 1, -2.0), DomainError);
  CHECK_THROWS_AS(carlson_rj(0, 0, 1, 1), DomainError);
}

TEST_CASE("complete_k") {
  CHECK(complete_k(Modulus::from_k(0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
  // Frozen AGM oracle value at m = 1/2.
  CHECK(complete_k(Modulus::from_m(0.5)) ==
        doctest::Approx(1.8540746773013717).epsilon(1e-14));
  CHECK_THROWS_AS(complete_k(Modulus::from_k(1.0)), DivergenceError);
}

TEST_CASE("complete_e") {
  CHECK(complete_e(Modulus::from_k(0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(complete_e(Modulus::from_k(1)) == doctest::Approx(1.0).epsilon(1e-15));
  // Frozen quadrature oracle value at m = 0.8.
  CHECK(complete_e(Modulus::from_m(0.8)) ==
        doctest::Approx(1.1784899243278384).epsilon(1e-14));
}

TEST_CASE("complete_pi") {
  CHECK(complete_pi(0, Modulus::from_k(0)) == doctest::Approx(kPi / 2));
  for (double m : {0.1, 0.5, 0.9})
    CHECK(complete_pi(0, Modulus::from_m(m)) ==
          doctest::Approx(complete_k(Modulus::from_m(m))).epsilon(1e-15));
  // Frozen quadrature oracle value; also equals E(0.5)/(1-0.5).
  CHECK(complete_pi(0.5, Modulus::from_m(0.5)) ==
        doctest::Approx(2.701287762095351).epsilon(1e-14));
  CHECK_THROWS_AS(complete_pi(1.0, Modulus::from_m(0.5)), DomainError);
  CHECK_THROWS_AS(complete_pi(1.5, Modulus::from_m(0.5)), DomainError);
}

TEST_CASE("jacobi degenerate moduli") {
  const Modulus m0 = Modulus::from_k(0);
  const Modulus m1 = Modulus::from_k(1);
  for (double u : {-2.0, -0.3, 0.0, 0.7, 3.1}) {
    auto j0 = jacobi_sn_cn_dn(u, m0);
    CHECK(j0.sn == doctest::Approx(std::sin(u)).epsilon(1e-15));
    CHECK(j0.cn == doctest::Approx(std::cos(u)).epsilon(1e-15));
    CHECK(j0.dn == 1.0);
    auto j1 = jacobi_sn_cn_dn(u, m1);
    CHECK(j1.sn == doctest::Approx(std::tanh(u)).epsilon(1e-15));
    CHECK(j1.cn == doctest::Approx(1.0 / std::cosh(u)).epsilon(1e-15));
    CHECK(j1.dn == doctest::Approx(1.0 / std::cosh(u)).epsilon(1e-15));
  }
}

TEST_CASE("jacobi at quarter period and identities") {
  const Modulus mod = Modulus::from_m(0.5);
  const double K = complete_k(mod);
  auto j = jacobi_sn_cn_dn(K, mod);
  CHECK(j.sn == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(j.cn) < 1e-14);
  CHECK(j.dn == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  for (double m : {0.05, 0.3, 0.5, 0.8, 0.95, 0.999}) {
    const Modulus mm = Modulus::from_m(m);
    for (double u = -6.0; u <= 6.0; u += 0.37) {
      auto t = jacobi_sn_cn_dn(u, mm);
      CHECK(std::abs(t.sn * t.sn + t.cn * t.cn - 1.0) <= 1e-12);
      CHECK(std::abs(t.dn * t.dn + mm.m * t.sn * t.sn - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("jacobi periodicity sn(u+4K) = sn(u)") {
  for (double m : {0.2, 0.6, 0.9}) {
    const Modulus mod = Modulus::from_m(m);
    const double K = complete_k(mod);
    for (double u : {-1.3, 0.4, 2.2}) {
      auto j1 = jacobi_sn_cn_dn(u, mod);
      auto j2 = jacobi_sn_cn_dn(u + 4 * K, mod);
      CHECK(j1.sn == doctest::Approx(j2.sn).epsilon(1e-12));
      CHECK(j1.cn == doctest::Approx(j2.cn).epsilon(1e-12));
      CHECK(j1.dn == doctest::Approx(j2.dn).epsilon(1e-12));
    }
  }
}

TEST_CASE("jacobi sn against the inverted-F oracle") {
  for (double m : {0.25, 0.5, 0.85}) {
    const Modulus mod = Modulus::from_m(m);
    const double K = complete_k(mod);
    for (int i = 1; i <= 9; ++i) {
      const double u = 0.1 * i * K;
      CHECK(jacobi_sn_cn_dn(u, mod).sn ==
            doctest::Approx(oracles::quad_sn(u, m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("incomplete_e basics") {
  const Modulus mod = Modulus::from_m(0.5);
  const double K = complete_k(mod);
  CHECK(incomplete_e(0, mod) == 0.0);
  CHECK(incomplete_e(K, mod) == doctest::Approx(complete_e(mod)).epsilon(1e-14));
  CHECK(incomplete_e(2 * K, mod) ==
        doctest::Approx(2 * complete_e(mod)).epsilon(1e-14));
  // Frozen oracle value at u = 0.4, m = 0.5.
  CHECK(incomplete_e(0.4, mod) ==
        doctest::Approx(0.38982297130645399).epsilon(1e-13));
  // Odd function.
  CHECK(incomplete_e(-0.4, mod) == doctest::Approx(-incomplete_e(0.4, mod)));
}

TEST_CASE("incomplete_pi basics") {
  CHECK(incomplete_pi(1.3, 0.0, Modulus::from_k(0)) == doctest::Approx(1.3));
  const Modulus mod = Modulus::from_m(0.6);
  CHECK(incomplete_pi(0.0, 0.4, mod) == 0.0);
  const double K = complete_k(mod);
  // Frozen oracle value: Pi_J(K(k), 0.4, m=0.6) = complete Pi(0.4, k).
  CHECK(incomplete_pi(K, 0.4, mod) ==
        doctest::Approx(2.5909211565552202).epsilon(1e-13));
  CHECK(incomplete_pi(K, 0.4, mod) ==
        doctest::Approx(complete_pi(0.4, mod)).epsilon(1e-14));
  // Frozen oracle value at u = 1.1, n = 0.4, m = 0.5.
  CHECK(incomplete_pi(1.1, 0.4, Modulus::from_m(0.5)) ==
        doctest::Approx(1.2610638358080464).epsilon(1e-13));
  CHECK_THROWS_AS(incomplete_pi(0.5, 1.0, mod), DomainError);
}

TEST_CASE("quasi-periodicity of incomplete integrals") {
  for (double m : {0.3, 0.7}) {
    const Modulus mod = Modulus::from_m(m);
    const double K = complete_k(mod);
    for (double x : {-1.9, 0.33, 1.4, 5.2}) {
      CHECK(std::abs(incomplete_e(x + 2 * K, mod) - incomplete_e(x, mod) -
                     2 * complete_e(mod)) <= 1e-11);
      CHECK(std::abs(incomplete_pi(x + 2 * K, 0.35, mod) -
                     incomplete_pi(x, 0.35, mod) -
                     2 * complete_pi(0.35, mod)) <= 1e-11);
    }
  }
}

TEST_CASE("Legendre relation") {
  for (int i = 1; i <= 9; ++i) {
    const double m = 0.1 * i;
    const Modulus mod = Modulus::from_m(m);
    const Modulus modc = Modulus::from_m(1.0 - m);
    const double lhs = complete_e(mod) * complete_k(modc) +
                       complete_e(modc) * complete_k(mod) -
                       complete_k(mod) * complete_k(modc);
    CHECK(std::abs(lhs - kPi / 2) <= 1e-12);
  }
}

TEST_CASE("agreement with quadrature oracle on 50-point grids") {
  // Complete integrals over a modulus grid.
  for (int i = 0; i < 50; ++i) {
    const double m = 0.019 * i;  // m in [0, 0.931]
    const Modulus mod = Modulus::from_m(m);
    CHECK(std::abs(complete_k(mod) - oracles::quad_complete_k(m)) <= 1e-10);
    CHECK(std::abs(complete_e(mod) - oracles::quad_complete_e(m)) <= 1e-10);
    CHECK(std::abs(complete_pi(0.45, mod) - oracles::quad_complete_pi(0.45, m)) <=
          1e-10);
  }
  // Incomplete integrals over an argument grid at fixed modulus.
  const double m = 0.62;
  const Modulus mod = Modulus::from_m(m);
  const double K = complete_k(mod);
  for (int i = 0; i < 50; ++i) {
    const double u = K * (i + 0.5) / 50.0;
    CHECK(std::abs(incomplete_e(u, mod) - oracles::quad_jacobi_e(u, m)) <= 1e-10);
    CHECK(std::abs(incomplete_pi(u, 0.3, mod) -
                   oracles::quad_jacobi_pi(u, 0.3, m)) <= 1e-10);
  }
}

TEST_CASE("tagged evaluation") {
  const Modulus mod = Modulus::from_m(0.5);
  const EllipticEval e = evaluate(EvalKind::K, mod);
  CHECK(e.kind == EvalKind::K);
  CHECK(e.value == doctest::Approx(1.8540746773013717).epsilon(1e-14));
  CHECK(evaluate(EvalKind::sn, mod, complete_k(mod)).value ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(evaluate(EvalKind::Pi_complete, mod, 0.0, 0.5).value ==
        doctest::Approx(2.701287762095351).epsilon(1e-14));
  CHECK_THROWS_AS(evaluate(EvalKind::K, Modulus::from_k(1.0)), DivergenceError);
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(Modulus::from_k(-0.1), DomainError);
  CHECK_THROWS_AS(Modulus::from_k(1.1), DomainError);
  CHECK_THROWS_AS(Modulus::from_m(-0.1), DomainError);
  const Modulus mod = Modulus::from_k(0.7);
  CHECK(mod.m == doctest::Approx(0.49).epsilon(1e-15));
}
