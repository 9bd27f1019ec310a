#include "bikegeo/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

// Carlson integrals follow the duplication algorithms of Carlson,
// "Numerical computation of real or complex elliptic integrals",
// Numerical Algorithms 10 (1995) 13-26.  Jacobi functions use Bulirsch's
// sncndn descending-Landen recursion seeded by the AGM (Numer. Math. 7,
// 1965, p. 89).

namespace bikegeo::elliptic {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = 3.14159265358979323846;

void require_carlson_domain(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z < 0.0)
    throw DomainError("carlson: arguments must be non-negative");
  int zeros = (x == 0.0) + (y == 0.0) + (z == 0.0);
  if (zeros > 1) throw DomainError("carlson: at most one argument may be zero");
}

}  // namespace

Modulus Modulus::from_k(double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw DomainError("modulus: k must lie in [0,1]");
  return Modulus{k, k * k};
}

Modulus Modulus::from_m(double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw DomainError("modulus: m must lie in [0,1]");
  return Modulus{std::sqrt(m), m};
}

double carlson_rf(double x, double y, double z) {
  require_carlson_domain(x, y, z);
  const double x0 = x, y0 = y;
  double A = (x + y + z) / 3.0;
  const double A0 = A;
  const double q = std::pow(3.0 * kEps, -1.0 / 6.0) *
                   std::max({std::abs(A - x), std::abs(A - y), std::abs(A - z)});
  double pow4 = 1.0;
  for (int iter = 0; iter < 120 && pow4 * q >= std::abs(A); ++iter) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    A = 0.25 * (A + lambda);
    pow4 *= 0.25;
  }
  const double X = pow4 * (A0 - x0) / A;
  const double Y = pow4 * (A0 - y0) / A;
  const double Z = -X - Y;
  const double e2 = X * Y - Z * Z;
  const double e3 = X * Y * Z;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) /
         std::sqrt(A);
}

double carlson_rc(double x, double y) {
  if (x < 0.0 || y <= 0.0) throw DomainError("carlson_rc: requires x >= 0, y > 0");
  const double y0 = y;
  double A = (x + 2.0 * y) / 3.0;
  const double A0 = A;
  const double q = std::pow(3.0 * kEps, -1.0 / 8.0) * std::abs(A - x);
  double pow4 = 1.0;
  for (int iter = 0; iter < 120 && pow4 * q >= std::abs(A); ++iter) {
    const double lambda = 2.0 * std::sqrt(x) * std::sqrt(y) + y;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    A = 0.25 * (A + lambda);
    pow4 *= 0.25;
  }
  const double s = pow4 * (y0 - A0) / A;
  // Carlson (2.13): degree-7 series in s.
  const double series = 1.0 + s * s * (3.0 / 10.0 + s * (1.0 / 7.0 + s * (3.0 / 8.0 +
                        s * (9.0 / 22.0 + s * (159.0 / 208.0 + s * 9.0 / 8.0)))));
  return series / std::sqrt(A);
}

double carlson_rd(double x, double y, double z) {
  require_carlson_domain(x, y, z);
  if (z == 0.0) throw DomainError("carlson_rd: z must be positive");
  const double x0 = x, y0 = y;
  double A = (x + y + 3.0 * z) / 5.0;
  const double A0 = A;
  const double q = std::pow(0.25 * kEps, -1.0 / 6.0) *
                   std::max({std::abs(A - x), std::abs(A - y), std::abs(A - z)});
  double pow4 = 1.0;
  double sum = 0.0;
  for (int iter = 0; iter < 120 && pow4 * q >= std::abs(A); ++iter) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * (sy + sz) + sy * sz;
    sum += pow4 / (sz * (z + lambda));
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    A = 0.25 * (A + lambda);
    pow4 *= 0.25;
  }
  const double X = pow4 * (A0 - x0) / A;
  const double Y = pow4 * (A0 - y0) / A;
  const double Z = -(X + Y) / 3.0;
  const double e2 = X * Y - 6.0 * Z * Z;
  const double e3 = (3.0 * X * Y - 8.0 * Z * Z) * Z;
  const double e4 = 3.0 * (X * Y - Z * Z) * Z * Z;
  const double e5 = X * Y * Z * Z * Z;
  const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 -
                        3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return pow4 * series / (A * std::sqrt(A)) + 3.0 * sum;
}

double carlson_rj(double x, double y, double z, double p) {
  require_carlson_domain(x, y, z);
  if (p <= 0.0)
    throw DomainError("carlson_rj: p must be positive (circular case only)");
  const double x0 = x, y0 = y, z0 = z;
  double A = (x + y + z + 2.0 * p) / 5.0;
  const double A0 = A;
  const double delta = (p - x) * (p - y) * (p - z);
  const double q = std::pow(0.25 * kEps, -1.0 / 6.0) *
                   std::max({std::abs(A - x), std::abs(A - y), std::abs(A - z),
                             std::abs(A - p)});
  double pow4 = 1.0;
  double sum = 0.0;
  for (int iter = 0; iter < 120 && pow4 * q >= std::abs(A); ++iter) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z),
                 sp = std::sqrt(p);
    const double lambda = sx * (sy + sz) + sy * sz;
    const double d = (sp + sx) * (sp + sy) * (sp + sz);
    const double e = pow4 * pow4 * pow4 * delta / (d * d);
    sum += pow4 * carlson_rc(1.0, 1.0 + e) / d;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    p = 0.25 * (p + lambda);
    A = 0.25 * (A + lambda);
    pow4 *= 0.25;
  }
  const double X = pow4 * (A0 - x0) / A;
  const double Y = pow4 * (A0 - y0) / A;
  const double Z = pow4 * (A0 - z0) / A;
  const double P = -(X + Y + Z) / 2.0;
  const double e2 = X * Y + X * Z + Y * Z - 3.0 * P * P;
  const double e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P * P * P;
  const double e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P * P * P) * P;
  const double e5 = X * Y * Z * P * P;
  const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 -
                        3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return pow4 * series / (A * std::sqrt(A)) + 6.0 * sum;
}

double complete_k(const Modulus& mod) {
  if (mod.k >= 1.0) throw DivergenceError("complete_k: K(1) = infinity");
  return carlson_rf(0.0, 1.0 - mod.m, 1.0);
}

double quarter_period(const Modulus& mod) { return complete_k(mod); }

double complete_e(const Modulus& mod) {
  if (mod.k == 1.0) return 1.0;
  const double mc = 1.0 - mod.m;
  return carlson_rf(0.0, mc, 1.0) - mod.m / 3.0 * carlson_rd(0.0, mc, 1.0);
}

double complete_pi(double n, const Modulus& mod) {
  if (n >= 1.0) throw DomainError("complete_pi: characteristic must satisfy n < 1");
  if (mod.k >= 1.0) throw DivergenceError("complete_pi: diverges at k = 1");
  const double mc = 1.0 - mod.m;
  double value = carlson_rf(0.0, mc, 1.0);
  if (n != 0.0) value += n / 3.0 * carlson_rj(0.0, mc, 1.0, 1.0 - n);
  return value;
}

JacobiTriple jacobi_sn_cn_dn(double u, const Modulus& mod) {
  if (mod.k == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  if (mod.m == 0.0) return {std::sin(u), std::cos(u), 1.0};

  // Reduce the argument modulo the 4K period; keeps sn(u + 4K) = sn(u)
  // exact up to the rounding of the reduction itself.
  const double bigK = complete_k(mod);
  const double period = 4.0 * bigK;
  u -= period * std::round(u / period);

  // Bulirsch sncndn.
  double mc = 1.0 - mod.m;
  constexpr int kMaxLevels = 16;
  double mu[kMaxLevels], nu[kMaxLevels];
  double a = 1.0, c = 1.0;
  int l = 0;
  for (; l < kMaxLevels; ++l) {
    mu[l] = a;
    mc = std::sqrt(mc);
    nu[l] = mc;
    c = 0.5 * (a + mc);
    if (std::abs(a - mc) <= 1e-1 * std::sqrt(kEps) * a) {
      ++l;
      break;
    }
    mc = a * mc;
    a = c;
  }
  double sn = std::sin(c * u);
  double cn = std::cos(c * u);
  double dn = 1.0;
  if (sn != 0.0) {
    a = cn / sn;
    c = a * c;
    for (int j = l - 1; j >= 0; --j) {
      const double b = mu[j];
      a = c * a;
      c = dn * c;
      dn = (nu[j] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn < 0.0 ? -a : a;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

namespace {

// Legendre-form incomplete integrals on the principal branch, via Carlson.
// Requires |phi| <= pi/2, passed as (sin, cos) of the amplitude.
double legendre_e(double sphi, double cphi, const Modulus& mod) {
  const double s2 = sphi * sphi;
  const double y = 1.0 - mod.m * s2;
  double v = sphi * carlson_rf(cphi * cphi, y, 1.0);
  if (mod.m != 0.0)
    v -= mod.m / 3.0 * sphi * s2 * carlson_rd(cphi * cphi, y, 1.0);
  return v;
}

double legendre_pi(double sphi, double cphi, double n, const Modulus& mod) {
  const double s2 = sphi * sphi;
  const double y = 1.0 - mod.m * s2;
  double v = sphi * carlson_rf(cphi * cphi, y, 1.0);
  if (n != 0.0)
    v += n / 3.0 * sphi * s2 * carlson_rj(cphi * cphi, y, 1.0, 1.0 - n * s2);
  return v;
}

// Splits x = u0 + 2jK with u0 in [-K, K]; returns j.  On [-K, K] the
// amplitude lies in [-pi/2, pi/2] and cn >= 0.
long reduce_half_period(double x, double bigK, double& u0) {
  const double j = std::round(x / (2.0 * bigK));
  u0 = x - 2.0 * bigK * j;
  return static_cast<long>(j);
}

}  // namespace

double incomplete_e(double x, const Modulus& mod) {
  if (mod.k == 1.0) return std::tanh(x);  // Int dn^2 = Int sech^2
  if (mod.m == 0.0) return x;
  const double bigK = complete_k(mod);
  double u0 = 0.0;
  const long j = reduce_half_period(x, bigK, u0);
  const JacobiTriple jac = jacobi_sn_cn_dn(u0, mod);
  double v = legendre_e(jac.sn, std::abs(jac.cn), mod);
  if (j != 0) v += 2.0 * static_cast<double>(j) * complete_e(mod);
  return v;
}

double incomplete_pi(double x, double n, const Modulus& mod) {
  if (n >= 1.0)
    throw DomainError("incomplete_pi: characteristic must satisfy n < 1");
  if (n == 0.0) {
    // Int ds = x; still meaningful at k = 1.
    return x;
  }
  if (mod.k == 1.0) {
    // 1 - n sn^2 = 1 - n tanh^2; Int_0^x dt/(1 - n tanh^2 t)
    //   = [x - sqrt(n) atanh(sqrt(n) tanh x)] / (1 - n)  for 0 < n < 1.
    const double rn = std::sqrt(n);
    return (x - rn * std::atanh(rn * std::tanh(x))) / (1.0 - n);
  }
  const double bigK = complete_k(mod);
  double u0 = 0.0;
  const long j = reduce_half_period(x, bigK, u0);
  const JacobiTriple jac = jacobi_sn_cn_dn(u0, mod);
  double v = legendre_pi(jac.sn, std::abs(jac.cn), n, mod);
  if (j != 0) v += 2.0 * static_cast<double>(j) * complete_pi(n, mod);
  return v;
}

EllipticEval evaluate(EvalKind kind, const Modulus& mod, double x, double n) {
  EllipticEval out;
  out.modulus = mod;
  out.kind = kind;
  switch (kind) {
    case EvalKind::K: out.value = complete_k(mod); break;
    case EvalKind::E_complete: out.value = complete_e(mod); break;
    case EvalKind::Pi_complete: out.value = complete_pi(n, mod); break;
    case EvalKind::E_incomplete: out.value = incomplete_e(x, mod); break;
    case EvalKind::Pi_incomplete: out.value = incomplete_pi(x, n, mod); break;
    case EvalKind::sn: out.value = jacobi_sn_cn_dn(x, mod).sn; break;
    case EvalKind::cn: out.value = jacobi_sn_cn_dn(x, mod).cn; break;
    case EvalKind::dn: out.value = jacobi_sn_cn_dn(x, mod).dn; break;
  }
  return out;
}

}  // namespace bikegeo::elliptic
