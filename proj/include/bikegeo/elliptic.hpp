#ifndef BIKEGEO_ELLIPTIC_HPP
#define BIKEGEO_ELLIPTIC_HPP

#include "bikegeo/errors.hpp"

namespace bikegeo::elliptic {

// Elliptic modulus k with the parameter m = k^2 carried alongside.  Keeping
// m explicitly avoids squaring noise when a caller has m to full precision
// (as the geodesic formulas do: m = 4a / ((a+1)^2 + b^2)).
struct Modulus {
  double k = 0.0;
  double m = 0.0;

  static Modulus from_k(double k);
  static Modulus from_m(double m);
};

enum class EvalKind {
  K,
  E_complete,
  Pi_complete,
  E_incomplete,
  Pi_incomplete,
  sn,
  cn,
  dn,
};

struct EllipticEval {
  double value = 0.0;
  Modulus modulus;
  EvalKind kind = EvalKind::K;
};

struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

// Carlson symmetric integrals, evaluated by the duplication theorem.
//
//   RF(x,y,z) = 1/2 Int_0^inf [(t+x)(t+y)(t+z)]^{-1/2} dt
//   RD(x,y,z) = 3/2 Int_0^inf [(t+x)(t+y)]^{-1/2} (t+z)^{-3/2} dt
//   RC(x,y)   = RF(x,y,y)
//   RJ(x,y,z,p) = 3/2 Int_0^inf [(t+x)(t+y)(t+z)]^{-1/2} (t+p)^{-1} dt
//
// x,y,z >= 0 with at most one of them zero; RJ requires p > 0 here (the
// Cauchy principal value for p < 0 is out of scope).
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
double carlson_rc(double x, double y);
double carlson_rj(double x, double y, double z, double p);

// Complete Legendre integrals.  complete_k throws DivergenceError at k = 1.
double complete_k(const Modulus& mod);
double complete_e(const Modulus& mod);
// Complete third kind with characteristic n < 1 (circular case).
double complete_pi(double n, const Modulus& mod);

// Jacobi elliptic functions sn, cn, dn of argument u.  k = 1 is handled as
// the explicit tanh/sech branch.
JacobiTriple jacobi_sn_cn_dn(double u, const Modulus& mod);

// Jacobi-argument incomplete integrals:
//   incomplete_e(x)  = x - k^2 Int_0^x sn^2(s,k) ds   (= Int_0^x dn^2 ds)
//   incomplete_pi(x) = Int_0^x ds / (1 - n sn^2(s,k))
// Both satisfy the 2K quasi-periods f(x + 2K) = f(x) + 2 f_complete.
double incomplete_e(double x, const Modulus& mod);
double incomplete_pi(double x, double n, const Modulus& mod);

// Quarter period K(k) of the Jacobi functions; equals complete_k.
double quarter_period(const Modulus& mod);

// Tagged single-value evaluation.  x is the Jacobi argument (incomplete
// integrals, sn/cn/dn); n the third-kind characteristic.  The value is
// finite for every supported input; K at k = 1 throws DivergenceError
// rather than returning infinity.
EllipticEval evaluate(EvalKind kind, const Modulus& mod, double x = 0.0,
                      double n = 0.0);

}  // namespace bikegeo::elliptic

#endif  // BIKEGEO_ELLIPTIC_HPP
