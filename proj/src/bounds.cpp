#include "frobmu/bounds.hpp"

#include "frobmu/errors.hpp"

namespace frobmu {

Real bw_constant(unsigned n, unsigned d, mpfr_prec_t prec) {
  if (n < 2 || d < 1) fail(Errc::InvalidParams, "need n >= 2, d >= 1");
  BigInt pre = BigInt(18) * BigInt::factorial(n + 1);
  pre *= BigInt::ui_pow_ui(n, n + 1);
  pre *= BigInt::ui_pow_ui(32ull * d, n + 2);
  return Real::of_bigint(pre, prec) * log(Real::of_ui(2ull * n * d, prec));
}

Real bw_constant_n2(unsigned d, mpfr_prec_t prec) {
  if (d < 1) fail(Errc::InvalidParams, "need d >= 1");
  BigInt pre = BigInt(905969664ul) * BigInt::ui_pow_ui(d, 4);  // 2^25 3^3 d^4
  return Real::of_bigint(pre, prec) * log(Real::of_ui(4ull * d, prec));
}

Real kappa_alpha(const KappaParams& kp, mpfr_prec_t prec) {
  if (kp.d < 2) fail(Errc::InvalidParams, "degree d must be >= 2");
  if (kp.A1.sign() <= 0) fail(Errc::InvalidParams, "A1 must be positive");
  if (mul_ui(kp.A1, kp.d) < Real::of(0.999999, kp.A1.prec()))
    fail(Errc::InvalidParams, "A1 below 1/d");
  BigInt pre = BigInt(905969664ul) * BigInt::ui_pow_ui(kp.d, 3);  // 2^25 3^3 d^3
  return Real::of_bigint(pre, prec) * Real::pi(prec) * kp.A1.with_prec(prec) *
         log(Real::of_ui(4ull * kp.d, prec));
}

Real kappa_a1(const Real& height, const Real& alpha, unsigned d, mpfr_prec_t prec) {
  if (d < 1) fail(Errc::InvalidParams, "degree d must be >= 1");
  Real a = frac(alpha.with_prec(prec));
  if (a.sign() < 0) a += Real::of_ui(1, prec);
  Real t1 = height.with_prec(prec);
  Real t2 = mul_ui(Real::pi(prec) * a, 2);
  mpfr_div_ui(t2.raw(), t2.raw(), d, MPFR_RNDN);
  Real t3 = Real::of_ui(1, prec);
  mpfr_div_ui(t3.raw(), t3.raw(), d, MPFR_RNDN);
  Real best = t1;
  if (t2 > best) best = t2;
  if (t3 > best) best = t3;
  return best;
}

namespace {

Real kappa_gamma_core(std::uint64_t q, unsigned g, unsigned pow2, mpfr_prec_t prec) {
  if (q < 2 || g < 1) fail(Errc::InvalidParams, "need q >= 2, g >= 1");
  BigInt pre = BigInt(27) * BigInt::ui_pow_ui(2, pow2) * BigInt::ui_pow_ui(g, 3);
  Real pi = Real::pi(prec);
  return Real::of_bigint(pre, prec) * pi * (pi + log(Real::of_ui(q, prec))) *
         log(Real::of_ui(16ull * g, prec));
}

}  // namespace

Real kappa_frobenius(std::uint64_t q, unsigned g, mpfr_prec_t prec) {
  return kappa_gamma_core(q, g, 31, prec);
}

Real gamma_qg(std::uint64_t q, unsigned g, mpfr_prec_t prec) {
  return kappa_gamma_core(q, g, 33, prec) + Real::of_ui(4, prec);
}

BoundProfile bound_profile(std::uint64_t q, unsigned g, mpfr_prec_t prec) {
  BoundProfile bp;
  bp.q = q;
  bp.g = g;
  bp.kappa_qg = kappa_frobenius(q, g, prec);
  bp.gamma_qg = gamma_qg(q, g, prec);
  Real recomposed = mul_ui(bp.kappa_qg, 4) + Real::of_ui(4, prec);
  Real tol = abs(bp.gamma_qg);
  mpfr_mul_2si(tol.raw(), tol.raw(), -40, MPFR_RNDN);
  if (abs(bp.gamma_qg - recomposed) > tol)
    throw std::logic_error("gamma(q,g) and 4 kappa(q,g) + 4 disagree");
  return bp;
}

Real bound_gap_lower(const BigInt& s, const Real& kappa, mpfr_prec_t prec) {
  if (s.sign() <= 0) fail(Errc::InvalidParams, "s must be >= 1");
  if (kappa.sign() <= 0) fail(Errc::InvalidParams, "kappa must be positive");
  // exp(-log(pi) - (1+kappa) log(2s))
  Real log2s = log(Real::of_bigint(s * BigInt(2), prec));
  Real e = -(log(Real::pi(prec)) + (Real::of_ui(1, prec) + kappa.with_prec(prec)) * log2s);
  return exp(e);
}

Real bound_mobexp2(std::uint64_t N, std::uint64_t s, double slack, mpfr_prec_t prec) {
  if (N < 2 || s < 1 || slack < 0) fail(Errc::InvalidParams, "need N >= 2, s >= 1, slack >= 0");
  Real rn = Real::of_ui(N, prec);
  Real rs = Real::of_ui(s, prec);
  Real quarter = Real::of(0.25, prec);
  Real half = Real::of(0.5, prec);
  Real core = pow(rs, quarter) * pow(rn, quarter) + pow(rn, half) / pow(rs, quarter) +
              pow(rn, Real::of(0.4, prec));
  Real logn = log(rn);
  Real l4 = logn * logn;
  l4 *= l4;
  return Real::of(slack, prec) * core * pow(rn, half) * l4;
}

Real bound_mu_alpha(std::uint64_t N, const Real& kappa, double slack, mpfr_prec_t prec) {
  if (N < 2 || slack < 0) fail(Errc::InvalidParams, "need N >= 2, slack >= 0");
  if (kappa.sign() <= 0) fail(Errc::InvalidParams, "kappa must be positive");
  Real rn = Real::of_ui(N, prec);
  Real logn = log(rn);
  Real expo = Real::of_ui(1, prec) -
              Real::of_ui(1, prec) / (mul_ui(kappa.with_prec(prec), 4) + Real::of_ui(4, prec));
  Real l4 = logn * logn;
  l4 *= l4;
  return Real::of(slack, prec) * exp(expo * logn) * l4;
}

Real bound_davenport(std::uint64_t N, double B, double c, mpfr_prec_t prec) {
  if (N < 2 || B <= 0 || c < 0) fail(Errc::InvalidParams, "need N >= 2, B > 0, c >= 0");
  Real rn = Real::of_ui(N, prec);
  return Real::of(c, prec) * rn * exp(Real::of(-B, prec) * log(log(rn)));
}

Real bound_theorem2(std::uint64_t N, std::uint64_t q, unsigned g, double slack, mpfr_prec_t prec) {
  if (N < 2 || slack < 0) fail(Errc::InvalidParams, "need N >= 2, slack >= 0");
  Real rn = Real::of_ui(N, prec);
  Real logn = log(rn);
  Real expo = Real::of_ui(1, prec) - Real::of_ui(1, prec) / gamma_qg(q, g, prec);
  Real l4 = logn * logn;
  l4 *= l4;
  return Real::of(slack, prec) * exp(expo * logn) * l4;
}

}  // namespace frobmu
