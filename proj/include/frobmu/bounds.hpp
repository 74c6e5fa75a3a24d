#pragma once

#include <cstdint>

#include "frobmu/real.hpp"

namespace frobmu {

// C(n,d) = 18 (n+1)! n^(n+1) (32d)^(n+2) log(2nd); the integer prefactor is
// exact, only the final log multiplication rounds.
Real bw_constant(unsigned n, unsigned d, mpfr_prec_t prec = 128);
// Specialized n = 2 form 2^25 3^3 d^4 log(4d); independent evaluation path.
Real bw_constant_n2(unsigned d, mpfr_prec_t prec = 128);

struct KappaParams {
  unsigned d = 2;  // [Q(e(alpha)) : Q], >= 2 for irrational alpha
  Real A1;         // max{h(e(alpha)), 2 pi alpha / d, 1/d}
  Real alpha;      // the angle in [0,1); informational
};

// kappa(alpha) = 2^25 3^3 pi d^3 A1 log(4d)
Real kappa_alpha(const KappaParams& kp, mpfr_prec_t prec = 128);
// A1 = max{h, 2 pi alpha / d, 1/d} with alpha reduced to [0,1) first.
Real kappa_a1(const Real& height, const Real& alpha, unsigned d, mpfr_prec_t prec = 128);

// kappa(q,g) = 2^31 3^3 pi g^3 (pi + log q) log(16g)
Real kappa_frobenius(std::uint64_t q, unsigned g, mpfr_prec_t prec = 128);
// gamma(q,g) = 2^33 3^3 pi g^3 (pi + log q) log(16g) + 4 (equals 4 kappa + 4)
Real gamma_qg(std::uint64_t q, unsigned g, mpfr_prec_t prec = 128);

struct BoundProfile {
  std::uint64_t q = 0;
  unsigned g = 0;
  Real kappa_qg;
  Real gamma_qg;
};

// Both constants, with the gamma = 4 kappa + 4 identity verified at build.
BoundProfile bound_profile(std::uint64_t q, unsigned g, mpfr_prec_t prec = 128);

// 1 / (pi (2s)^(1+kappa)); evaluated in log space, exact for huge kappa.
Real bound_gap_lower(const BigInt& s, const Real& kappa, mpfr_prec_t prec = 128);
// (s^(1/4) N^(1/4) + s^(-1/4) N^(1/2) + N^(2/5)) N^(1/2) (log N)^4, times slack
Real bound_mobexp2(std::uint64_t N, std::uint64_t s, double slack = 1.0, mpfr_prec_t prec = 128);
// N^(1 - 1/(4 kappa + 4)) (log N)^4, times slack
Real bound_mu_alpha(std::uint64_t N, const Real& kappa, double slack = 1.0,
                    mpfr_prec_t prec = 128);
// c N (log N)^(-B)
Real bound_davenport(std::uint64_t N, double B, double c = 1.0, mpfr_prec_t prec = 128);
// N^(1 - 1/gamma(q,g)) (log N)^4, times slack
Real bound_theorem2(std::uint64_t N, std::uint64_t q, unsigned g, double slack = 1.0,
                    mpfr_prec_t prec = 128);

}  // namespace frobmu
