#pragma once

#include <cstdint>
#include <vector>

#include "frobmu/bigint.hpp"
#include "frobmu/curves.hpp"
#include "frobmu/real.hpp"

namespace frobmu {

// P(T) = prod_j (1 - beta_j T) = sum_i c_i T^i, exact integer coefficients,
// c_0 = 1, with the functional-equation symmetry c_{2g-i} = q^{g-i} c_i.
struct LPolynomial {
  std::uint64_t q = 0;
  unsigned g = 0;
  std::vector<BigInt> coeffs;  // c_0 .. c_{2g}
};

// Newton's identities on the power sums s_i = A_C(i), i = 1..2g. Every
// division must be exact; the symmetry is verified after construction.
LPolynomial reconstruct_l_polynomial(const std::vector<CountRecord>& records, std::uint64_t q,
                                     unsigned g);

// Throws SymmetryViolation unless c_{2g-i} = q^{g-i} c_i for 0 <= i <= g.
void verify_functional_equation(const LPolynomial& lp);

// Newton-polygon middle-coefficient criterion: ordinary iff p does not
// divide c_g.
bool is_ordinary(const LPolynomial& lp, std::uint64_t p);

// A_C(n) as an exact integer, via the order-2g power-sum recurrence.
// The result has about n/2 * log2(q) bits; refuses beyond bit_budget.
BigInt exact_trace(const LPolynomial& lp, unsigned n, std::uint64_t bit_budget = 1u << 16);

struct SpectrumEntry {
  Complex eigenvalue;    // beta_j, |beta_j| = sqrt(q) within the radius
  Real angle;            // alpha_j in [0,1), beta_j = sqrt(q) e(alpha_j)
  unsigned multiplicity = 1;
};

struct FrobeniusSpectrum {
  std::uint64_t q = 0;
  unsigned g = 0;
  mpfr_prec_t precision_bits = 0;
  std::vector<SpectrumEntry> entries;  // multiplicities sum to 2g, sorted by angle
  double eigenvalue_radius = 0;        // certified |computed - true| bound
  double angle_radius = 0;
};

// Roots of chi(T) = T^{2g} P(1/T): exact squarefree split, machine-precision
// simultaneous iteration for seeds, per-root Newton refinement at P bits,
// residual-based certification. Throws PrecisionExhausted when the certified
// radius at P bits is not below 2^-(P-16) sqrt(q).
FrobeniusSpectrum compute_spectrum(const LPolynomial& lp, mpfr_prec_t precision_bits);

// Doubles the precision on PrecisionExhausted, up to max_bits.
FrobeniusSpectrum compute_spectrum_auto(const LPolynomial& lp, mpfr_prec_t start_bits = 128,
                                        mpfr_prec_t max_bits = 1024);

struct AngleTrace {
  Real value;          // a_C(n) = (1/2g) sum_j cos(2 pi n alpha_j)
  double error_bound;  // includes 2 pi n * angle radius and rounding
};

AngleTrace normalised_trace_from_angles(const FrobeniusSpectrum& sp, std::uint64_t n,
                                        double max_error = 0 /* 0 = unbounded */);

Real eigenvalue_height(std::uint64_t q, mpfr_prec_t prec);                 // (1/2) log q
Real angle_exponential_height_bound(std::uint64_t q, mpfr_prec_t prec);    // log q

}  // namespace frobmu
