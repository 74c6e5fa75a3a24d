#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "frobmu/bigint.hpp"
#include "frobmu/real.hpp"

namespace frobmu {

struct CFExpansion {
  std::vector<BigInt> quotients;                        // a_0; a_1, a_2, ...
  std::vector<std::pair<BigInt, BigInt>> convergents;   // (p_k, q_k), aligned
  std::size_t certified_depth = 0;                      // quotients guaranteed correct
  bool terminated = false;                              // expansion ended exactly (rational)
};

// Interval-tracked continued fraction: a quotient is emitted only when both
// interval endpoints agree on it. radius == 0 treats alpha as the exact
// binary rational it is.
CFExpansion continued_fraction(const Real& alpha, double radius, std::size_t max_terms);

// Exact expansion of num/den (den > 0); always terminates.
CFExpansion continued_fraction_rational(const BigInt& num, const BigInt& den,
                                        std::size_t max_terms);

struct RationalApproximant {
  BigInt r;
  BigInt s;        // 1 <= s <= N, gcd(r,s) = 1
  Real gap;        // |alpha - r/s|
  double gap_radius = 0;
  std::uint64_t N = 0;
};

// Last convergent with denominator <= N; the contract gap <= 1/(sN) is
// re-verified numerically. RationalDetected when the expansion terminates at
// a denominator <= N; InsufficientPrecision when the certified depth ends
// before the denominators pass N.
RationalApproximant dirichlet_approximant(const Real& alpha, double radius, std::uint64_t N);

struct LargeDenomReport {
  BigInt s;
  Real lower_bound;  // (1/2) (N / 2pi)^(1/kappa)
  bool satisfied = false;
};

LargeDenomReport large_denominator_check(const Real& alpha, double radius, std::uint64_t N,
                                         const Real& kappa);

struct ProbeRow {
  BigInt s;
  BigInt r;
  Real gap;                     // certified upper bound on |alpha - r/s|
  double exponent_estimate = 0; // -log(gap)/log(s)
};

// Convergents with 2 <= q_k <= s_max and their irrationality-exponent
// estimates; the running max estimates the exponent from below.
std::vector<ProbeRow> irrationality_probe(const Real& alpha, double radius, std::uint64_t s_max);

}  // namespace frobmu
