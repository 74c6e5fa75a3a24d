#include <doctest.h>

#include <cmath>
#include <random>

#include "frobmu/bounds.hpp"
#include "frobmu/curves.hpp"
#include "frobmu/diophantine.hpp"
#include "frobmu/zeta.hpp"

using namespace frobmu;

namespace {

Real golden(mpfr_prec_t p) {
  return div_ui(Real::of_ui(1, p) + sqrt(Real::of_ui(5, p)), 2);
}

Real random_fraction_256(std::mt19937_64& rng) {
  BigInt m(0);
  for (int i = 0; i < 4; ++i) {
    mpz_mul_2exp(m.raw(), m.raw(), 64);
    mpz_add_ui(m.raw(), m.raw(), rng());
  }
  Real r = Real::of_bigint(m, 256);
  mpfr_div_2ui(r.raw(), r.raw(), 256, MPFR_RNDN);
  return r;
}

}  // namespace

TEST_CASE("continued fraction: golden ratio is all ones") {
  CFExpansion cf = continued_fraction(golden(128), 1e-36, 64);
  CHECK(cf.certified_depth >= 50);
  CHECK_FALSE(cf.terminated);
  for (size_t k = 0; k < cf.certified_depth; ++k) CHECK(cf.quotients[k] == 1);
  // convergents are consecutive Fibonacci ratios; recurrence is exact
  for (size_t k = 2; k < cf.convergents.size(); ++k) {
    CHECK(cf.convergents[k].first ==
          cf.quotients[k] * cf.convergents[k - 1].first + cf.convergents[k - 2].first);
    CHECK(cf.convergents[k].second ==
          cf.quotients[k] * cf.convergents[k - 1].second + cf.convergents[k - 2].second);
  }
}

TEST_CASE("continued fraction: sqrt(2) repeats 2") {
  CFExpansion cf = continued_fraction(sqrt(Real::of_ui(2, 128)), 1e-36, 40);
  REQUIRE(cf.certified_depth >= 30);
  CHECK(cf.quotients[0] == 1);
  for (size_t k = 1; k < cf.certified_depth; ++k) CHECK(cf.quotients[k] == 2);
}

TEST_CASE("continued fraction: exact rationals terminate") {
  CFExpansion cf = continued_fraction_rational(BigInt(3), BigInt(7), 100);
  CHECK(cf.terminated);
  REQUIRE(cf.quotients.size() == 3);
  CHECK(cf.quotients[0] == 0);
  CHECK(cf.quotients[1] == 2);
  CHECK(cf.quotients[2] == 3);

  // radius 0 treats the value as the exact dyadic rational it is: 3/8
  CFExpansion dy = continued_fraction(Real::of(0.375, 128), 0.0, 100);
  CHECK(dy.terminated);
  REQUIRE(dy.quotients.size() == 4);
  CHECK(dy.quotients[0] == 0);
  CHECK(dy.quotients[1] == 2);
  CHECK(dy.quotients[2] == 1);
  CHECK(dy.quotients[3] == 2);
  CHECK(dy.convergents.back().second == 8);
}

TEST_CASE("continued fraction: too-wide radius fails at the first quotient") {
  CHECK_THROWS_WITH_AS(continued_fraction(Real::of(0.5, 64), 1.0, 10),
                       doctest::Contains("ZeroInterval"), Error);
}

TEST_CASE("dirichlet: sqrt(2) at N = 10 gives 7/5") {
  // oracle: convergents 1, 3/2, 7/5, 17/12; 17/12 overshoots N
  RationalApproximant ap = dirichlet_approximant(sqrt(Real::of_ui(2, 128)), 1e-36, 10);
  CHECK(ap.r == 7);
  CHECK(ap.s == 5);
  CHECK(ap.gap.to_double() == doctest::Approx(std::sqrt(2.0) - 1.4).epsilon(1e-9));
  CHECK(ap.gap.to_double() <= 1.0 / 50.0);
}

TEST_CASE("dirichlet: golden ratio at N = 2") {
  RationalApproximant ap = dirichlet_approximant(golden(128), 1e-36, 2);
  CHECK(ap.r == 3);
  CHECK(ap.s == 2);
  CHECK(ap.gap.to_double() <= 1.0 / (2 * 2));
}

TEST_CASE("dirichlet: rational input with small denominator is flagged") {
  CHECK_THROWS_WITH_AS(dirichlet_approximant(Real::of(0.375, 128), 0.0, 100),
                       doctest::Contains("RationalDetected"), Error);
  // exact dyadic with a large denominator passes: it acts irrational at this N
  Real x = Real::parse("0.7071067811865475244", 128);
  RationalApproximant ap = dirichlet_approximant(x, 0.0, 100);
  CHECK(ap.s <= BigInt(100));
}

TEST_CASE("dirichlet: insufficient precision is detected, not papered over") {
  // radius 1e-10 cannot certify convergents near q ~ 1e8
  CHECK_THROWS_WITH_AS(dirichlet_approximant(sqrt(Real::of_ui(2, 128)), 1e-10, 100'000'000),
                       doctest::Contains("InsufficientPrecision"), Error);
}

TEST_CASE("dirichlet contract: random 256-bit fractions") {
  std::mt19937_64 rng(0xF0B1A5u);
  for (int trial = 0; trial < 10; ++trial) {
    Real alpha = random_fraction_256(rng);
    for (std::uint64_t N : {100ull, 1000ull, 10000ull}) {
      RationalApproximant ap = dirichlet_approximant(alpha, 0.0, N);
      CHECK(ap.s <= BigInt(static_cast<unsigned long>(N)));
      CHECK(ap.s.sign() > 0);
      CHECK(BigInt::gcd(ap.r, ap.s).abs() == 1);
      // |alpha - r/s| <= 1/(sN), rechecked here from scratch at 512 bits
      Real rs = Real::of_bigint(ap.r, 512) / Real::of_bigint(ap.s, 512);
      Real gap = abs(alpha.with_prec(512) - rs);
      Real bound = Real::of_ui(1, 512) / Real::of_bigint(ap.s * BigInt(static_cast<unsigned long>(N)), 512);
      CHECK(gap <= bound);
    }
  }
}

TEST_CASE("convergents: denominators increase and gaps beat 1/(q_k q_{k+1})") {
  std::mt19937_64 rng(11);
  std::vector<Real> alphas{sqrt(Real::of_ui(2, 256)), golden(256)};
  for (int i = 0; i < 4; ++i) alphas.push_back(random_fraction_256(rng));
  for (const Real& alpha : alphas) {
    CFExpansion cf = continued_fraction(alpha, 0.0, 25);
    for (size_t k = 1; k + 1 < cf.convergents.size(); ++k) {
      CHECK(cf.convergents[k + 1].second > cf.convergents[k].second);
      Real rs = Real::of_bigint(cf.convergents[k].first, 512) /
                Real::of_bigint(cf.convergents[k].second, 512);
      Real gap = abs(alpha.with_prec(512) - rs);
      Real bound = Real::of_ui(1, 512) /
                   Real::of_bigint(cf.convergents[k].second * cf.convergents[k + 1].second, 512);
      CHECK(gap < bound);
    }
  }
}

TEST_CASE("large denominator check: explicit small kappa") {
  // oracle: (1/2) (10^4 / 2pi)^(1/2) = 19.947..
  LargeDenomReport rep =
      large_denominator_check(sqrt(Real::of_ui(2, 128)), 1e-36, 10000, Real::of(2.0, 128));
  CHECK(rep.lower_bound.to_double() == doctest::Approx(19.947).epsilon(1e-3));
  CHECK(rep.satisfied);  // sqrt(2) convergent denominators near 10^4 are ~5741

  CHECK_THROWS_WITH_AS(
      large_denominator_check(sqrt(Real::of_ui(2, 128)), 1e-36, 10000, Real::of(-2.0, 128)),
      doctest::Contains("InvalidParams"), Error);
}

TEST_CASE("large denominator check: Frobenius-sized kappa collapses the bound") {
  Real kappa = kappa_frobenius(5, 1);
  LargeDenomReport rep = large_denominator_check(sqrt(Real::of_ui(2, 128)), 1e-36, 10000, kappa);
  // (N/2pi)^(1/kappa) with kappa ~ 1e13 is 1 + o(1): the bound is ~1/2
  CHECK(rep.lower_bound.to_double() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rep.satisfied);
}

TEST_CASE("irrationality probe: golden ratio exponent tends to 2 from above") {
  std::vector<ProbeRow> rows = irrationality_probe(golden(256), 1e-70, 10000);
  REQUIRE(rows.size() >= 10);
  for (const auto& row : rows) {
    CHECK(row.exponent_estimate >= 1.99);
    if (row.s > BigInt(50)) CHECK(row.exponent_estimate <= 2.3);
  }
  // oracle: |phi - p/q| ~ 1/(sqrt(5) q^2), so the estimate is
  // 2 + log(sqrt(5))/log(q) + o(1/log q)
  const auto& last = rows.back();
  double expect = 2.0 + 0.5 * std::log(5.0) / std::log(last.s.to_double());
  CHECK(last.exponent_estimate == doctest::Approx(expect).epsilon(0.01));
  CHECK(last.exponent_estimate > rows[2].exponent_estimate - 0.5);
  CHECK(last.exponent_estimate < rows[2].exponent_estimate + 0.01);  // decreasing trend
}

TEST_CASE("irrationality probe: rational input flagged") {
  CHECK_THROWS_WITH_AS(irrationality_probe(Real::of(0.375, 128), 0.0, 100),
                       doctest::Contains("RationalDetected"), Error);
}

TEST_CASE("irrationality probe: Frobenius angle of the F_5 curve") {
  auto f5 = Field::make(5, 1);
  CurveSpec c = CurveSpec::elliptic(f5, f5->one(), f5->zero());
  LPolynomial lp = reconstruct_l_polynomial(trace_sequence(c, 2), 5, 1);
  FrobeniusSpectrum sp = compute_spectrum(lp, 256);
  const Real& alpha = sp.entries.front().angle;

  std::vector<ProbeRow> rows = irrationality_probe(alpha, sp.angle_radius, 1000000);
  REQUIRE(!rows.empty());
  double kappa = kappa_frobenius(5, 1).to_double();
  for (const auto& row : rows) {
    CHECK(row.exponent_estimate > 1.0);
    CHECK(row.exponent_estimate < 1.0 + kappa);  // enormous slack, asserted anyway
    CHECK(row.exponent_estimate < 10.0);         // empirical: nothing Liouville-like
    // Lemma-shape check: certified gap stays above 1/(pi (2s)^(1+kappa))
    Real lower = bound_gap_lower(row.s, kappa_frobenius(5, 1));
    CHECK(lower.sign() > 0);
    CHECK(row.gap > lower);
  }
}
