#include <doctest.h>

#include <cmath>

#include "frobmu/curves.hpp"
#include "frobmu/zeta.hpp"

using namespace frobmu;

namespace {

LPolynomial lp_from(std::uint64_t q, unsigned g, std::vector<long> cs) {
  LPolynomial lp;
  lp.q = q;
  lp.g = g;
  for (long c : cs) lp.coeffs.emplace_back(c);
  return lp;
}

std::vector<CountRecord> fake_records(std::uint64_t q, std::vector<std::int64_t> traces) {
  std::vector<CountRecord> out;
  BigInt qq(1);
  for (unsigned i = 0; i < traces.size(); ++i) {
    qq *= BigInt(static_cast<unsigned long>(q));
    CountRecord r;
    r.n = i + 1;
    r.trace = traces[i];
    r.count = (qq + BigInt(1) - BigInt(traces[i])).to_ulong();
    out.push_back(r);
  }
  return out;
}

CurveSpec f5_elliptic() {
  auto f5 = Field::make(5, 1);
  return CurveSpec::elliptic(f5, f5->one(), f5->zero());
}

}  // namespace

TEST_CASE("reconstruct: genus-1 closed form") {
  // oracle: P(T) = 1 - A T + q T^2 for g = 1
  LPolynomial lp = reconstruct_l_polynomial(fake_records(5, {2, -6}), 5, 1);
  CHECK(lp.coeffs[0] == 1);
  CHECK(lp.coeffs[1] == -2);
  CHECK(lp.coeffs[2] == 5);

  LPolynomial lp3 = reconstruct_l_polynomial(fake_records(3, {0, -6}), 3, 1);
  CHECK(lp3.coeffs[1] == 0);
  CHECK(lp3.coeffs[2] == 3);
}

TEST_CASE("reconstruct: tampered counts are caught") {
  // odd parity in the Newton division
  CHECK_THROWS_WITH_AS(reconstruct_l_polynomial(fake_records(5, {3, -6}), 5, 1),
                       doctest::Contains("NonIntegerCoefficient"), Error);
  // integer coefficients but broken functional equation
  CHECK_THROWS_WITH_AS(reconstruct_l_polynomial(fake_records(5, {4, -6}), 5, 1),
                       doctest::Contains("SymmetryViolation"), Error);
}

TEST_CASE("reconstruct: genus-2 curve from honest counts") {
  auto f5 = Field::make(5, 1);
  std::vector<FieldElement> f{f5->one(), f5->one(), f5->zero(), f5->zero(), f5->zero(), f5->one()};
  CurveSpec c = CurveSpec::hyperelliptic(f5, f);  // y^2 = x^5 + x + 1, genus 2
  std::vector<CountRecord> recs = trace_sequence(c, 4);
  LPolynomial lp = reconstruct_l_polynomial(recs, 5, 2);
  // forward check: Newton recurrence reproduces the input traces exactly
  for (unsigned n = 1; n <= 4; ++n)
    CHECK(exact_trace(lp, n) == BigInt(static_cast<long>(recs[n - 1].trace)));
  // and predicts the direct counts beyond the reconstruction window
  for (unsigned n = 5; n <= 6; ++n) {
    CountRecord direct = count_points(c, n);
    CHECK(exact_trace(lp, n) == BigInt(static_cast<long>(direct.trace)));
  }
}

TEST_CASE("compute_spectrum: symmetric but non-Weil input is rejected") {
  // 1 - 6T + 5T^2 = (1 - T)(1 - 5T) satisfies the functional equation for
  // q = 5 yet its roots have modulus 1 and 5, not sqrt(5)
  LPolynomial lp = lp_from(5, 1, {1, -6, 5});
  CHECK_THROWS_WITH_AS(compute_spectrum(lp, 128), doctest::Contains("WeilViolation"), Error);
}

TEST_CASE("exact_trace: bit budget refused") {
  LPolynomial lp = lp_from(5, 1, {1, -2, 5});
  CHECK_THROWS_WITH_AS(exact_trace(lp, 1000000), doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("compute_spectrum: eigenvalues 1 +- 2i for the F_5 curve") {
  LPolynomial lp = lp_from(5, 1, {1, -2, 5});
  FrobeniusSpectrum sp = compute_spectrum(lp, 128);
  REQUIRE(sp.entries.size() == 2);
  CHECK(sp.eigenvalue_radius <= std::ldexp(std::sqrt(5.0), -112));

  // oracle: roots of T^2 - 2T + 5 by the quadratic formula: 1 +- 2i exactly
  for (const auto& e : sp.entries) {
    double re = e.eigenvalue.re.to_double();
    double im = e.eigenvalue.im.to_double();
    CHECK(std::abs(re - 1.0) <= sp.eigenvalue_radius + 1e-30);
    CHECK(std::abs(std::abs(im) - 2.0) <= sp.eigenvalue_radius + 1e-30);
  }
  // oracle: alpha = atan2(2,1)/(2 pi), computed independently at 256 bits
  Real ref = atan2(Real::of_ui(2, 256), Real::of_ui(1, 256)) / mul_ui(Real::pi(256), 2);
  double lo_angle = sp.entries.front().angle.to_double();
  CHECK(lo_angle == doctest::Approx(ref.to_double()).epsilon(1e-25));
  CHECK(lo_angle == doctest::Approx(0.1762083).epsilon(1e-6));  // spec-level sanity
  // |beta| = sqrt(5) within the certified radius
  for (const auto& e : sp.entries) {
    double ab = e.eigenvalue.abs().to_double();
    CHECK(std::abs(ab - std::sqrt(5.0)) <= sp.eigenvalue_radius + 1e-30);
  }
}

TEST_CASE("compute_spectrum: purely imaginary pair for 1 + 3T^2") {
  LPolynomial lp = lp_from(3, 1, {1, 0, 3});
  FrobeniusSpectrum sp = compute_spectrum(lp, 128);
  REQUIRE(sp.entries.size() == 2);
  CHECK(sp.entries[0].angle.to_double() == doctest::Approx(0.25).epsilon(1e-30));
  CHECK(sp.entries[1].angle.to_double() == doctest::Approx(0.75).epsilon(1e-30));
}

TEST_CASE("compute_spectrum: angles closed under alpha -> 1 - alpha") {
  for (auto lp : {lp_from(5, 1, {1, -2, 5}), lp_from(7, 1, {1, -3, 7})}) {
    FrobeniusSpectrum sp = compute_spectrum(lp, 128);
    for (const auto& e : sp.entries) {
      double a = e.angle.to_double();
      bool found = false;
      for (const auto& o : sp.entries) {
        double b = o.angle.to_double();
        double diff = std::abs(a + b - 1.0);
        double wrapped = std::min(diff, std::abs(a + b));  // alpha = 0 pairs with itself
        if (wrapped <= 4 * sp.angle_radius) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("compute_spectrum: repeated eigenvalues reported with multiplicity") {
  // (1 + 3T^2)^2: genus-2 shape with q = 3
  LPolynomial lp = lp_from(3, 2, {1, 0, 6, 0, 9});
  FrobeniusSpectrum sp = compute_spectrum(lp, 128);
  REQUIRE(sp.entries.size() == 2);
  unsigned total = 0;
  for (const auto& e : sp.entries) {
    CHECK(e.multiplicity == 2);
    total += e.multiplicity;
  }
  CHECK(total == 4);
  CHECK(sp.entries[0].angle.to_double() == doctest::Approx(0.25));
  CHECK(sp.entries[1].angle.to_double() == doctest::Approx(0.75));
}

TEST_CASE("compute_spectrum: real eigenvalues at square q") {
  // q = 9 genus-2 supersingular shape: (1 - 9T^2)^2 has roots +-3, each twice
  LPolynomial lp = lp_from(9, 2, {1, 0, -18, 0, 81});
  FrobeniusSpectrum sp = compute_spectrum(lp, 128);
  REQUIRE(sp.entries.size() == 2);
  CHECK(sp.entries[0].angle.to_double() == 0.0);
  CHECK(sp.entries[1].angle.to_double() == 0.5);
  CHECK(sp.entries[0].multiplicity == 2);
  CHECK(sp.entries[1].multiplicity == 2);
  CHECK(sp.entries[0].eigenvalue.re.to_double() == doctest::Approx(3.0));
  CHECK(sp.entries[1].eigenvalue.re.to_double() == doctest::Approx(-3.0));
}

TEST_CASE("spectrum round trip: expanding the product recovers the coefficients") {
  auto f5 = Field::make(5, 1);
  std::vector<FieldElement> f{f5->one(), f5->one(), f5->zero(), f5->zero(), f5->zero(), f5->one()};
  CurveSpec c = CurveSpec::hyperelliptic(f5, f);
  LPolynomial lp = reconstruct_l_polynomial(trace_sequence(c, 4), 5, 2);
  mpfr_prec_t P = 128;
  FrobeniusSpectrum sp = compute_spectrum(lp, P);

  // expand prod (1 - beta_j T)^mult at precision P
  std::vector<Complex> coeffs{Complex(Real::of_ui(1, P + 16), Real(P + 16))};
  for (const auto& e : sp.entries) {
    for (unsigned r = 0; r < e.multiplicity; ++r) {
      std::vector<Complex> next(coeffs.size() + 1, Complex(P + 16));
      for (size_t i = 0; i < coeffs.size(); ++i) {
        next[i] += coeffs[i];
        Complex t = coeffs[i] * e.eigenvalue;
        next[i + 1] = next[i + 1] - t;
      }
      coeffs = std::move(next);
    }
  }
  REQUIRE(coeffs.size() == 5);
  double maxc = 0;
  for (const auto& cc : lp.coeffs) maxc = std::max(maxc, std::abs(cc.to_double()));
  double tol = std::ldexp(maxc, -static_cast<int>(P - 16));
  for (size_t i = 0; i < coeffs.size(); ++i) {
    CHECK(std::abs(coeffs[i].re.to_double() - lp.coeffs[i].to_double()) <= tol);
    CHECK(std::abs(coeffs[i].im.to_double()) <= tol);
  }
}

TEST_CASE("is_ordinary: middle coefficient criterion") {
  CHECK(is_ordinary(lp_from(5, 1, {1, -2, 5}), 5));
  CHECK_FALSE(is_ordinary(lp_from(3, 1, {1, 0, 3}), 3));
  // genus 1: ordinary iff A != 0 mod p, since c_1 = -A
  auto f7 = Field::make(7, 1);
  for (std::uint64_t ai = 1; ai < 4; ++ai) {
    CurveSpec c = CurveSpec::elliptic(f7, f7->element({ai}), f7->one());
    std::vector<CountRecord> recs = trace_sequence(c, 2);
    LPolynomial lp = reconstruct_l_polynomial(recs, 7, 1);
    CHECK(is_ordinary(lp, 7) == (recs[0].trace % 7 != 0));
  }
}

TEST_CASE("trace_eval: angle path matches the exact path") {
  LPolynomial lp = lp_from(5, 1, {1, -2, 5});
  FrobeniusSpectrum sp = compute_spectrum(lp, 128);

  // a_C(1) = 1/sqrt(5), oracle value
  AngleTrace a1 = normalised_trace_from_angles(sp, 1);
  Real ref = Real::of_ui(1, 256) / sqrt(Real::of_ui(5, 256));
  CHECK(std::abs(a1.value.to_double() - ref.to_double()) <= a1.error_bound);
  CHECK(a1.value.to_double() == doctest::Approx(0.4472136).epsilon(1e-6));

  CHECK(exact_trace(lp, 2) == BigInt(-6));

  for (std::uint64_t n = 1; n <= 12; ++n) {
    BigInt an = exact_trace(lp, static_cast<unsigned>(n));
    Real exact = Real::of_bigint(an, 256) /
                 mul_ui(sqrt(Real::of_bigint(BigInt::ui_pow_ui(5, static_cast<unsigned long>(n)), 256)), 2);
    AngleTrace at = normalised_trace_from_angles(sp, n);
    CHECK(std::abs(at.value.to_double() - exact.to_double()) <= at.error_bound);
    CHECK(std::abs(at.value.to_double()) <= 1.0 + at.error_bound);
  }
}

TEST_CASE("trace_eval: tolerance contract raises PrecisionExhausted") {
  LPolynomial lp = lp_from(5, 1, {1, -2, 5});
  FrobeniusSpectrum sp = compute_spectrum(lp, 128);
  CHECK_THROWS_WITH_AS(normalised_trace_from_angles(sp, 1000, 1e-60),
                       doctest::Contains("PrecisionExhausted"), Error);
}

TEST_CASE("heights: (1/2) log q and log q") {
  CHECK(eigenvalue_height(5, 128).to_double() == doctest::Approx(0.8047).epsilon(1e-4));
  CHECK(angle_exponential_height_bound(2, 128).to_double() ==
        doctest::Approx(0.6931).epsilon(1e-4));
  CHECK_THROWS_AS(eigenvalue_height(1, 128), Error);
}

TEST_CASE("genus 3: full pipeline on a degree-7 model over F_3") {
  auto f3 = Field::make(3, 1);
  // first squarefree septic in counting order
  std::optional<CurveSpec> curve;
  for (std::uint64_t code = 0; !curve; ++code) {
    std::vector<FieldElement> f;
    std::uint64_t rem = code;
    for (int i = 0; i < 7; ++i) {
      f.push_back(f3->element({rem % 3}));
      rem /= 3;
    }
    f.push_back(f3->one());
    try {
      curve.emplace(CurveSpec::hyperelliptic(f3, std::move(f)));
    } catch (const Error&) {
    }
  }
  REQUIRE(curve->genus() == 3);
  LPolynomial lp = reconstruct_l_polynomial(trace_sequence(*curve, 6), 3, 3);
  FrobeniusSpectrum sp = compute_spectrum(lp, 128);
  unsigned total = 0;
  for (const auto& e : sp.entries) {
    total += e.multiplicity;
    CHECK(std::abs(e.eigenvalue.abs().to_double() - std::sqrt(3.0)) <=
          std::ldexp(std::sqrt(3.0), -100));
  }
  CHECK(total == 6);
  for (unsigned n = 1; n <= 6; ++n) {
    AngleTrace at = normalised_trace_from_angles(sp, n);
    Real exact = Real::of_bigint(exact_trace(lp, n), 256) /
                 mul_ui(sqrt(Real::of_bigint(BigInt::ui_pow_ui(3, n), 256)), 6);
    CHECK(std::abs((at.value - exact).to_double()) <= 1e-20);
  }
}

TEST_CASE("compute_spectrum_auto: plain call succeeds at the default precision") {
  CurveSpec c = f5_elliptic();
  LPolynomial lp = reconstruct_l_polynomial(trace_sequence(c, 2), 5, 1);
  FrobeniusSpectrum sp = compute_spectrum_auto(lp);
  CHECK(sp.precision_bits == 128);
}
