#include "frobmu/diophantine.hpp"

#include <cmath>
#include <functional>

#include "frobmu/errors.hpp"

namespace frobmu {

namespace {

void push_convergent(CFExpansion& cf, const BigInt& a) {
  std::size_t k = cf.quotients.size();
  BigInt p = k >= 1 ? a * cf.convergents[k - 1].first : a;
  BigInt q = k >= 1 ? a * cf.convergents[k - 1].second : BigInt(1);
  if (k >= 2) {
    p += cf.convergents[k - 2].first;
    q += cf.convergents[k - 2].second;
  } else if (k == 1) {
    p += BigInt(1);
  }
  cf.quotients.push_back(a);
  cf.convergents.emplace_back(std::move(p), std::move(q));
}

// keep_going(depth, last_denominator) is consulted before each new quotient.
using KeepGoing = std::function<bool(std::size_t, const BigInt&)>;

CFExpansion cf_rational_walk(BigInt num, BigInt den, const KeepGoing& keep_going) {
  if (den.sign() <= 0) fail(Errc::InvalidParams, "denominator must be positive");
  CFExpansion cf;
  while (!den.is_zero()) {
    if (!keep_going(cf.quotients.size(),
                    cf.convergents.empty() ? BigInt(0) : cf.convergents.back().second))
      return cf;
    BigInt a, r;
    mpz_fdiv_qr(a.raw(), r.raw(), num.raw(), den.raw());
    push_convergent(cf, a);
    num = std::move(den);
    den = std::move(r);
  }
  cf.terminated = true;
  cf.certified_depth = cf.quotients.size();
  return cf;
}

CFExpansion cf_interval_walk(const Real& alpha, double radius, const KeepGoing& keep_going) {
  mpfr_prec_t w = alpha.prec() + 32;
  Real lo(w), hi(w);
  mpfr_sub_d(lo.raw(), alpha.raw(), radius, MPFR_RNDD);
  mpfr_add_d(hi.raw(), alpha.raw(), radius, MPFR_RNDU);

  CFExpansion cf;
  for (;;) {
    if (!keep_going(cf.quotients.size(),
                    cf.convergents.empty() ? BigInt(0) : cf.convergents.back().second)) {
      cf.certified_depth = cf.quotients.size();
      return cf;
    }
    BigInt flo, fhi;
    mpfr_get_z(flo.raw(), lo.raw(), MPFR_RNDD);
    mpfr_get_z(fhi.raw(), hi.raw(), MPFR_RNDD);
    if (flo != fhi) {
      if (cf.quotients.empty())
        fail(Errc::ZeroInterval, "input radius too wide to determine the first quotient");
      cf.certified_depth = cf.quotients.size();
      return cf;
    }
    push_convergent(cf, flo);
    mpfr_sub_z(lo.raw(), lo.raw(), flo.raw(), MPFR_RNDD);
    mpfr_sub_z(hi.raw(), hi.raw(), flo.raw(), MPFR_RNDU);
    if (lo.sign() < 0) mpfr_set_zero(lo.raw(), 1);
    if (hi.sign() <= 0) {
      cf.terminated = true;
      cf.certified_depth = cf.quotients.size();
      return cf;
    }
    if (lo.sign() == 0) {
      cf.certified_depth = cf.quotients.size();
      return cf;
    }
    Real nlo(w), nhi(w);
    mpfr_ui_div(nlo.raw(), 1, hi.raw(), MPFR_RNDD);
    mpfr_ui_div(nhi.raw(), 1, lo.raw(), MPFR_RNDU);
    lo = std::move(nlo);
    hi = std::move(nhi);
  }
}

CFExpansion cf_walk(const Real& alpha, double radius, const KeepGoing& keep_going) {
  if (radius < 0) fail(Errc::InvalidParams, "negative radius");
  if (radius == 0) {
    // alpha is exactly m * 2^e
    BigInt m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.raw(), alpha.raw());
    if (m.is_zero()) return cf_rational_walk(BigInt(0), BigInt(1), keep_going);
    if (e >= 0) {
      mpz_mul_2exp(m.raw(), m.raw(), static_cast<mp_bitcnt_t>(e));
      return cf_rational_walk(std::move(m), BigInt(1), keep_going);
    }
    BigInt den(1);
    mpz_mul_2exp(den.raw(), den.raw(), static_cast<mp_bitcnt_t>(-e));
    return cf_rational_walk(std::move(m), std::move(den), keep_going);
  }
  return cf_interval_walk(alpha, radius, keep_going);
}

}  // namespace

CFExpansion continued_fraction(const Real& alpha, double radius, std::size_t max_terms) {
  return cf_walk(alpha, radius,
                 [max_terms](std::size_t depth, const BigInt&) { return depth < max_terms; });
}

CFExpansion continued_fraction_rational(const BigInt& num, const BigInt& den,
                                        std::size_t max_terms) {
  return cf_rational_walk(num, den, [max_terms](std::size_t depth, const BigInt&) {
    return depth < max_terms;
  });
}

RationalApproximant dirichlet_approximant(const Real& alpha, double radius, std::uint64_t N) {
  if (N < 2) fail(Errc::InvalidParams, "Dirichlet parameter N must be >= 2");
  BigInt bigN(static_cast<unsigned long>(N));
  // expand one convergent past denominator N
  CFExpansion cf = cf_walk(alpha, radius, [&bigN](std::size_t, const BigInt& q) {
    return !(q > bigN);
  });
  if (cf.convergents.empty()) fail(Errc::InsufficientPrecision, "no certified convergent at all");
  bool passed_N = cf.convergents.back().second > bigN;
  if (cf.terminated && !passed_N)
    fail(Errc::RationalDetected, "alpha is rational with denominator <= N");
  if (!cf.terminated && !passed_N)
    fail(Errc::InsufficientPrecision, "certified depth ends before denominators reach N");

  std::size_t k = cf.convergents.size() - 1;
  while (cf.convergents[k].second > bigN) {
    if (k == 0) fail(Errc::InsufficientPrecision, "no convergent with denominator <= N");
    --k;
  }
  RationalApproximant out;
  out.r = cf.convergents[k].first;
  out.s = cf.convergents[k].second;
  out.N = N;
  if (!(BigInt::gcd(out.r, out.s).abs() == 1))
    throw std::logic_error("convergent is not in lowest terms");

  // certified gap = |alpha - r/s| as an interval
  mpfr_prec_t w = alpha.prec() + 64;
  Real rs(w);
  mpfr_set_z(rs.raw(), out.r.raw(), MPFR_RNDN);
  mpfr_div_z(rs.raw(), rs.raw(), out.s.raw(), MPFR_RNDN);
  // |x/y rounding| <= 2 ulp; fold into the radius below
  Real diff = alpha.with_prec(w) - rs;
  double rs_err = std::ldexp(std::abs(rs.to_double()), -static_cast<int>(w) + 2);
  double gap_rad = radius + rs_err + std::ldexp(std::abs(diff.to_double()) + 1e-300,
                                                -static_cast<int>(w) + 2);
  Real gap = abs(diff);
  double gap_lo = gap.to_double() - gap_rad;
  if (gap_lo <= 0 && !cf.terminated)
    fail(Errc::InsufficientPrecision, "cannot certify alpha != r/s");
  // Dirichlet contract: gap <= 1/(sN)
  Real bound(w);
  mpfr_set_z(bound.raw(), (out.s * bigN).raw(), MPFR_RNDN);
  bound = Real::of_ui(1, w) / bound;
  Real gap_hi = gap + Real::of(gap_rad, w);
  if (!(gap_hi <= bound))
    fail(Errc::InsufficientPrecision, "certified gap exceeds 1/(sN)");
  out.gap = gap.with_prec(alpha.prec());
  out.gap_radius = gap_rad;
  return out;
}

LargeDenomReport large_denominator_check(const Real& alpha, double radius, std::uint64_t N,
                                         const Real& kappa) {
  if (kappa.sign() <= 0 || kappa.is_nan()) fail(Errc::InvalidParams, "kappa must be positive");
  RationalApproximant ap = dirichlet_approximant(alpha, radius, N);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(alpha.prec(), 128);
  // (1/2) (N / 2pi)^(1/kappa)
  Real base = div_ui(Real::of_ui(N, prec), 2) / Real::pi(prec);
  Real lower = div_ui(exp(log(base) / kappa.with_prec(prec)), 2);
  LargeDenomReport rep;
  rep.s = ap.s;
  rep.satisfied = Real::of_bigint(ap.s, prec) > lower;
  rep.lower_bound = std::move(lower);
  return rep;
}

std::vector<ProbeRow> irrationality_probe(const Real& alpha, double radius,
                                          std::uint64_t s_max) {
  if (s_max < 2) fail(Errc::InvalidParams, "s_max must be >= 2");
  BigInt cap(static_cast<unsigned long>(s_max));
  CFExpansion cf = cf_walk(alpha, radius, [&cap](std::size_t, const BigInt& q) {
    return !(q > cap);
  });
  bool passed = !cf.convergents.empty() && cf.convergents.back().second > cap;
  if (cf.terminated && !passed)
    fail(Errc::RationalDetected, "alpha is rational with denominator <= s_max");
  if (!cf.terminated && !passed)
    fail(Errc::InsufficientPrecision, "certified depth ends below s_max");

  mpfr_prec_t w = alpha.prec() + 64;
  std::vector<ProbeRow> rows;
  for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
    const BigInt& qk = cf.convergents[k].second;
    if (qk > cap || qk < BigInt(2)) continue;
    ProbeRow row;
    row.r = cf.convergents[k].first;
    row.s = qk;
    Real rs(w);
    mpfr_set_z(rs.raw(), row.r.raw(), MPFR_RNDN);
    mpfr_div_z(rs.raw(), rs.raw(), row.s.raw(), MPFR_RNDN);
    Real gap = abs(alpha.with_prec(w) - rs);
    double pad = radius + std::ldexp(std::abs(gap.to_double()) + 1e-300, -static_cast<int>(w) + 3);
    Real gap_hi = gap + Real::of(pad, w);
    row.exponent_estimate = -log(gap_hi).to_double() / std::log(row.s.to_double());
    row.gap = gap_hi.with_prec(alpha.prec());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace frobmu
