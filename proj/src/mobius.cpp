#include "frobmu/mobius.hpp"

#include <algorithm>
#include <cmath>

#include "frobmu/bounds.hpp"
#include "frobmu/parallel.hpp"

namespace frobmu {

namespace {

void linear_sieve(std::uint64_t N, std::vector<std::int8_t>& mu) {
  std::vector<std::uint32_t> primes;
  std::vector<bool> composite(N + 1, false);
  mu[1] = 1;
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      mu[i] = -1;
    }
    for (std::uint32_t p : primes) {
      if (i * p > N) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = static_cast<std::int8_t>(-mu[i]);
    }
  }
}

void segmented_sieve(std::uint64_t N, std::vector<std::int8_t>& mu) {
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(N))) + 1;
  while (root * root > N + 1) --root;
  std::vector<std::uint32_t> primes;
  {
    std::vector<bool> comp(root + 1, false);
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (comp[i]) continue;
      primes.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= root; j += i) comp[j] = true;
    }
  }
  constexpr std::uint64_t kSeg = 1u << 20;
  std::vector<std::uint64_t> rem(kSeg);
  std::vector<std::int8_t> sgn(kSeg);
  for (std::uint64_t lo = 1; lo <= N; lo += kSeg) {
    std::uint64_t hi = std::min(N + 1, lo + kSeg);
    for (std::uint64_t i = lo; i < hi; ++i) {
      rem[i - lo] = i;
      sgn[i - lo] = 1;
    }
    for (std::uint32_t p : primes) {
      std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
      if (p2 > N) break;
      for (std::uint64_t m = ((lo + p2 - 1) / p2) * p2; m < hi; m += p2) sgn[m - lo] = 0;
      for (std::uint64_t m = ((lo + p - 1) / p) * p; m < hi; m += p) {
        sgn[m - lo] = static_cast<std::int8_t>(-sgn[m - lo]);
        while (rem[m - lo] % p == 0) rem[m - lo] /= p;
      }
    }
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::int8_t v = sgn[i - lo];
      if (v != 0 && rem[i - lo] > 1) v = static_cast<std::int8_t>(-v);
      mu[i] = v;
    }
  }
  mu[1] = 1;
}

}  // namespace

MobiusTable MobiusTable::sieve(std::uint64_t N, std::uint64_t budget) {
  if (N < 1) fail(Errc::InvalidParams, "sieve limit must be >= 1");
  if (N > budget)
    fail(Errc::BudgetExceeded, "sieve limit " + std::to_string(N) + " above budget");
  MobiusTable t;
  t.limit_ = N;
  t.mu_.assign(N + 1, 0);
  if (N <= 10'000'000)
    linear_sieve(N, t.mu_);
  else
    segmented_sieve(N, t.mu_);
  return t;
}

std::int64_t MobiusTable::mertens(std::uint64_t k) const {
  if (k > limit_) fail(Errc::InvalidParams, "Mertens argument above sieve limit");
  std::int64_t s = 0;
  for (std::uint64_t n = 1; n <= k; ++n) s += mu_[n];
  return s;
}

namespace {

constexpr std::uint64_t kSumBlock = 1u << 15;

struct BlockAccum {
  Real re, im;
  double err;
  BlockAccum(mpfr_prec_t p) : re(p), im(p), err(0) {}
};

// Preallocated scratch for the per-term e(n alpha) evaluation; the hot loops
// run millions of terms, so no allocation inside them.
struct TermScratch {
  mpfr_t t, s, c, two_pi;
  mpfr_prec_t w;

  explicit TermScratch(mpfr_prec_t w_, mpfr_prec_t out_prec) : w(w_) {
    mpfr_init2(t, w);
    mpfr_init2(s, out_prec);
    mpfr_init2(c, out_prec);
    mpfr_init2(two_pi, w + 8);
    mpfr_const_pi(two_pi, MPFR_RNDN);
    mpfr_mul_2ui(two_pi, two_pi, 1, MPFR_RNDN);
  }
  ~TermScratch() {
    mpfr_clear(t);
    mpfr_clear(s);
    mpfr_clear(c);
    mpfr_clear(two_pi);
  }
  TermScratch(const TermScratch&) = delete;

  // t = 2 pi frac(n alpha); fills s, c
  void sin_cos_term(mpfr_srcptr alpha_w, unsigned long n) {
    mpfr_mul_ui(t, alpha_w, n, MPFR_RNDN);
    mpfr_frac(t, t, MPFR_RNDN);
    mpfr_mul(t, t, two_pi, MPFR_RNDN);
    mpfr_sin_cos(s, c, t, MPFR_RNDN);
  }
  void cos_term(mpfr_srcptr alpha_w, unsigned long n) {
    mpfr_mul_ui(t, alpha_w, n, MPFR_RNDN);
    mpfr_frac(t, t, MPFR_RNDN);
    mpfr_mul(t, t, two_pi, MPFR_RNDN);
    mpfr_cos(c, t, MPFR_RNDN);
  }
};

}  // namespace

MobiusSumResult mobius_exponential_sum(const MobiusTable& table, const Real& alpha,
                                       double alpha_radius, std::uint64_t N, mpfr_prec_t prec,
                                       unsigned workers) {
  if (N > table.limit()) fail(Errc::InvalidParams, "N above sieve limit");
  if (N < 1) fail(Errc::InvalidParams, "N must be >= 1");
  mpfr_prec_t w = prec + 64;
  Real aw = alpha.with_prec(w);
  double ulp = std::ldexp(1.0, -static_cast<int>(prec) + 4);

  std::uint64_t nblocks = (N + kSumBlock - 1) / kSumBlock;
  std::vector<BlockAccum> partial(nblocks, BlockAccum(prec + 16));
  run_blocks(nblocks, workers, [&](std::uint64_t b) {
    std::uint64_t lo = b * kSumBlock + 1, hi = std::min(N, (b + 1) * kSumBlock);
    BlockAccum acc(prec + 16);
    TermScratch ts(w, prec + 16);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      int m = table.mu(n);
      if (m == 0) continue;
      ts.sin_cos_term(aw.raw(), n);
      if (m > 0) {
        mpfr_add(acc.re.raw(), acc.re.raw(), ts.c, MPFR_RNDN);
        mpfr_add(acc.im.raw(), acc.im.raw(), ts.s, MPFR_RNDN);
      } else {
        mpfr_sub(acc.re.raw(), acc.re.raw(), ts.c, MPFR_RNDN);
        mpfr_sub(acc.im.raw(), acc.im.raw(), ts.s, MPFR_RNDN);
      }
      acc.err += 2 * M_PI * static_cast<double>(n) * alpha_radius + ulp;
    }
    partial[b] = std::move(acc);
  });

  MobiusSumResult out;
  out.N = N;
  out.method = "direct";
  Real re(prec + 16), im(prec + 16);
  double err = 0;
  for (auto& p : partial) {
    re += p.re;
    im += p.im;
    err += p.err;
  }
  out.value_re = re.with_prec(prec);
  out.value_im = im.with_prec(prec);
  out.error_bound = err;
  return out;
}

MobiusSumResult mobius_frobenius_sum(const MobiusTable& table, const FrobeniusSpectrum& sp,
                                     std::uint64_t N, SumMethod method, double slack,
                                     unsigned workers) {
  if (N > table.limit()) fail(Errc::InvalidParams, "N above sieve limit");
  if (N < 1) fail(Errc::InvalidParams, "N must be >= 1");
  mpfr_prec_t prec = sp.precision_bits;
  MobiusSumResult out;
  out.N = N;
  unsigned twog = 2 * sp.g;

  if (method == SumMethod::direct) {
    out.method = "direct";
    mpfr_prec_t w = prec + 64;
    std::vector<Real> angles;
    std::vector<unsigned> mults;
    for (const auto& e : sp.entries) {
      angles.push_back(e.angle.with_prec(w));
      mults.push_back(e.multiplicity);
    }
    double ulp = std::ldexp(1.0, -static_cast<int>(prec) + 4);
    std::uint64_t nblocks = (N + kSumBlock - 1) / kSumBlock;
    std::vector<BlockAccum> partial(nblocks, BlockAccum(prec + 16));
    run_blocks(nblocks, workers, [&](std::uint64_t b) {
      std::uint64_t lo = b * kSumBlock + 1, hi = std::min(N, (b + 1) * kSumBlock);
      BlockAccum acc(prec + 16);
      TermScratch ts(w, prec + 16);
      mpfr_t term;
      mpfr_init2(term, prec + 16);
      for (std::uint64_t n = lo; n <= hi; ++n) {
        int m = table.mu(n);
        if (m == 0) continue;
        mpfr_set_zero(term, 1);
        for (size_t j = 0; j < angles.size(); ++j) {
          ts.cos_term(angles[j].raw(), n);
          if (mults[j] != 1) mpfr_mul_ui(ts.c, ts.c, mults[j], MPFR_RNDN);
          mpfr_add(term, term, ts.c, MPFR_RNDN);
        }
        mpfr_div_ui(term, term, twog, MPFR_RNDN);
        if (m > 0)
          mpfr_add(acc.re.raw(), acc.re.raw(), term, MPFR_RNDN);
        else
          mpfr_sub(acc.re.raw(), acc.re.raw(), term, MPFR_RNDN);
        acc.err += 2 * M_PI * static_cast<double>(n) * sp.angle_radius + ulp;
      }
      mpfr_clear(term);
      partial[b] = std::move(acc);
    });
    Real re(prec + 16);
    double err = 0;
    for (auto& p : partial) {
      re += p.re;
      err += p.err;
    }
    out.value_re = re.with_prec(prec);
    out.value_im = Real(prec);
    out.error_bound = err;
  } else {
    out.method = "swapped";
    Real re(prec + 16), im(prec + 16);
    double err = 0;
    for (const auto& e : sp.entries) {
      MobiusSumResult part =
          mobius_exponential_sum(table, e.angle, sp.angle_radius, N, prec, workers);
      re += mul_ui(part.value_re.with_prec(prec + 16), e.multiplicity);
      im += mul_ui(part.value_im.with_prec(prec + 16), e.multiplicity);
      err += part.error_bound * e.multiplicity;
    }
    out.value_re = div_ui(re, twog).with_prec(prec);
    out.value_im = div_ui(im, twog).with_prec(prec);
    out.error_bound = err / twog;
    // conjugate pairing cancels the imaginary part up to the error bound
    if (std::abs(out.value_im.to_double()) > out.error_bound + 1e-99)
      fail(Errc::PrecisionExhausted, "imaginary part of swapped sum above its error bound");
  }

  out.bound_rhs = bound_theorem2(std::max<std::uint64_t>(N, 2), sp.q, sp.g, slack).to_double();
  double av = std::abs(out.value_re.to_double());
  out.ratio = out.bound_rhs > 0 ? av / out.bound_rhs : 0.0;
  return out;
}

}  // namespace frobmu
