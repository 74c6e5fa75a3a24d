#include "frobmu/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace frobmu {

LPolynomial reconstruct_l_polynomial(const std::vector<CountRecord>& records, std::uint64_t q,
                                     unsigned g) {
  if (g < 1) fail(Errc::InvalidParams, "genus must be >= 1");
  if (records.size() < 2 * g) fail(Errc::InvalidParams, "need counts for n = 1..2g");
  std::vector<BigInt> s(2 * g + 1);
  for (unsigned i = 1; i <= 2 * g; ++i) {
    if (records[i - 1].n != i) fail(Errc::InvalidParams, "records must cover n = 1..2g in order");
    s[i] = BigInt(static_cast<long>(records[i - 1].trace));
  }
  LPolynomial lp;
  lp.q = q;
  lp.g = g;
  lp.coeffs.assign(2 * g + 1, BigInt(0));
  lp.coeffs[0] = BigInt(1);
  for (unsigned k = 1; k <= 2 * g; ++k) {
    BigInt acc(0);
    for (unsigned i = 1; i <= k; ++i) acc += s[i] * lp.coeffs[k - i];
    acc = -acc;
    if (!acc.divisible_by_ui(k))
      fail(Errc::NonIntegerCoefficient,
           "Newton identity for c_" + std::to_string(k) + " does not divide by k");
    lp.coeffs[k] = acc.divexact_ui(k);
  }
  verify_functional_equation(lp);
  return lp;
}

void verify_functional_equation(const LPolynomial& lp) {
  unsigned g = lp.g;
  if (lp.coeffs.size() != 2 * g + 1 || !(lp.coeffs[0] == 1))
    fail(Errc::InvalidParams, "malformed L-polynomial");
  for (unsigned i = 0; i <= g; ++i) {
    BigInt expect = BigInt::ui_pow_ui(lp.q, g - i) * lp.coeffs[i];
    if (lp.coeffs[2 * g - i] != expect)
      fail(Errc::SymmetryViolation,
           "c_" + std::to_string(2 * g - i) + " != q^(g-i) c_" + std::to_string(i));
  }
}

bool is_ordinary(const LPolynomial& lp, std::uint64_t p) {
  return !lp.coeffs[lp.g].divisible_by_ui(p);
}

BigInt exact_trace(const LPolynomial& lp, unsigned n, std::uint64_t bit_budget) {
  if (n < 1) fail(Errc::InvalidParams, "n must be >= 1");
  unsigned g = lp.g;
  double bits = n * std::log2(static_cast<double>(lp.q)) / 2.0 + 8;
  if (bits > static_cast<double>(bit_budget))
    fail(Errc::BudgetExceeded, "A_C(" + std::to_string(n) + ") exceeds the bit budget");
  // s_k for k <= 2g from Newton's identities, then the order-2g recurrence.
  std::vector<BigInt> s(std::max(2 * g, n) + 1);
  for (unsigned k = 1; k <= 2 * g && k <= n; ++k) {
    BigInt acc = BigInt(static_cast<long>(k)) * lp.coeffs[k];
    for (unsigned i = 1; i < k; ++i) acc += lp.coeffs[i] * s[k - i];
    s[k] = -acc;
  }
  for (unsigned k = 2 * g + 1; k <= n; ++k) {
    BigInt acc(0);
    for (unsigned i = 1; i <= 2 * g; ++i) acc += lp.coeffs[i] * s[k - i];
    s[k] = -acc;
  }
  return s[n];
}

// ---------------------------------------------------------------------------
// Root finding

namespace {

using ZPoly = std::vector<BigInt>;  // constant term first

int zdeg(const ZPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (!f[static_cast<size_t>(i)].is_zero()) return i;
  return -1;
}

void ztrim(ZPoly& f) { f.resize(static_cast<size_t>(zdeg(f) + 1)); }

ZPoly zderiv(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly d(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) d[i - 1] = BigInt(static_cast<long>(i)) * f[i];
  ztrim(d);
  return d;
}

BigInt zcontent(const ZPoly& f) {
  BigInt c(0);
  for (const auto& a : f) c = BigInt::gcd(c, a);
  return c;
}

void zprimitive(ZPoly& f) {
  ztrim(f);
  if (f.empty()) return;
  BigInt c = zcontent(f);
  if (f.back().sign() < 0) c = -c;
  if (c == 1) return;
  for (auto& a : f) a = a.divexact(c);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), BigInt(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  ztrim(r);
  return r;
}

// Pseudo-remainder of a by b (b nonzero).
ZPoly zprem(ZPoly a, const ZPoly& b) {
  int db = zdeg(b);
  const BigInt& lb = b[static_cast<size_t>(db)];
  int da = zdeg(a);
  while (da >= db) {
    BigInt la = a[static_cast<size_t>(da)];
    for (auto& c : a) c *= lb;
    for (int j = 0; j <= db; ++j)
      a[static_cast<size_t>(da - db + j)] -= la * b[static_cast<size_t>(j)];
    ztrim(a);
    da = zdeg(a);
  }
  return a;
}

ZPoly zgcd(ZPoly a, ZPoly b) {
  zprimitive(a);
  zprimitive(b);
  if (zdeg(a) < zdeg(b)) std::swap(a, b);
  while (zdeg(b) >= 0) {
    ZPoly r = zprem(a, b);
    zprimitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  zprimitive(a);
  return a;
}

// Exact division; throws if the division is not exact.
ZPoly zdivexact(const ZPoly& a, const ZPoly& b) {
  int da = zdeg(a), db = zdeg(b);
  if (db < 0) throw std::logic_error("division by zero polynomial");
  if (da < db) {
    if (da < 0) return {};
    throw std::logic_error("inexact polynomial division");
  }
  ZPoly rem = a;
  ZPoly quo(static_cast<size_t>(da - db + 1), BigInt(0));
  const BigInt& lb = b[static_cast<size_t>(db)];
  for (int i = da; i >= db; --i) {
    const BigInt& li = rem[static_cast<size_t>(i)];
    if (li.is_zero()) continue;
    // li must be divisible by lb
    BigInt qc = li;
    if (!(lb == 1)) {
      BigInt g = BigInt::gcd(li, lb);
      if (!(g.abs() == lb.abs())) throw std::logic_error("inexact polynomial division");
      qc = li.divexact(lb);
    }
    quo[static_cast<size_t>(i - db)] = qc;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<size_t>(i - db + j)] -= qc * b[static_cast<size_t>(j)];
  }
  if (zdeg(rem) >= 0) throw std::logic_error("inexact polynomial division");
  return quo;
}

// Yun's squarefree decomposition: f = prod h_k^k, h_k squarefree, coprime.
std::vector<std::pair<ZPoly, unsigned>> squarefree_decomposition(ZPoly f) {
  zprimitive(f);
  std::vector<std::pair<ZPoly, unsigned>> out;
  if (zdeg(f) <= 0) return out;
  ZPoly fp = zderiv(f);
  ZPoly d = zgcd(f, fp);
  if (zdeg(d) == 0) {
    out.emplace_back(std::move(f), 1);
    return out;
  }
  ZPoly u = zdivexact(f, d);
  ZPoly v = zdivexact(fp, d);
  unsigned k = 1;
  while (zdeg(u) > 0) {
    ZPoly w = zsub(v, zderiv(u));
    if (zdeg(w) < 0) {
      out.emplace_back(u, k);
      break;
    }
    ZPoly h = zgcd(u, w);
    if (zdeg(h) > 0) out.emplace_back(h, k);
    u = zdivexact(u, h);
    v = zdivexact(w, h);
    ++k;
  }
  return out;
}

BigInt zeval(const ZPoly& f, const BigInt& x) {
  BigInt v(0);
  for (size_t i = f.size(); i-- > 0;) v = v * x + f[i];
  return v;
}

std::vector<std::complex<double>> durand_kerner(const std::vector<double>& monic, double radius) {
  int deg = static_cast<int>(monic.size()) - 1;
  std::vector<std::complex<double>> z(static_cast<size_t>(deg));
  for (int k = 0; k < deg; ++k) {
    double th = 2 * M_PI * (k + 0.3137) / deg + 0.2711;
    z[static_cast<size_t>(k)] = std::polar(radius, th);
  }
  auto eval = [&](std::complex<double> x) {
    std::complex<double> v = 0;
    for (size_t i = monic.size(); i-- > 0;) v = v * x + monic[i];
    return v;
  };
  for (int it = 0; it < 400; ++it) {
    double worst = 0;
    for (int i = 0; i < deg; ++i) {
      std::complex<double> denom = 1;
      for (int j = 0; j < deg; ++j)
        if (j != i) denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
      std::complex<double> dz = eval(z[static_cast<size_t>(i)]) / denom;
      z[static_cast<size_t>(i)] -= dz;
      worst = std::max(worst, std::abs(dz));
    }
    if (worst < 1e-13 * radius) break;
  }
  return z;
}

struct CertifiedRoot {
  Complex z;
  double radius;
};

// Horner at complex z; also accumulates sum |a_i| |z|^i for the error bound.
void eval_with_bound(const ZPoly& f, const Complex& z, mpfr_prec_t w, Complex& val, Real& mag) {
  Complex v(w);
  Real m(w);
  Real az = z.abs();
  for (size_t i = f.size(); i-- > 0;) {
    v = v * z;
    v.re += Real::of_bigint(f[i], w);
    m = m * az + abs(Real::of_bigint(f[i], w));
  }
  val = std::move(v);
  mag = std::move(m);
}

// Newton refinement plus the residual certificate: some root of F lies within
// deg(F) |F(z)/F'(z)| of z.
CertifiedRoot refine_root(const ZPoly& F, std::complex<double> seed, mpfr_prec_t prec) {
  mpfr_prec_t w = prec + 32;
  int deg = zdeg(F);
  ZPoly Fp = zderiv(F);
  Complex z(Real::of(seed.real(), w), Real::of(seed.imag(), w));
  for (int it = 0; it < 64; ++it) {
    Complex fv(w), fpv(w);
    Real mag(w), magp(w);
    eval_with_bound(F, z, w, fv, mag);
    eval_with_bound(Fp, z, w, fpv, magp);
    if (fpv.abs().is_zero()) break;
    Complex step = fv / fpv;
    z = z - step;
    Real sa = step.abs();
    Real za = z.abs();
    // stop once the step is below the working-precision noise floor
    Real thresh = za;
    mpfr_mul_2si(thresh.raw(), thresh.raw(), -static_cast<long>(prec + 16), MPFR_RNDN);
    if (sa <= thresh) break;
  }
  Complex fv(w), fpv(w);
  Real mag(w), magp(w);
  eval_with_bound(F, z, w, fv, mag);
  eval_with_bound(Fp, z, w, fpv, magp);
  Real ulp_scale = Real::of(static_cast<double>(4 * (deg + 1)), w);
  mpfr_mul_2si(ulp_scale.raw(), ulp_scale.raw(), -static_cast<long>(w), MPFR_RNDN);
  Real err_f = mag * ulp_scale;
  Real err_fp = magp * ulp_scale;
  Real denom = fpv.abs() - err_fp;
  if (!(denom.sign() > 0)) fail(Errc::PrecisionExhausted, "derivative not separated from zero");
  Real rad = mul_ui((fv.abs() + err_f) / denom, static_cast<unsigned long>(deg));
  CertifiedRoot out{Complex(z.re.with_prec(prec), z.im.with_prec(prec)), rad.to_double()};
  // account for rounding the center down to P bits
  out.radius += std::ldexp(std::max(std::abs(out.z.re.to_double()), std::abs(out.z.im.to_double())),
                           -static_cast<int>(prec) + 2);
  return out;
}

}  // namespace

FrobeniusSpectrum compute_spectrum(const LPolynomial& lp, mpfr_prec_t prec) {
  if (prec < 64) fail(Errc::InvalidParams, "precision must be >= 64 bits");
  verify_functional_equation(lp);
  unsigned g = lp.g;
  std::uint64_t q = lp.q;
  mpfr_prec_t w = prec + 32;

  // chi(T) = T^{2g} P(1/T), monic of degree 2g, roots = eigenvalues
  ZPoly chi(2 * g + 1);
  for (unsigned i = 0; i <= 2 * g; ++i) chi[i] = lp.coeffs[2 * g - i];

  Real sqrt_q = sqrt(Real::of_ui(q, w));
  double sq_d = sqrt_q.to_double();

  struct RawRoot {
    Complex z;
    double radius;
    unsigned mult;
    bool exact_real;  // z = +-sqrt(q), known exactly
  };
  std::vector<RawRoot> roots;

  for (auto& [factor, mult] : squarefree_decomposition(chi)) {
    ZPoly F = factor;
    // strip real roots +-sqrt(q) exactly; the remaining roots are non-real
    std::uint64_t s = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(q))));
    while (s > 0 && s * s > q) --s;
    while ((s + 1) * (s + 1) <= q) ++s;
    if (s * s == q) {
      for (long sign : {1L, -1L}) {
        BigInt r(sign * static_cast<long>(s));
        while (zdeg(F) >= 1 && zeval(F, r).is_zero()) {
          ZPoly lin{-r, BigInt(1)};
          F = zdivexact(F, lin);
          Real re = Real::of_si(sign * static_cast<long>(s), prec);
          roots.push_back({Complex(re, Real(prec)), 0.0, mult, true});
        }
      }
    } else {
      ZPoly quad{BigInt(-static_cast<long>(q)), BigInt(0), BigInt(1)};  // T^2 - q
      for (;;) {
        if (zdeg(F) < 2) break;
        ZPoly rem = zprem(F, quad);  // quad is monic: plain remainder
        if (zdeg(rem) >= 0) break;
        F = zdivexact(F, quad);
        for (int sign : {1, -1}) {
          Real re = sqrt_q.with_prec(prec);
          if (sign < 0) mpfr_neg(re.raw(), re.raw(), MPFR_RNDN);
          roots.push_back({Complex(re, Real(prec)), std::ldexp(sq_d, -static_cast<int>(prec) + 2),
                           mult, true});
        }
      }
    }
    int d = zdeg(F);
    if (d <= 0) continue;
    std::vector<double> monic(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) monic[static_cast<size_t>(i)] = F[static_cast<size_t>(i)].to_double();
    auto seeds = durand_kerner(monic, sq_d);
    for (auto seed : seeds) {
      CertifiedRoot cr = refine_root(F, seed, prec);
      // |beta| = sqrt(q) for honest counts; symmetric-but-fake inputs land
      // elsewhere (e.g. real roots other than the stripped +-sqrt(q))
      double ab = cr.z.abs().to_double();
      if (std::abs(ab - sq_d) > cr.radius + std::ldexp(sq_d, -static_cast<int>(prec) + 8))
        fail(Errc::WeilViolation, "eigenvalue modulus differs from sqrt(q)");
      if (std::abs(cr.z.im.to_double()) <= cr.radius)
        fail(Errc::PrecisionExhausted, "root disk touches the real axis");
      roots.push_back({std::move(cr.z), cr.radius, mult, false});
    }
  }

  // certification target: radius below 2^-(prec-16) sqrt(q)
  double target = std::ldexp(sq_d, -static_cast<int>(prec) + 16);
  double max_rad = 0;
  for (const auto& r : roots) max_rad = std::max(max_rad, r.radius);
  if (max_rad > target) fail(Errc::PrecisionExhausted, "certified radius above target");

  // pairwise disk separation (equal roots were merged exactly)
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j) {
      Real d = (roots[i].z - roots[j].z).abs();
      if (d.to_double() <= roots[i].radius + roots[j].radius)
        fail(Errc::ClusteredRoots, "distinct root disks overlap");
    }

  FrobeniusSpectrum sp;
  sp.q = q;
  sp.g = g;
  sp.precision_bits = prec;
  sp.eigenvalue_radius = max_rad;

  Real two_pi = mul_ui(Real::pi(w), 2);
  unsigned total = 0;
  for (auto& r : roots) {
    SpectrumEntry e;
    e.multiplicity = r.mult;
    total += r.mult;
    Real angle(prec);
    if (r.exact_real) {
      angle = r.z.re.sign() >= 0 ? Real::of_ui(0, prec) : Real::of(0.5, prec);
    } else {
      Real a = atan2(r.z.im, r.z.re);
      a = a / two_pi;
      if (a.sign() < 0) a += Real::of_ui(1, w);
      angle = a.with_prec(prec);
    }
    e.eigenvalue = std::move(r.z);
    e.angle = std::move(angle);
    sp.entries.push_back(std::move(e));
  }
  if (total != 2 * g) throw std::logic_error("root multiplicities do not sum to 2g");

  sp.angle_radius =
      max_rad / (2 * M_PI * (sq_d - max_rad)) + std::ldexp(1.0, -static_cast<int>(prec) + 3);
  std::sort(sp.entries.begin(), sp.entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.angle < b.angle; });
  return sp;
}

FrobeniusSpectrum compute_spectrum_auto(const LPolynomial& lp, mpfr_prec_t start_bits,
                                        mpfr_prec_t max_bits) {
  mpfr_prec_t p = start_bits;
  for (;;) {
    try {
      return compute_spectrum(lp, p);
    } catch (const Error& e) {
      if ((e.code() != Errc::PrecisionExhausted && e.code() != Errc::ClusteredRoots) ||
          p >= max_bits)
        throw;
      p = std::min(max_bits, p * 2);
    }
  }
}

AngleTrace normalised_trace_from_angles(const FrobeniusSpectrum& sp, std::uint64_t n,
                                        double max_error) {
  mpfr_prec_t prec = sp.precision_bits;
  mpfr_prec_t w = prec + 64;
  Real acc(w);
  for (const auto& e : sp.entries) {
    Real t = frac(mul_ui(e.angle.with_prec(w), n));
    Real s(w), c(w);
    sin_cos_2pi(t, s, c);
    acc += mul_ui(c, e.multiplicity);
  }
  Real value = div_ui(acc, 2 * sp.g).with_prec(prec);
  double eb = 2 * M_PI * static_cast<double>(n) * sp.angle_radius +
              std::ldexp(1.0, -static_cast<int>(prec) + 8);
  if (max_error > 0 && eb > max_error)
    fail(Errc::PrecisionExhausted, "angle-path error bound exceeds the requested tolerance");
  return AngleTrace{std::move(value), eb};
}

Real eigenvalue_height(std::uint64_t q, mpfr_prec_t prec) {
  if (q < 2) fail(Errc::InvalidParams, "q must be >= 2");
  return div_ui(log(Real::of_ui(q, prec)), 2);
}

Real angle_exponential_height_bound(std::uint64_t q, mpfr_prec_t prec) {
  if (q < 2) fail(Errc::InvalidParams, "q must be >= 2");
  return log(Real::of_ui(q, prec));
}

}  // namespace frobmu
