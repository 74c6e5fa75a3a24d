#include "frobmu/charsums.hpp"

#include <algorithm>
#include <cmath>

#include "frobmu/bounds.hpp"
#include "frobmu/parallel.hpp"

namespace frobmu {

namespace {

using u64 = std::uint64_t;

FieldElement pth_root(const Field& K, const FieldElement& a) {
  u64 e = 1;
  for (unsigned i = 1; i < K.degree(); ++i) e *= K.p();
  return K.pow_ui(a, e);  // inverse Frobenius: (a^(p^(m-1)))^p = a
}

// Returns true when P (a polynomial over F_q) equals Q^p - Q for some
// polynomial Q of degree <= cap; peels the top Artin-Schreier term until a
// constant remains, then applies the trace criterion.
bool artin_schreier_degenerate(const Field& K, std::vector<FieldElement> P, unsigned cap) {
  u64 p = K.p();
  for (;;) {
    int d = poly_degree(K, P);
    if (d <= 0) {
      FieldElement c = d == 0 ? P[0] : K.zero();
      return K.trace_to_prime(c) == 0;
    }
    if (static_cast<u64>(d) % p != 0) return false;
    u64 D = static_cast<u64>(d) / p;
    if (D > cap) return false;  // beyond the cap the map is trusted as given
    FieldElement b = pth_root(K, P[static_cast<size_t>(d)]);
    P[static_cast<size_t>(d)] = K.zero();
    if (P.size() <= D) P.resize(D + 1, K.zero());
    P[D] = K.add(P[D], b);
  }
}

}  // namespace

RationalMap RationalMap::kloosterman(std::shared_ptr<const Field> fq, FieldElement a) {
  const Field& K = *fq;
  K.check_owner(a);
  if (K.is_zero(a)) fail(Errc::InvalidParams, "Kloosterman parameter a must be nonzero");
  RationalMap R;
  R.num = {K.one(), K.zero(), a};  // a x^2 + 1
  R.den = {K.zero(), K.one()};     // x
  R.kloosterman_a = std::move(a);
  R.field = std::move(fq);
  return R;
}

RationalMap RationalMap::from_polys(std::shared_ptr<const Field> fq,
                                    std::vector<FieldElement> num,
                                    std::vector<FieldElement> den, unsigned degeneracy_cap) {
  const Field& K = *fq;
  for (const auto& c : num) K.check_owner(c);
  for (const auto& c : den) K.check_owner(c);
  int dden = poly_degree(K, den);
  if (dden < 0) fail(Errc::InvalidParams, "denominator is identically zero");
  if (dden == 0) {
    // polynomial map: normalize and run the Artin-Schreier reduction
    std::vector<FieldElement> P = num;
    FieldElement inv = K.inv(den[0]);
    for (auto& c : P) c = K.mul(c, inv);
    if (artin_schreier_degenerate(K, P, degeneracy_cap))
      fail(Errc::DegenerateR, "R = Q^p - Q collapses the character sum");
  }
  RationalMap R;
  R.field = std::move(fq);
  R.num = std::move(num);
  R.den = std::move(den);
  return R;
}

namespace {

// Tr_{F_{q^n}/F_p} as a linear form: precomputed traces of the tower basis.
struct TraceTables {
  const ExtField* E;
  std::vector<FieldElement> ext_basis_traces;  // Tr_{ext/base}(y^i)
  std::vector<u64> base_basis_traces;          // Tr_{base/prime}(x^j)
  u64 p;

  explicit TraceTables(const ExtField& ext) : E(&ext), p(ext.base().p()) {
    const Field& K = ext.base();
    unsigned n = ext.n();
    ExtElement y = n == 1 ? ext.one() : ext.element({K.zero(), K.one()});
    ExtElement pw = ext.one();
    for (unsigned i = 0; i < n; ++i) {
      ext_basis_traces.push_back(ext.trace_to_base(pw));
      if (i + 1 < n) pw = ext.mul(pw, y);
    }
    FieldElement x = K.degree() == 1 ? K.one() : K.element({0, 1});
    FieldElement bp = K.one();
    for (unsigned j = 0; j < K.degree(); ++j) {
      base_basis_traces.push_back(K.trace_to_prime(bp));
      if (j + 1 < K.degree()) bp = K.mul(bp, x);
    }
  }

  u64 trace_abs(const ExtElement& v) const {
    const Field& K = E->base();
    FieldElement acc = K.zero();
    for (unsigned i = 0; i < E->n(); ++i)
      acc = K.add(acc, K.mul(v.c[i], ext_basis_traces[i]));
    u64 t = 0;
    for (unsigned j = 0; j < K.degree(); ++j)
      t = (t + (unsigned __int128)acc.c[j] * base_basis_traces[j]) % p;
    return t;
  }
};

std::vector<u64> factor_u64(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

ExtElement find_generator(const ExtField& E, u64 order) {
  std::vector<u64> primes = factor_u64(order);
  for (u64 idx = 1; idx <= order; ++idx) {
    ExtElement x = E.from_index(idx);
    bool ok = true;
    for (u64 l : primes) {
      if (E.pow_ui(x, order / l) == E.one()) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  throw std::logic_error("no multiplicative generator found");
}

std::vector<u64> flatten(const ExtElement& x) {
  std::vector<u64> out;
  for (const auto& c : x.c)
    for (u64 v : c.c) out.push_back(v);
  return out;
}

// Monic minimal polynomial of gamma over F_p (degree dim = n*m for a
// primitive gamma): returns lambda with gamma^dim = sum lambda_t gamma^t.
std::vector<u64> minpoly_relation(const ExtField& E, const ExtElement& gamma) {
  unsigned dim = E.n() * E.base().degree();
  u64 p = E.base().p();
  std::vector<std::vector<u64>> mat(dim, std::vector<u64>(dim + 1, 0));
  ExtElement pw = E.one();
  for (unsigned t = 0; t <= dim; ++t) {
    std::vector<u64> col = flatten(pw);
    for (unsigned i = 0; i < dim; ++i) {
      if (t < dim)
        mat[i][t] = col[i];
      else
        mat[i][dim] = col[i];
    }
    if (t < dim) pw = E.mul(pw, gamma);
  }
  auto inv_mod = [p](u64 a) {
    u64 r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = (unsigned __int128)r * b % p;
      b = (unsigned __int128)b * b % p;
      e >>= 1;
    }
    return r;
  };
  unsigned row = 0;
  std::vector<int> pivot_col(dim, -1);
  for (unsigned col = 0; col < dim && row < dim; ++col) {
    unsigned sel = row;
    while (sel < dim && mat[sel][col] == 0) ++sel;
    if (sel == dim) continue;
    std::swap(mat[sel], mat[row]);
    u64 iv = inv_mod(mat[row][col]);
    for (unsigned j = col; j <= dim; ++j) mat[row][j] = (unsigned __int128)mat[row][j] * iv % p;
    for (unsigned i = 0; i < dim; ++i) {
      if (i == row || mat[i][col] == 0) continue;
      u64 f = mat[i][col];
      for (unsigned j = col; j <= dim; ++j)
        mat[i][j] = (mat[i][j] + (unsigned __int128)(p - f) * mat[row][j]) % p;
    }
    pivot_col[row] = static_cast<int>(col);
    ++row;
  }
  if (row != dim) throw std::logic_error("powers of gamma do not span (gamma not primitive?)");
  std::vector<u64> lambda(dim, 0);
  for (unsigned i = 0; i < dim; ++i) lambda[static_cast<unsigned>(pivot_col[i])] = mat[i][dim];
  return lambda;
}

// Linear-recurrence walk over k: state holds dim consecutive sequence values.
struct TraceWalk {
  std::vector<u64> lambda;
  std::vector<u64> buf;  // circular, size dim
  unsigned dim;
  u64 p;
  std::size_t head = 0;

  u64 next() {
    u64 v = buf[head];
    unsigned __int128 acc = 0;
    for (unsigned t = 0; t < dim; ++t) {
      u64 s = buf[(head + t) % dim];
      acc += (unsigned __int128)lambda[t] * s;
    }
    buf[head] = static_cast<u64>(acc % p);
    head = (head + 1) % dim;
    return v;
  }
};

void seed_walk(const ExtField& E, const TraceTables& tt, const ExtElement& scale,
               const ExtElement& gamma, const ExtElement& start, TraceWalk& walk) {
  ExtElement x = E.mul(scale, start);
  for (unsigned i = 0; i < walk.dim; ++i) {
    walk.buf[i] = tt.trace_abs(x);
    x = E.mul(x, gamma);
  }
  walk.head = 0;
}

CharSumResult finish_from_histogram(unsigned n, u64 q, std::vector<u64> hist, u64 total_terms,
                                    mpfr_prec_t prec) {
  u64 p = hist.size();
  mpfr_prec_t w = prec + 16;
  Complex t(w);
  for (u64 v = 0; v < p; ++v) {
    if (hist[v] == 0) continue;
    Real arg = div_ui(Real::of_ui(v, w), p);
    Real s(w), c(w);
    sin_cos_2pi(arg, s, c);
    t.re += mul_ui(c, hist[v]);
    t.im += mul_ui(s, hist[v]);
  }
  CharSumResult out;
  out.n = n;
  out.histogram = std::move(hist);
  Real norm = sqrt(Real::of_bigint(BigInt::ui_pow_ui(q, n), w));
  out.normalised = Complex((t.re / norm).with_prec(prec), (t.im / norm).with_prec(prec));
  out.unnormalised = Complex(t.re.with_prec(prec), t.im.with_prec(prec));
  out.rounding_bound =
      static_cast<double>(total_terms) * std::ldexp(1.0, -static_cast<int>(prec) + 4);
  return out;
}

}  // namespace

CharSumResult char_sum_direct(const RationalMap& R, unsigned n, const CharSumOptions& opts) {
  const Field& K = *R.field;
  auto ext = ExtField::make(R.field, n);
  const ExtField& E = *ext;
  u64 total = E.order_u64(opts.enumeration_budget);
  u64 p = K.p();
  FieldElement c_scale = opts.psi_scale.value_or(K.one());
  K.check_owner(c_scale);
  if (K.is_zero(c_scale)) fail(Errc::InvalidParams, "psi scale must be nonzero");

  TraceTables tt(E);
  std::vector<u64> hist(p, 0);
  u64 terms = 0;

  if (R.kloosterman_a) {
    // x = gamma^k walk; Tr(c a x) and Tr(c x^{-1}) each satisfy the linear
    // recurrence of the minimal polynomial of gamma (resp. gamma^{-1}).
    u64 order = total - 1;
    ExtElement gamma = find_generator(E, order);
    ExtElement delta = E.inv(gamma);
    unsigned dim = E.n() * K.degree();
    std::vector<u64> lam_g = minpoly_relation(E, gamma);
    std::vector<u64> lam_d = minpoly_relation(E, delta);
    ExtElement ca = E.embed(K.mul(c_scale, *R.kloosterman_a));
    ExtElement c1 = E.embed(c_scale);

    constexpr u64 kBlock = 1u << 18;
    u64 nblocks = (order + kBlock - 1) / kBlock;
    std::vector<std::vector<u64>> parts(nblocks);
    run_blocks(nblocks, opts.workers, [&](u64 b) {
      u64 lo = b * kBlock, hi = std::min(order, (b + 1) * kBlock);
      TraceWalk wu{lam_g, std::vector<u64>(dim), dim, p, 0};
      TraceWalk ww{lam_d, std::vector<u64>(dim), dim, p, 0};
      seed_walk(E, tt, ca, gamma, E.pow_ui(gamma, lo), wu);
      seed_walk(E, tt, c1, delta, E.pow_ui(delta, lo), ww);
      std::vector<u64> h(p, 0);
      for (u64 k = lo; k < hi; ++k) {
        u64 v = wu.next() + ww.next();
        if (v >= p) v -= p;
        ++h[v];
      }
      parts[b] = std::move(h);
    });
    for (auto& h : parts)
      for (u64 v = 0; v < p; ++v) hist[v] += h[v];
    terms = order;
  } else {
    constexpr u64 kBlock = 1u << 14;
    u64 nblocks = (total + kBlock - 1) / kBlock;
    std::vector<std::vector<u64>> parts(nblocks);
    std::vector<u64> skipped(nblocks, 0);
    run_blocks(nblocks, opts.workers, [&](u64 b) {
      u64 lo = std::max<u64>(1, b * kBlock), hi = std::min(total, (b + 1) * kBlock);
      std::vector<u64> h(p, 0);
      u64 skip = 0;
      ExtElement cs = E.embed(c_scale);
      for (u64 i = lo; i < hi; ++i) {
        ExtElement x = E.from_index(i);
        ExtElement dv = poly_eval_ext(E, R.den, x);
        if (E.is_zero(dv)) {
          ++skip;
          continue;
        }
        ExtElement val = E.mul(poly_eval_ext(E, R.num, x), E.inv(dv));
        ++h[tt.trace_abs(E.mul(cs, val))];
      }
      parts[b] = std::move(h);
      skipped[b] = skip;
    });
    u64 skip_total = 0;
    for (u64 b = 0; b < nblocks; ++b) {
      for (u64 v = 0; v < p; ++v) hist[v] += parts[b][v];
      skip_total += skipped[b];
    }
    terms = total - 1 - skip_total;
  }

  return finish_from_histogram(n, K.q(), std::move(hist), terms, opts.precision_bits);
}

KloostermanSpectrum kloosterman_spectrum(const std::shared_ptr<const Field>& fq,
                                         const FieldElement& a, const Real& t1,
                                         double t1_radius) {
  const Field& K = *fq;
  K.check_owner(a);
  u64 q = K.q();
  mpfr_prec_t prec = std::max<mpfr_prec_t>(t1.prec(), 64);
  mpfr_prec_t w = prec + 32;
  Real two_sq = mul_ui(sqrt(Real::of_ui(q, w)), 2);
  double tol = t1_radius + std::ldexp(two_sq.to_double(), -static_cast<int>(prec) + 4);
  if (abs(t1).to_double() > two_sq.to_double() + tol)
    fail(Errc::WeilViolation, "|T_1| exceeds 2 sqrt(q)");

  Real u = t1.with_prec(w) / two_sq;
  double du = t1_radius / two_sq.to_double() + std::ldexp(1.0, -static_cast<int>(prec) + 4);
  if (u > Real::of_ui(1, w)) u = Real::of_ui(1, w);
  if (u < Real::of_si(-1, w)) u = Real::of_si(-1, w);
  Real s2 = Real::of_ui(1, w) - u * u;
  double s2d = s2.to_double();

  KloostermanSpectrum sp;
  sp.q = q;
  sp.a = a;
  sp.t1 = t1.with_prec(prec);
  Real phi(w);
  if (s2d <= 4 * du) {
    // boundary: 1 -+ u = 2 sin^2(pi phi) >= 8 phi^2 pins phi at 0 or 1/2
    bool at_zero = u.sign() > 0;
    phi = at_zero ? Real::of_ui(0, w) : Real::of(0.5, w);
    sp.angle_radius = std::sqrt(std::max(s2d, 0.0) + du) / 2 +
                      std::ldexp(1.0, -static_cast<int>(prec) + 4);
  } else {
    mpfr_acos(phi.raw(), u.raw(), MPFR_RNDN);
    phi = phi / mul_ui(Real::pi(w), 2);
    sp.angle_radius = du / (2 * M_PI * std::sqrt(std::max(s2d - 3 * du, s2d / 4))) * 1.5 +
                      std::ldexp(1.0, -static_cast<int>(prec) + 4);
  }
  sp.theta_angle = phi.with_prec(prec);
  return sp;
}

Real kloosterman_predict(const KloostermanSpectrum& sp, unsigned n, mpfr_prec_t prec) {
  mpfr_prec_t w = prec + 64;
  Real t = frac(mul_ui(sp.theta_angle.with_prec(w), n));
  Real s(w), c(w);
  sin_cos_2pi(t, s, c);
  Real scale = sqrt(Real::of_bigint(BigInt::ui_pow_ui(sp.q, n), w));
  return (mul_ui(c, 2) * scale).with_prec(prec);
}

RecurrenceReport kloosterman_recurrence_check(const std::shared_ptr<const Field>& fq,
                                              const FieldElement& a, unsigned n_max,
                                              const CharSumOptions& opts) {
  if (n_max < 1) fail(Errc::InvalidParams, "n_max must be >= 1");
  RationalMap R = RationalMap::kloosterman(fq, a);
  mpfr_prec_t prec = opts.precision_bits;
  RecurrenceReport rep;
  Real t_prev = Real::of_ui(2, prec);  // T_0 = theta^0 + conj(theta)^0
  Real t_cur(prec);
  Real rq = Real::of_ui(fq->q(), prec);
  Real t1(prec);
  for (unsigned n = 1; n <= n_max; ++n) {
    CharSumResult sum = char_sum_direct(R, n, opts);
    if (std::abs(sum.unnormalised.im.to_double()) > sum.rounding_bound + 1e-99)
      throw std::logic_error("Kloosterman sum has a non-real unnormalised value");
    // theta power sum from the raw character sum: T_n = (-1)^(n+1) S_n
    Real direct_t = n % 2 == 1 ? sum.unnormalised.re : -sum.unnormalised.re;
    Real rec(prec);
    if (n == 1) {
      t1 = direct_t;
      t_cur = t1;
      rec = t1;
    } else {
      rec = t1 * t_cur - rq * t_prev;
      t_prev = t_cur;
      t_cur = rec;
    }
    RecurrenceRow row;
    row.n = n;
    row.direct = std::move(direct_t);
    row.recurrence = rec;
    row.deviation = std::abs((row.direct - row.recurrence).to_double());
    rep.max_deviation = std::max(rep.max_deviation, row.deviation);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

MobiusSumResult mobius_char_sum(const MobiusTable& table, const KloostermanSpectrum& sp,
                                std::uint64_t N, mpfr_prec_t prec, unsigned workers,
                                const Real* kappa) {
  MobiusSumResult res =
      mobius_exponential_sum(table, sp.theta_angle, sp.angle_radius, N, prec, workers);
  res.value_im = Real(prec);  // the sum is sum mu(n) cos(2 pi n phi), real by definition
  if (kappa) {
    res.bound_rhs = bound_mu_alpha(std::max<std::uint64_t>(N, 2), *kappa, 1.0, prec).to_double();
    res.ratio = std::abs(res.value_re.to_double()) / res.bound_rhs;
  } else {
    res.bound_rhs = 0;
    res.ratio = 0;
  }
  return res;
}

}  // namespace frobmu
