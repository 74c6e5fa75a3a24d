#include "frobmu/curves.hpp"

#include <algorithm>

#include "frobmu/parallel.hpp"

namespace frobmu {

namespace {

std::string elem_str(const Field& K, const FieldElement& e) {
  if (K.degree() == 1) return "[" + std::to_string(e.c[0]) + "]";
  std::string s = "[";
  for (unsigned i = 0; i < K.degree(); ++i) {
    if (i) s += ",";
    s += std::to_string(e.c[i]);
  }
  return s + "]";
}

std::string poly_str(const Field& K, const std::vector<FieldElement>& f) {
  std::string s = "[";
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    if (K.degree() == 1)
      s += std::to_string(f[i].c[0]);
    else
      s += elem_str(K, f[i]);
  }
  return s + "]";
}

}  // namespace

CurveSpec CurveSpec::elliptic(std::shared_ptr<const Field> base, FieldElement a, FieldElement b) {
  const Field& K = *base;
  if (K.p() == 2) fail(Errc::EvenCharacteristic, "curve models need odd characteristic");
  K.check_owner(a);
  K.check_owner(b);
  // 4a^3 + 27b^2 (also the right criterion in characteristic 3, where it is a^3)
  FieldElement four = K.element({4 % K.p()});
  FieldElement twenty7 = K.element({27 % K.p()});
  FieldElement disc = K.add(K.mul(four, K.mul(a, K.mul(a, a))), K.mul(twenty7, K.mul(b, b)));
  if (K.is_zero(disc)) fail(Errc::SingularCurve, "elliptic discriminant 4a^3 + 27b^2 = 0");
  std::vector<FieldElement> rhs{b, a, K.zero(), K.one()};  // x^3 + a x + b
  return CurveSpec(std::move(base), EllipticModel{std::move(a), std::move(b)}, 1, std::move(rhs));
}

CurveSpec CurveSpec::hyperelliptic(std::shared_ptr<const Field> base,
                                   std::vector<FieldElement> f) {
  const Field& K = *base;
  if (K.p() == 2) fail(Errc::EvenCharacteristic, "curve models need odd characteristic");
  for (const auto& c : f) K.check_owner(c);
  int deg = poly_degree(K, f);
  if (deg <= 2) fail(Errc::GenusZero, "deg f <= 2 gives genus 0");
  f.resize(static_cast<size_t>(deg) + 1, K.zero());
  std::vector<FieldElement> g = poly_gcd(K, f, poly_derivative(K, f));
  if (poly_degree(K, g) != 0) fail(Errc::SingularCurve, "f is not squarefree");
  unsigned genus = static_cast<unsigned>((deg - 1) / 2);
  std::vector<FieldElement> rhs = f;
  return CurveSpec(std::move(base), HyperellipticModel{std::move(f)}, genus, std::move(rhs));
}

std::string CurveSpec::spec_string() const {
  const Field& K = *base_;
  if (is_elliptic()) {
    const auto& m = std::get<EllipticModel>(model_);
    return "elliptic " + K.spec_string() + " a=" + elem_str(K, m.a) + " b=" + elem_str(K, m.b);
  }
  const auto& m = std::get<HyperellipticModel>(model_);
  return "hyperelliptic " + K.spec_string() + " f=" + poly_str(K, m.f);
}

namespace {

// Number of points at infinity on the smooth model over F_{q^n}.
std::uint64_t infinity_count(const CurveSpec& spec, const ExtField& E) {
  if (spec.is_elliptic()) return 1;
  int deg = static_cast<int>(spec.rhs().size()) - 1;
  if (deg % 2 == 1) return 1;  // deg = 2g+1
  const FieldElement& lc = spec.rhs().back();
  int chi = E.quadratic_character(E.embed(lc));
  return static_cast<std::uint64_t>(1 + chi);
}

}  // namespace

CountRecord count_points(const CurveSpec& spec, unsigned n, const CountOptions& opts) {
  if (n < 1) fail(Errc::InvalidParams, "extension degree must be >= 1");
  auto ext = ExtField::make(spec.base(), n, opts.ext_seed);
  const ExtField& E = *ext;
  std::uint64_t total = E.order_u64(opts.enumeration_budget);

  const std::vector<FieldElement>& rhs = spec.rhs();

  constexpr std::uint64_t kBlock = 1 << 14;
  std::uint64_t nblocks = (total + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> partial(nblocks, 0);

  constexpr std::uint64_t kTableCap = 1ull << 26;
  std::uint64_t affine = 0;
  if (!opts.force_powering && total <= kTableCap) {
    // cnt[i] = #{y : y^2 = element i}; affine count = sum over x of cnt[f(x)]
    std::vector<std::uint8_t> cnt(total, 0);
    for (std::uint64_t i = 0; i < total; ++i) {
      ExtElement y = E.from_index(i);
      ++cnt[E.index(E.mul(y, y))];
    }
    run_blocks(nblocks, opts.workers, [&](std::uint64_t b) {
      std::uint64_t lo = b * kBlock, hi = std::min(total, lo + kBlock);
      std::uint64_t s = 0;
      for (std::uint64_t i = lo; i < hi; ++i)
        s += cnt[E.index(poly_eval_ext(E, rhs, E.from_index(i)))];
      partial[b] = s;
    });
  } else {
    run_blocks(nblocks, opts.workers, [&](std::uint64_t b) {
      std::uint64_t lo = b * kBlock, hi = std::min(total, lo + kBlock);
      std::uint64_t s = 0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        int chi = E.quadratic_character(poly_eval_ext(E, rhs, E.from_index(i)));
        s += static_cast<std::uint64_t>(1 + chi);
      }
      partial[b] = s;
    });
  }
  for (std::uint64_t b = 0; b < nblocks; ++b) affine += partial[b];

  std::uint64_t count = affine + infinity_count(spec, E);
  BigInt qn = BigInt::ui_pow_ui(spec.base()->q(), n);
  BigInt tr = qn + BigInt(1) - BigInt(static_cast<unsigned long>(count));
  unsigned g = spec.genus();
  // Weil: A^2 <= 4 g^2 q^n
  if (tr * tr > BigInt(4ul * g * g) * qn)
    fail(Errc::WeilViolation, "count " + std::to_string(count) + " violates the Weil bound");
  CountRecord rec;
  rec.n = n;
  rec.count = count;
  rec.trace = tr.to_slong();
  return rec;
}

std::vector<CountRecord> trace_sequence(const CurveSpec& spec, unsigned n_max, CountCache* cache,
                                        const CountOptions& opts) {
  std::vector<CountRecord> out;
  if (n_max == 0) return out;
  std::string key = spec.spec_string();
  std::uint64_t q = spec.base()->q();
  for (unsigned n = 1; n <= n_max; ++n) {
    std::optional<std::uint64_t> hit = cache ? cache->get(key, n) : std::nullopt;
    if (hit) {
      BigInt tr = BigInt::ui_pow_ui(q, n) + BigInt(1) - BigInt(static_cast<unsigned long>(*hit));
      out.push_back(CountRecord{n, *hit, tr.to_slong()});
      continue;
    }
    CountRecord rec = count_points(spec, n, opts);
    if (cache) cache->put(key, n, rec.count);
    out.push_back(rec);
  }
  return out;
}

Real normalised_trace(const CountRecord& rec, std::uint64_t q, unsigned g, mpfr_prec_t prec) {
  Real num = Real::of_si(rec.trace, prec);
  Real denom = sqrt(Real::of_bigint(BigInt::ui_pow_ui(q, rec.n), prec));
  return num / mul_ui(denom, 2 * g);
}

}  // namespace frobmu
