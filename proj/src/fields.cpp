#include "frobmu/fields.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace frobmu {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 addm(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

// Dense F_p[x] polynomials, constant term first, trailing zeros allowed.
using Poly = std::vector<u64>;

int pdeg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

Poly pmul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + (u128)a[i] * b[j]) % p;
  }
  return r;
}

// Remainder modulo a monic f.
Poly pmod(Poly a, const Poly& f, u64 p) {
  int df = pdeg(f);
  for (int i = pdeg(a); i >= df; --i) {
    u64 c = a[static_cast<size_t>(i)];
    if (c == 0) continue;
    for (int j = 0; j <= df; ++j) {
      size_t k = static_cast<size_t>(i - df + j);
      a[k] = subm(a[k], mulm(c, f[static_cast<size_t>(j)], p), p);
    }
  }
  a.resize(static_cast<size_t>(df));
  return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  return pmod(pmul(a, b, p), f, p);
}

Poly ppowmod(Poly base, u64 e, const Poly& f, u64 p) {
  Poly r{1};
  base = pmod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly pgcd(Poly a, Poly b, u64 p) {
  while (pdeg(b) >= 0) {
    // make b monic, then reduce
    int db = pdeg(b);
    u64 lc = b[static_cast<size_t>(db)];
    if (lc != 1) {
      u64 inv = 1, base = lc, e = p - 2;
      while (e) {
        if (e & 1) inv = mulm(inv, base, p);
        base = mulm(base, base, p);
        e >>= 1;
      }
      for (auto& c : b) c = mulm(c, inv, p);
    }
    Poly r = pmod(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  int da = pdeg(a);
  a.resize(static_cast<size_t>(da + 1));
  return a;
}

std::vector<unsigned> prime_divisors(unsigned m) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

// f monic of degree m over F_p. Rabin test: x^(p^m) = x mod f and
// gcd(x^(p^(m/l)) - x, f) = 1 for every prime l | m.
bool irreducible_fp(const Poly& f, unsigned m, u64 p) {
  if (m == 1) return true;
  Poly x{0, 1};
  std::vector<Poly> frob(m + 1);  // frob[k] = x^(p^k) mod f
  frob[0] = pmod(x, f, p);
  for (unsigned k = 1; k <= m; ++k) frob[k] = ppowmod(frob[k - 1], p, f, p);
  Poly diff = frob[m];
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = subm(diff[1], 1, p);
  if (pdeg(diff) >= 0) return false;
  for (unsigned l : prime_divisors(m)) {
    Poly d = frob[m / l];
    if (d.size() < 2) d.resize(2, 0);
    d[1] = subm(d[1], 1, p);
    if (pdeg(d) < 0) return false;  // x^(p^(m/l)) = x: proper subfield splits f
    Poly g = pgcd(f, d, p);
    if (pdeg(g) != 0) return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  mpz_t z;
  mpz_init_set_ui(z, n);
  int r = mpz_probab_prime_p(z, 40);
  mpz_clear(z);
  return r != 0;
}

Field::Field(u64 p, unsigned m, std::vector<u64> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
  q_ = 1;
  for (unsigned i = 0; i < m_; ++i) q_ *= p_;
  // x^(m+k) mod modulus, k = 0..m-2
  if (m_ >= 2) {
    redrow_.resize(static_cast<size_t>(m_ - 1) * m_);
    Poly cur(m_ + 1, 0);
    cur[m_] = 1;  // x^m
    cur = pmod(std::move(cur), modulus_, p_);
    for (unsigned k = 0; k + 1 < m_; ++k) {
      // cur = x^(m+k) mod f, degree < m
      for (unsigned j = 0; j < m_; ++j) redrow_[static_cast<size_t>(k) * m_ + j] = cur[j];
      // multiply by x
      Poly nxt(m_ + 1, 0);
      for (unsigned j = 0; j < m_; ++j) nxt[j + 1] = cur[j];
      cur = pmod(std::move(nxt), modulus_, p_);
    }
  }
}

std::shared_ptr<const Field> Field::make(u64 p, unsigned m, const std::vector<u64>* seed_poly) {
  if (!is_prime_u64(p)) fail(Errc::NonPrimeP, std::to_string(p) + " is not prime");
  if (m < 1) fail(Errc::InvalidParams, "degree m must be >= 1");
  if (p >= (1ull << 31)) fail(Errc::InvalidParams, "characteristic too large (>= 2^31)");
  double bits = m * std::log2(static_cast<double>(p));
  if (bits >= 62.0) fail(Errc::InvalidParams, "field too large (p^m >= 2^62)");

  if (seed_poly) {
    if (seed_poly->size() != static_cast<size_t>(m) + 1 || seed_poly->back() % p != 1)
      fail(Errc::InvalidParams, "seed polynomial must be monic of degree m");
    Poly f(*seed_poly);
    for (auto& c : f) c %= p;
    if (!irreducible_fp(f, m, p)) fail(Errc::ReduciblePoly, "seed polynomial is reducible");
    return std::shared_ptr<const Field>(new Field(p, m, std::move(f)));
  }

  // counting-order search: candidate code enumerates lower coefficients,
  // least significant digit is the constant term
  Poly f(m + 1, 0);
  f[m] = 1;
  u64 span = 1;
  for (unsigned i = 0; i < m; ++i) span *= p;
  for (u64 code = 0;; ++code) {
    if (code >= span) fail(Errc::InvalidParams, "no irreducible found (unreachable)");
    u64 rem = code;
    for (unsigned i = 0; i < m; ++i) {
      f[i] = rem % p;
      rem /= p;
    }
    if (irreducible_fp(f, m, p))
      return std::shared_ptr<const Field>(new Field(p, m, f));
  }
}

std::string Field::spec_string() const {
  std::string s = std::to_string(p_) + "^" + std::to_string(m_) + "/[";
  for (unsigned i = 0; i <= m_; ++i) {
    if (i) s += ",";
    s += std::to_string(modulus_[i]);
  }
  return s + "]";
}

FieldElement Field::zero() const { return FieldElement{std::vector<u64>(m_, 0), this}; }

FieldElement Field::one() const {
  std::vector<u64> c(m_, 0);
  c[0] = 1;
  return FieldElement{std::move(c), this};
}

FieldElement Field::element(std::vector<u64> coeffs) const {
  if (coeffs.size() > m_) fail(Errc::InvalidParams, "too many coefficients for field degree");
  coeffs.resize(m_, 0);
  for (auto& c : coeffs) c %= p_;
  return FieldElement{std::move(coeffs), this};
}

FieldElement Field::from_index(u64 idx) const {
  std::vector<u64> c(m_);
  for (unsigned i = 0; i < m_; ++i) {
    c[i] = idx % p_;
    idx /= p_;
  }
  return FieldElement{std::move(c), this};
}

u64 Field::index(const FieldElement& a) const {
  check_owner(a);
  u64 idx = 0;
  for (unsigned i = m_; i-- > 0;) idx = idx * p_ + a.c[i];
  return idx;
}

void Field::check_owner(const FieldElement& a) const {
  if (a.owner != this) fail(Errc::OwnerMismatch, "element does not belong to this field");
}

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
  check_owner(a);
  check_owner(b);
  FieldElement r{std::vector<u64>(m_), this};
  for (unsigned i = 0; i < m_; ++i) r.c[i] = addm(a.c[i], b.c[i], p_);
  return r;
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
  check_owner(a);
  check_owner(b);
  FieldElement r{std::vector<u64>(m_), this};
  for (unsigned i = 0; i < m_; ++i) r.c[i] = subm(a.c[i], b.c[i], p_);
  return r;
}

FieldElement Field::neg(const FieldElement& a) const {
  check_owner(a);
  FieldElement r{std::vector<u64>(m_), this};
  for (unsigned i = 0; i < m_; ++i) r.c[i] = a.c[i] == 0 ? 0 : p_ - a.c[i];
  return r;
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
  check_owner(a);
  check_owner(b);
  if (m_ == 1) return FieldElement{{mulm(a.c[0], b.c[0], p_)}, this};
  std::vector<u64> buf(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i) {
    if (a.c[i] == 0) continue;
    for (unsigned j = 0; j < m_; ++j)
      buf[i + j] = (buf[i + j] + (u128)a.c[i] * b.c[j]) % p_;
  }
  FieldElement r{std::vector<u64>(m_), this};
  for (unsigned i = 0; i < m_; ++i) r.c[i] = buf[i];
  for (unsigned k = 0; k + 1 < m_; ++k) {
    u64 hi = buf[m_ + k];
    if (hi == 0) continue;
    const u64* row = &redrow_[static_cast<size_t>(k) * m_];
    for (unsigned j = 0; j < m_; ++j) r.c[j] = (r.c[j] + (u128)hi * row[j]) % p_;
  }
  return r;
}

bool Field::is_zero(const FieldElement& a) const {
  check_owner(a);
  return std::all_of(a.c.begin(), a.c.end(), [](u64 v) { return v == 0; });
}

FieldElement Field::pow_ui(const FieldElement& a, u64 e) const {
  check_owner(a);
  FieldElement r = one();
  FieldElement base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

FieldElement Field::pow(const FieldElement& a, const BigInt& e) const {
  check_owner(a);
  if (e.sign() < 0) fail(Errc::InvalidParams, "negative exponent");
  FieldElement r = one();
  FieldElement base = a;
  size_t nbits = mpz_sizeinbase(e.raw(), 2);
  if (e.is_zero()) return r;
  for (size_t i = 0; i < nbits; ++i) {
    if (mpz_tstbit(e.raw(), i)) r = mul(r, base);
    if (i + 1 < nbits) base = mul(base, base);
  }
  return r;
}

FieldElement Field::inv(const FieldElement& a) const {
  if (is_zero(a)) fail(Errc::DivisionByZero, "inverse of zero");
  return pow_ui(a, q_ - 2);
}

FieldElement Field::div(const FieldElement& a, const FieldElement& b) const {
  return mul(a, inv(b));
}

FieldElement Field::frobenius_p(const FieldElement& a) const { return pow_ui(a, p_); }

u64 Field::trace_to_prime(const FieldElement& a) const {
  check_owner(a);
  FieldElement acc = a;
  FieldElement t = a;
  for (unsigned i = 1; i < m_; ++i) {
    t = frobenius_p(t);
    acc = add(acc, t);
  }
  for (unsigned i = 1; i < m_; ++i)
    if (acc.c[i] != 0) throw std::logic_error("trace left the prime field");
  return acc.c[0];
}

int Field::quadratic_character(const FieldElement& a) const {
  if (p_ == 2) fail(Errc::EvenCharacteristic, "quadratic character needs odd characteristic");
  if (is_zero(a)) return 0;
  FieldElement t = pow_ui(a, (q_ - 1) / 2);
  if (t == one()) return 1;
  if (t == neg(one())) return -1;
  throw std::logic_error("x^((q-1)/2) not in {1,-1}");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (!a.owner) fail(Errc::OwnerMismatch, "unowned element");
  return a.owner->add(a, b);
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  if (!a.owner) fail(Errc::OwnerMismatch, "unowned element");
  return a.owner->sub(a, b);
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (!a.owner) fail(Errc::OwnerMismatch, "unowned element");
  return a.owner->mul(a, b);
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  if (!a.owner) fail(Errc::OwnerMismatch, "unowned element");
  return a.owner->div(a, b);
}
FieldElement operator-(const FieldElement& a) {
  if (!a.owner) fail(Errc::OwnerMismatch, "unowned element");
  return a.owner->neg(a);
}

// ---------------------------------------------------------------------------
// ExtField

namespace {

using EPoly = std::vector<FieldElement>;  // constant term first

int edeg(const Field& K, const EPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (!K.is_zero(f[static_cast<size_t>(i)])) return i;
  return -1;
}

EPoly emul(const Field& K, const EPoly& a, const EPoly& b) {
  if (a.empty() || b.empty()) return {};
  EPoly r(a.size() + b.size() - 1, K.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (K.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
  }
  return r;
}

EPoly emod(const Field& K, EPoly a, const EPoly& f) {
  int df = edeg(K, f);
  for (int i = edeg(K, a); i >= df; --i) {
    FieldElement c = a[static_cast<size_t>(i)];
    if (K.is_zero(c)) continue;
    for (int j = 0; j <= df; ++j) {
      size_t k = static_cast<size_t>(i - df + j);
      a[k] = K.sub(a[k], K.mul(c, f[static_cast<size_t>(j)]));
    }
  }
  a.resize(static_cast<size_t>(df), K.zero());
  return a;
}

EPoly emulmod(const Field& K, const EPoly& a, const EPoly& b, const EPoly& f) {
  return emod(K, emul(K, a, b), f);
}

EPoly epowmod(const Field& K, EPoly base, u64 e, const EPoly& f) {
  EPoly r{K.one()};
  base = emod(K, std::move(base), f);
  while (e) {
    if (e & 1) r = emulmod(K, r, base, f);
    base = emulmod(K, base, base, f);
    e >>= 1;
  }
  return r;
}

EPoly egcd_monic(const Field& K, EPoly a, EPoly b) {
  while (edeg(K, b) >= 0) {
    int db = edeg(K, b);
    FieldElement lc = b[static_cast<size_t>(db)];
    if (!(lc == K.one())) {
      FieldElement inv = K.inv(lc);
      for (auto& c : b) c = K.mul(c, inv);
    }
    EPoly r = emod(K, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  a.resize(static_cast<size_t>(edeg(K, a) + 1), K.zero());
  return a;
}

bool irreducible_fq(const Field& K, const EPoly& f, unsigned n) {
  if (n == 1) return true;
  u64 q = K.q();
  EPoly y{K.zero(), K.one()};
  std::vector<EPoly> frob(n + 1);
  frob[0] = emod(K, y, f);
  for (unsigned k = 1; k <= n; ++k) frob[k] = epowmod(K, frob[k - 1], q, f);
  auto minus_y = [&](EPoly v) {
    if (v.size() < 2) v.resize(2, K.zero());
    v[1] = K.sub(v[1], K.one());
    return v;
  };
  if (edeg(K, minus_y(frob[n])) >= 0) return false;
  for (unsigned l : prime_divisors(n)) {
    EPoly d = minus_y(frob[n / l]);
    if (edeg(K, d) < 0) return false;
    EPoly g = egcd_monic(K, f, d);
    if (edeg(K, g) != 0) return false;
  }
  return true;
}

}  // namespace

ExtField::ExtField(std::shared_ptr<const Field> base, unsigned n, std::vector<FieldElement> modulus)
    : base_(std::move(base)), n_(n), modulus_(std::move(modulus)) {
  const Field& K = *base_;
  if (n_ >= 2) {
    redrow_.resize(n_ - 1);
    EPoly cur(n_ + 1, K.zero());
    cur[n_] = K.one();
    cur = emod(K, std::move(cur), modulus_);
    for (unsigned k = 0; k + 1 < n_; ++k) {
      redrow_[k] = cur;
      EPoly nxt(n_ + 1, K.zero());
      for (unsigned j = 0; j < n_; ++j) nxt[j + 1] = cur[j];
      cur = emod(K, std::move(nxt), modulus_);
    }
  }
}

std::shared_ptr<const ExtField> ExtField::make(std::shared_ptr<const Field> base, unsigned n,
                                               const std::vector<FieldElement>* seed_poly) {
  if (n < 1) fail(Errc::InvalidParams, "extension degree must be >= 1");
  const Field& K = *base;
  if (seed_poly) {
    if (seed_poly->size() != static_cast<size_t>(n) + 1 || !(seed_poly->back() == K.one()))
      fail(Errc::InvalidParams, "seed polynomial must be monic of degree n");
    for (const auto& c : *seed_poly) K.check_owner(c);
    if (!irreducible_fq(K, *seed_poly, n))
      fail(Errc::ReduciblePoly, "seed polynomial is reducible over the base field");
    return std::shared_ptr<const ExtField>(new ExtField(std::move(base), n, *seed_poly));
  }
  // counting-order search over base element indices
  EPoly f(n + 1, K.zero());
  f[n] = K.one();
  std::vector<u64> digits(n, 0);
  for (;;) {
    for (unsigned i = 0; i < n; ++i) f[i] = K.from_index(digits[i]);
    if (irreducible_fq(K, f, n))
      return std::shared_ptr<const ExtField>(new ExtField(std::move(base), n, f));
    unsigned pos = 0;
    while (pos < n && ++digits[pos] == K.q()) digits[pos++] = 0;
    if (pos == n) fail(Errc::InvalidParams, "no irreducible found (unreachable)");
  }
}

BigInt ExtField::order() const { return BigInt::ui_pow_ui(base_->q(), n_); }

u64 ExtField::order_u64(u64 budget) const {
  BigInt o = order();
  if (!o.fits_ulong() || o.to_ulong() > budget)
    fail(Errc::BudgetExceeded, "extension has " + o.str() + " elements, budget " + std::to_string(budget));
  return o.to_ulong();
}

ExtElement ExtField::zero() const { return ExtElement{std::vector<FieldElement>(n_, base_->zero()), this}; }

ExtElement ExtField::one() const {
  std::vector<FieldElement> c(n_, base_->zero());
  c[0] = base_->one();
  return ExtElement{std::move(c), this};
}

ExtElement ExtField::embed(const FieldElement& a) const {
  base_->check_owner(a);
  std::vector<FieldElement> c(n_, base_->zero());
  c[0] = a;
  return ExtElement{std::move(c), this};
}

ExtElement ExtField::element(std::vector<FieldElement> coeffs) const {
  if (coeffs.size() > n_) fail(Errc::InvalidParams, "too many coefficients for extension degree");
  for (const auto& c : coeffs) base_->check_owner(c);
  coeffs.resize(n_, base_->zero());
  return ExtElement{std::move(coeffs), this};
}

ExtElement ExtField::from_index(u64 idx) const {
  std::vector<FieldElement> c(n_, base_->zero());
  u64 q = base_->q();
  for (unsigned i = 0; i < n_; ++i) {
    c[i] = base_->from_index(idx % q);
    idx /= q;
  }
  return ExtElement{std::move(c), this};
}

u64 ExtField::index(const ExtElement& a) const {
  check_owner(a);
  u64 idx = 0;
  u64 q = base_->q();
  for (unsigned i = n_; i-- > 0;) idx = idx * q + base_->index(a.c[i]);
  return idx;
}

void ExtField::check_owner(const ExtElement& a) const {
  if (a.owner != this) fail(Errc::OwnerMismatch, "element does not belong to this extension");
}

ExtElement ExtField::add(const ExtElement& a, const ExtElement& b) const {
  check_owner(a);
  check_owner(b);
  ExtElement r = zero();
  for (unsigned i = 0; i < n_; ++i) r.c[i] = base_->add(a.c[i], b.c[i]);
  return r;
}

ExtElement ExtField::sub(const ExtElement& a, const ExtElement& b) const {
  check_owner(a);
  check_owner(b);
  ExtElement r = zero();
  for (unsigned i = 0; i < n_; ++i) r.c[i] = base_->sub(a.c[i], b.c[i]);
  return r;
}

ExtElement ExtField::neg(const ExtElement& a) const {
  check_owner(a);
  ExtElement r = zero();
  for (unsigned i = 0; i < n_; ++i) r.c[i] = base_->neg(a.c[i]);
  return r;
}

ExtElement ExtField::mul(const ExtElement& a, const ExtElement& b) const {
  check_owner(a);
  check_owner(b);
  const Field& K = *base_;
  if (n_ == 1) return ExtElement{{K.mul(a.c[0], b.c[0])}, this};
  EPoly buf(2 * n_ - 1, K.zero());
  for (unsigned i = 0; i < n_; ++i) {
    if (K.is_zero(a.c[i])) continue;
    for (unsigned j = 0; j < n_; ++j)
      buf[i + j] = K.add(buf[i + j], K.mul(a.c[i], b.c[j]));
  }
  ExtElement r = zero();
  for (unsigned i = 0; i < n_; ++i) r.c[i] = buf[i];
  for (unsigned k = 0; k + 1 < n_; ++k) {
    if (K.is_zero(buf[n_ + k])) continue;
    for (unsigned j = 0; j < n_; ++j)
      r.c[j] = K.add(r.c[j], K.mul(buf[n_ + k], redrow_[k][j]));
  }
  return r;
}

bool ExtField::is_zero(const ExtElement& a) const {
  check_owner(a);
  return std::all_of(a.c.begin(), a.c.end(), [&](const FieldElement& v) { return base_->is_zero(v); });
}

ExtElement ExtField::pow_ui(const ExtElement& a, u64 e) const {
  check_owner(a);
  ExtElement r = one();
  ExtElement base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

ExtElement ExtField::pow(const ExtElement& a, const BigInt& e) const {
  check_owner(a);
  if (e.sign() < 0) fail(Errc::InvalidParams, "negative exponent");
  ExtElement r = one();
  if (e.is_zero()) return r;
  ExtElement base = a;
  size_t nbits = mpz_sizeinbase(e.raw(), 2);
  for (size_t i = 0; i < nbits; ++i) {
    if (mpz_tstbit(e.raw(), i)) r = mul(r, base);
    if (i + 1 < nbits) base = mul(base, base);
  }
  return r;
}

ExtElement ExtField::inv(const ExtElement& a) const {
  if (is_zero(a)) fail(Errc::DivisionByZero, "inverse of zero");
  return pow(a, order() - BigInt(2));
}

ExtElement ExtField::div(const ExtElement& a, const ExtElement& b) const { return mul(a, inv(b)); }

ExtElement ExtField::frobenius(const ExtElement& a) const { return pow_ui(a, base_->q()); }

FieldElement ExtField::trace_to_base(const ExtElement& a) const {
  check_owner(a);
  ExtElement acc = a;
  ExtElement t = a;
  for (unsigned i = 1; i < n_; ++i) {
    t = frobenius(t);
    acc = add(acc, t);
  }
  for (unsigned i = 1; i < n_; ++i)
    if (!base_->is_zero(acc.c[i])) throw std::logic_error("trace left the base field");
  return acc.c[0];
}

u64 ExtField::trace_to_prime(const ExtElement& a) const {
  return base_->trace_to_prime(trace_to_base(a));
}

int ExtField::quadratic_character(const ExtElement& a) const {
  if (base_->p() == 2) fail(Errc::EvenCharacteristic, "quadratic character needs odd characteristic");
  if (is_zero(a)) return 0;
  BigInt e = (order() - BigInt(1)).divexact_ui(2);
  ExtElement t = pow(a, e);
  if (t == one()) return 1;
  if (t == neg(one())) return -1;
  throw std::logic_error("x^((q^n-1)/2) not in {1,-1}");
}

int poly_degree(const Field& K, const std::vector<FieldElement>& f) { return edeg(K, f); }

std::vector<FieldElement> poly_derivative(const Field& K, const std::vector<FieldElement>& f) {
  if (f.size() <= 1) return {};
  std::vector<FieldElement> d(f.size() - 1, K.zero());
  for (size_t i = 1; i < f.size(); ++i) {
    u64 k = i % K.p();
    FieldElement ki = K.element({k});
    d[i - 1] = K.mul(ki, f[i]);
  }
  return d;
}

std::vector<FieldElement> poly_gcd(const Field& K, std::vector<FieldElement> a,
                                   std::vector<FieldElement> b) {
  return egcd_monic(K, std::move(a), std::move(b));
}

FieldElement poly_eval(const Field& K, const std::vector<FieldElement>& f, const FieldElement& x) {
  FieldElement v = K.zero();
  for (size_t i = f.size(); i-- > 0;) v = K.add(K.mul(v, x), f[i]);
  return v;
}

ExtElement poly_eval_ext(const ExtField& E, const std::vector<FieldElement>& f, const ExtElement& x) {
  ExtElement v = E.zero();
  for (size_t i = f.size(); i-- > 0;) v = E.add(E.mul(v, x), E.embed(f[i]));
  return v;
}

ExtElement operator+(const ExtElement& a, const ExtElement& b) {
  if (!a.owner) fail(Errc::OwnerMismatch, "unowned element");
  return a.owner->add(a, b);
}
ExtElement operator-(const ExtElement& a, const ExtElement& b) {
  if (!a.owner) fail(Errc::OwnerMismatch, "unowned element");
  return a.owner->sub(a, b);
}
ExtElement operator*(const ExtElement& a, const ExtElement& b) {
  if (!a.owner) fail(Errc::OwnerMismatch, "unowned element");
  return a.owner->mul(a, b);
}
ExtElement operator/(const ExtElement& a, const ExtElement& b) {
  if (!a.owner) fail(Errc::OwnerMismatch, "unowned element");
  return a.owner->div(a, b);
}

}  // namespace frobmu
