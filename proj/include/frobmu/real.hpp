#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>

#include "frobmu/bigint.hpp"

namespace frobmu {

// The paper's constants produce magnitudes like 2^(-10^14); the default
// MPFR exponent window (+-2^30) flushes those to zero, the widest (+-2^62)
// does not. Applies to the thread running static initialization; worker
// threads never touch such magnitudes.
struct WideExponentRange {
  WideExponentRange() {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
  }
};
inline WideExponentRange wide_exponent_range_init{};

// Multiprecision real backed by MPFR. Binary operators round to the wider
// operand's precision (MPFR_RNDN); use with_prec() to change precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_ui(unsigned long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_si(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_bigint(const BigInt& z, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_z(r.v_, z.raw(), MPFR_RNDN);
    return r;
  }
  static Real parse(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      fail(Errc::InvalidParams, "not a decimal number: " + s);
    return r;
  }
  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  Real with_prec(mpfr_prec_t prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }

  // Fixed-count scientific decimal; deterministic for a given value/precision.
  std::string str(int digits = 0) const {
    if (digits <= 0) digits = static_cast<int>(prec() * 0.30103) + 2;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%%.%dRe", digits);
    int n = mpfr_snprintf(nullptr, 0, buf, v_);
    std::string out(static_cast<size_t>(n), '\0');
    mpfr_snprintf(out.data(), static_cast<size_t>(n) + 1, buf, v_);
    return out;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

 private:
  mpfr_t v_;
};

inline Real sqrt(const Real& a) {
  Real r(a.prec());
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real log(const Real& a) {
  Real r(a.prec());
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real exp(const Real& a) {
  Real r(a.prec());
  mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real cos(const Real& a) {
  Real r(a.prec());
  mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real sin(const Real& a) {
  Real r(a.prec());
  mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(y.prec(), x.prec()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real abs(const Real& a) {
  Real r(a.prec());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real floor(const Real& a) {
  Real r(a.prec());
  mpfr_floor(r.raw(), a.raw());
  return r;
}
inline Real frac(const Real& a) {
  Real r(a.prec());
  mpfr_frac(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& a, const Real& b) {
  Real r(std::max(a.prec(), b.prec()));
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real mul_ui(const Real& a, unsigned long k) {
  Real r(a.prec());
  mpfr_mul_ui(r.raw(), a.raw(), k, MPFR_RNDN);
  return r;
}
inline Real div_ui(const Real& a, unsigned long k) {
  Real r(a.prec());
  mpfr_div_ui(r.raw(), a.raw(), k, MPFR_RNDN);
  return r;
}
// e(x) = exp(2 pi i x); real/imag parts of the unit circle point.
inline void sin_cos_2pi(const Real& x, Real& s, Real& c) {
  mpfr_prec_t p = x.prec();
  Real t = Real::pi(p + 8);
  mpfr_mul_2ui(t.raw(), t.raw(), 1, MPFR_RNDN);
  mpfr_mul(t.raw(), t.raw(), x.raw(), MPFR_RNDN);
  Real ss(p), cc(p);
  mpfr_sin_cos(ss.raw(), cc.raw(), t.raw(), MPFR_RNDN);
  s = std::move(ss);
  c = std::move(cc);
}

struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
  }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex conj() const { return Complex(re, -im); }
  Real abs() const { return sqrt(re * re + im * im); }
};

}  // namespace frobmu
