#pragma once

#include <gmp.h>

#include <cstdint>
#include <string>
#include <utility>

#include "frobmu/errors.hpp"

namespace frobmu {

// Thin RAII wrapper over mpz_t; value semantics.
class BigInt {
 public:
  BigInt() { mpz_init(z_); }
  BigInt(long v) { mpz_init_set_si(z_, v); }           // NOLINT(runtime/explicit)
  BigInt(unsigned long v) { mpz_init_set_ui(z_, v); }  // NOLINT(runtime/explicit)
  BigInt(int v) : BigInt(static_cast<long>(v)) {}
  explicit BigInt(const std::string& s) {
    if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
      mpz_clear(z_);
      fail(Errc::InvalidParams, "not a decimal integer: " + s);
    }
  }
  BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
  BigInt(BigInt&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  BigInt& operator=(const BigInt& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  BigInt& operator=(BigInt&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~BigInt() { mpz_clear(z_); }

  mpz_ptr raw() { return z_; }
  mpz_srcptr raw() const { return z_; }

  static BigInt pow_ui(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.z_, base.z_, e);
    return r;
  }
  static BigInt ui_pow_ui(unsigned long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.z_, base, e);
    return r;
  }
  static BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.z_, n);
    return r;
  }
  static BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.z_, a.z_, b.z_);
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_add(r.z_, a.z_, b.z_);
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_sub(r.z_, a.z_, b.z_);
    return r;
  }
  friend BigInt operator-(const BigInt& a) {
    BigInt r;
    mpz_neg(r.z_, a.z_);
    return r;
  }
  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_mul(r.z_, a.z_, b.z_);
    return r;
  }
  BigInt& operator+=(const BigInt& o) {
    mpz_add(z_, z_, o.z_);
    return *this;
  }
  BigInt& operator-=(const BigInt& o) {
    mpz_sub(z_, z_, o.z_);
    return *this;
  }
  BigInt& operator*=(const BigInt& o) {
    mpz_mul(z_, z_, o.z_);
    return *this;
  }

  bool divisible_by_ui(unsigned long d) const { return mpz_divisible_ui_p(z_, d) != 0; }
  // Exact division; caller must know d | *this.
  BigInt divexact_ui(unsigned long d) const {
    BigInt r;
    mpz_divexact_ui(r.z_, z_, d);
    return r;
  }
  BigInt divexact(const BigInt& d) const {
    BigInt r;
    mpz_divexact(r.z_, z_, d.z_);
    return r;
  }

  int cmp(const BigInt& o) const { return mpz_cmp(z_, o.z_); }
  friend bool operator==(const BigInt& a, const BigInt& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return a.cmp(b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return a.cmp(b) >= 0; }
  friend bool operator==(const BigInt& a, long b) { return mpz_cmp_si(a.z_, b) == 0; }
  friend bool operator==(const BigInt& a, int b) { return mpz_cmp_si(a.z_, b) == 0; }

  int sign() const { return mpz_sgn(z_); }
  bool is_zero() const { return sign() == 0; }
  BigInt abs() const {
    BigInt r;
    mpz_abs(r.z_, z_);
    return r;
  }
  size_t bit_size() const { return mpz_sizeinbase(z_, 2); }

  bool fits_slong() const { return mpz_fits_slong_p(z_) != 0; }
  long to_slong() const { return mpz_get_si(z_); }
  bool fits_ulong() const { return mpz_fits_ulong_p(z_) != 0; }
  unsigned long to_ulong() const { return mpz_get_ui(z_); }
  double to_double() const { return mpz_get_d(z_); }

  std::string str() const {
    char* s = mpz_get_str(nullptr, 10, z_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
  }

 private:
  mpz_t z_;
};

}  // namespace frobmu
