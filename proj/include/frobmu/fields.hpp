#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "frobmu/bigint.hpp"
#include "frobmu/errors.hpp"

namespace frobmu {

class Field;

// Element of F_{p^m}: residue vector of length m, constant term first.
struct FieldElement {
  std::vector<std::uint64_t> c;
  const Field* owner = nullptr;

  bool operator==(const FieldElement& o) const { return owner == o.owner && c == o.c; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);

// F_q with q = p^m, realized as F_p[x]/(modulus); modulus monic irreducible,
// coefficient list constant term first. Immutable after construction.
class Field {
 public:
  // seed_poly, when given, must be monic of degree m and irreducible
  // (ReduciblePoly otherwise). When omitted the modulus is the first monic
  // irreducible in coefficient counting order (c0 + c1*p + ... smallest), so
  // repeated calls are reproducible.
  static std::shared_ptr<const Field> make(std::uint64_t p, unsigned m,
                                           const std::vector<std::uint64_t>* seed_poly = nullptr);

  std::uint64_t p() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  std::string spec_string() const;  // "p^m/[c0,...,cm]"

  FieldElement zero() const;
  FieldElement one() const;
  // Coefficients are reduced mod p and padded/truncated checked to length m.
  FieldElement element(std::vector<std::uint64_t> coeffs) const;
  FieldElement from_index(std::uint64_t idx) const;
  std::uint64_t index(const FieldElement& a) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement div(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement inv(const FieldElement& a) const;
  FieldElement pow_ui(const FieldElement& a, std::uint64_t e) const;
  FieldElement pow(const FieldElement& a, const BigInt& e) const;

  bool is_zero(const FieldElement& a) const;
  // x -> x^p (generates Gal(F_q/F_p)).
  FieldElement frobenius_p(const FieldElement& a) const;
  // Tr_{F_q/F_p}, as a residue in [0,p).
  std::uint64_t trace_to_prime(const FieldElement& a) const;
  // 0 for zero, +1 for nonzero squares, -1 otherwise. Odd characteristic only.
  int quadratic_character(const FieldElement& a) const;

  template <class Fn>
  void for_each(std::uint64_t budget, Fn&& fn) const {
    if (q_ > budget) fail(Errc::BudgetExceeded, "field has " + std::to_string(q_) + " elements");
    for (std::uint64_t i = 0; i < q_; ++i) fn(from_index(i));
  }

  void check_owner(const FieldElement& a) const;

 private:
  Field(std::uint64_t p, unsigned m, std::vector<std::uint64_t> modulus);

  std::uint64_t p_;
  unsigned m_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> redrow_;  // x^(m+k) mod modulus, rows k=0..m-2, length m
};

class ExtField;

// Element of F_{q^n}: vector of F_q coefficients, length n, constant first.
struct ExtElement {
  std::vector<FieldElement> c;
  const ExtField* owner = nullptr;

  bool operator==(const ExtElement& o) const { return owner == o.owner && c == o.c; }
  bool operator!=(const ExtElement& o) const { return !(*this == o); }
};

ExtElement operator+(const ExtElement& a, const ExtElement& b);
ExtElement operator-(const ExtElement& a, const ExtElement& b);
ExtElement operator*(const ExtElement& a, const ExtElement& b);
ExtElement operator/(const ExtElement& a, const ExtElement& b);

// F_{q^n} built as a tower F_q[y]/(g) over a base Field, g monic irreducible
// of degree n over F_q.
class ExtField {
 public:
  static std::shared_ptr<const ExtField> make(std::shared_ptr<const Field> base, unsigned n,
                                              const std::vector<FieldElement>* seed_poly = nullptr);

  const Field& base() const { return *base_; }
  const std::shared_ptr<const Field>& base_ptr() const { return base_; }
  unsigned n() const { return n_; }
  BigInt order() const;  // q^n
  // q^n if it fits the budget, BudgetExceeded otherwise.
  std::uint64_t order_u64(std::uint64_t budget) const;
  const std::vector<FieldElement>& modulus() const { return modulus_; }

  ExtElement zero() const;
  ExtElement one() const;
  ExtElement embed(const FieldElement& a) const;
  ExtElement element(std::vector<FieldElement> coeffs) const;
  ExtElement from_index(std::uint64_t idx) const;
  std::uint64_t index(const ExtElement& a) const;

  ExtElement add(const ExtElement& a, const ExtElement& b) const;
  ExtElement sub(const ExtElement& a, const ExtElement& b) const;
  ExtElement mul(const ExtElement& a, const ExtElement& b) const;
  ExtElement div(const ExtElement& a, const ExtElement& b) const;
  ExtElement neg(const ExtElement& a) const;
  ExtElement inv(const ExtElement& a) const;
  ExtElement pow_ui(const ExtElement& a, std::uint64_t e) const;
  ExtElement pow(const ExtElement& a, const BigInt& e) const;

  bool is_zero(const ExtElement& a) const;
  // x -> x^q.
  ExtElement frobenius(const ExtElement& a) const;
  // Tr_{F_{q^n}/F_q}(x) = sum of x^(q^i); the result is checked to lie in F_q.
  FieldElement trace_to_base(const ExtElement& a) const;
  // Tr over the full degree down to F_p.
  std::uint64_t trace_to_prime(const ExtElement& a) const;
  int quadratic_character(const ExtElement& a) const;

  template <class Fn>
  void for_each(std::uint64_t budget, Fn&& fn) const {
    std::uint64_t total = order_u64(budget);
    for (std::uint64_t i = 0; i < total; ++i) fn(from_index(i));
  }

  void check_owner(const ExtElement& a) const;

 private:
  ExtField(std::shared_ptr<const Field> base, unsigned n, std::vector<FieldElement> modulus);

  std::shared_ptr<const Field> base_;
  unsigned n_;
  std::vector<FieldElement> modulus_;
  std::vector<std::vector<FieldElement>> redrow_;  // y^(n+k) mod modulus
};

bool is_prime_u64(std::uint64_t n);

// Dense polynomial helpers over F_q; coefficient vectors, constant term first.
int poly_degree(const Field& K, const std::vector<FieldElement>& f);
std::vector<FieldElement> poly_derivative(const Field& K, const std::vector<FieldElement>& f);
std::vector<FieldElement> poly_gcd(const Field& K, std::vector<FieldElement> a,
                                   std::vector<FieldElement> b);  // monic (or empty)
FieldElement poly_eval(const Field& K, const std::vector<FieldElement>& f, const FieldElement& x);
// Evaluates a base-coefficient polynomial at a point of the extension.
ExtElement poly_eval_ext(const ExtField& E, const std::vector<FieldElement>& f, const ExtElement& x);

}  // namespace frobmu
