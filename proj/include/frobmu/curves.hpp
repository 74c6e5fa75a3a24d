#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frobmu/fields.hpp"
#include "frobmu/real.hpp"

namespace frobmu {

struct EllipticModel {
  FieldElement a, b;  // y^2 = x^3 + a x + b
};

struct HyperellipticModel {
  std::vector<FieldElement> f;  // y^2 = f(x), deg 2g+1 or 2g+2, squarefree
};

// Validated curve model over F_q, odd characteristic, genus >= 1.
class CurveSpec {
 public:
  static CurveSpec elliptic(std::shared_ptr<const Field> base, FieldElement a, FieldElement b);
  static CurveSpec hyperelliptic(std::shared_ptr<const Field> base, std::vector<FieldElement> f);

  const std::shared_ptr<const Field>& base() const { return base_; }
  unsigned genus() const { return genus_; }
  bool is_elliptic() const { return std::holds_alternative<EllipticModel>(model_); }
  const std::variant<EllipticModel, HyperellipticModel>& model() const { return model_; }
  // Right-hand side of y^2 = f(x) (x^3 + ax + b for elliptic models).
  const std::vector<FieldElement>& rhs() const { return rhs_; }
  std::string spec_string() const;

 private:
  CurveSpec(std::shared_ptr<const Field> base, std::variant<EllipticModel, HyperellipticModel> m,
            unsigned genus, std::vector<FieldElement> rhs)
      : base_(std::move(base)), model_(std::move(m)), genus_(genus), rhs_(std::move(rhs)) {}

  std::shared_ptr<const Field> base_;
  std::variant<EllipticModel, HyperellipticModel> model_;
  unsigned genus_;
  std::vector<FieldElement> rhs_;
};

struct CountRecord {
  unsigned n = 0;
  std::uint64_t count = 0;  // #C(F_{q^n})
  std::int64_t trace = 0;   // A_C(n) = q^n + 1 - count
};

struct CountOptions {
  std::uint64_t enumeration_budget = 100'000'000;
  unsigned workers = 1;
  // Alternative modulus for F_{q^n}; counting must not depend on it.
  const std::vector<FieldElement>* ext_seed = nullptr;
  // Skip the y^2 histogram and compute quadratic characters by powering.
  bool force_powering = false;
};

// Point count on the smooth projective model over F_{q^n}.
CountRecord count_points(const CurveSpec& spec, unsigned n, const CountOptions& opts = {});

// Cache hook implemented by the CLI cache store.
class CountCache {
 public:
  virtual ~CountCache() = default;
  virtual std::optional<std::uint64_t> get(const std::string& curve_key, unsigned n) = 0;
  virtual void put(const std::string& curve_key, unsigned n, std::uint64_t count) = 0;
};

std::vector<CountRecord> trace_sequence(const CurveSpec& spec, unsigned n_max,
                                        CountCache* cache = nullptr, const CountOptions& opts = {});

// a_C(n) = A_C(n) / (2 g q^{n/2}), in [-1,1].
Real normalised_trace(const CountRecord& rec, std::uint64_t q, unsigned g, mpfr_prec_t prec);

}  // namespace frobmu
