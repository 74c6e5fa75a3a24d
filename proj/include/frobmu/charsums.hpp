#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "frobmu/fields.hpp"
#include "frobmu/mobius.hpp"
#include "frobmu/real.hpp"

namespace frobmu {

// R(X) in F_q(X). Construction rejects polynomial maps of the degenerate
// Artin-Schreier form Q^p - Q (checked up to a degree cap on Q).
struct RationalMap {
  std::shared_ptr<const Field> field;
  std::vector<FieldElement> num;
  std::vector<FieldElement> den;
  std::optional<FieldElement> kloosterman_a;  // set for R = a x + 1/x

  static RationalMap kloosterman(std::shared_ptr<const Field> fq, FieldElement a);
  static RationalMap from_polys(std::shared_ptr<const Field> fq, std::vector<FieldElement> num,
                                std::vector<FieldElement> den, unsigned degeneracy_cap = 16);
};

struct CharSumOptions {
  std::uint64_t enumeration_budget = 10'000'000;
  mpfr_prec_t precision_bits = 128;
  unsigned workers = 1;
  std::optional<FieldElement> psi_scale;  // c in psi(c x); default 1
};

struct CharSumResult {
  unsigned n = 0;
  Complex normalised;                    // S_R(n) = T_n / q^(n/2)
  Complex unnormalised;                  // T_n = sum_x psi(Tr(R(x)))
  std::vector<std::uint64_t> histogram;  // exact counts per F_p trace class
  double rounding_bound = 0;
};

// sum over x in F_{q^n}^* with den(x) != 0 of psi(Tr(R(x))), where
// psi(u) = e(Tr_{F_q/F_p}(u)/p) is the canonical additive character.
CharSumResult char_sum_direct(const RationalMap& R, unsigned n, const CharSumOptions& opts = {});

struct KloostermanSpectrum {
  std::uint64_t q = 0;
  FieldElement a;
  Real theta_angle;        // phi in [0,1/2]: theta = sqrt(q) e(phi), Im >= 0
  double angle_radius = 0;
  Real t1;                 // T_1 = theta + conj(theta)
};

// Solves theta + conj(theta) = T_1, theta conj(theta) = q.
KloostermanSpectrum kloosterman_spectrum(const std::shared_ptr<const Field>& fq,
                                         const FieldElement& a, const Real& t1, double t1_radius);

// Predicted T_n = 2 q^(n/2) cos(2 pi n phi).
Real kloosterman_predict(const KloostermanSpectrum& sp, unsigned n, mpfr_prec_t prec = 128);

struct RecurrenceRow {
  unsigned n = 0;
  Real direct;      // theta power sum extracted from the raw sum S_n
  Real recurrence;  // T_n from T_{n+1} = T_1 T_n - q T_{n-1}
  double deviation = 0;
};

struct RecurrenceReport {
  std::vector<RecurrenceRow> rows;
  double max_deviation = 0;
};

// Direct sums against the theta recurrence, seeded by T_0 = 2 and T_1.
// The raw character sum S_n relates to the theta power sum by
// T_n = (-1)^(n+1) S_n (the eigenvalues sit in odd cohomological degree);
// with T_1 = S_1 this is what theta conj(theta) = q forces on even n.
RecurrenceReport kloosterman_recurrence_check(const std::shared_ptr<const Field>& fq,
                                              const FieldElement& a, unsigned n_max,
                                              const CharSumOptions& opts = {});

// sum_{n<=N} mu(n) cos(2 pi n phi); bound_rhs is the mu-alpha shape when a
// kappa is supplied.
MobiusSumResult mobius_char_sum(const MobiusTable& table, const KloostermanSpectrum& sp,
                                std::uint64_t N, mpfr_prec_t prec, unsigned workers = 1,
                                const Real* kappa = nullptr);

}  // namespace frobmu
