#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobmu/real.hpp"
#include "frobmu/zeta.hpp"

namespace frobmu {

// mu(1..N); linear sieve up to 10^7, segmented above that to bound the
// sieving working set.
class MobiusTable {
 public:
  static MobiusTable sieve(std::uint64_t N, std::uint64_t budget = 100'000'000);

  std::uint64_t limit() const { return limit_; }
  int mu(std::uint64_t n) const { return mu_[n]; }
  std::int64_t mertens(std::uint64_t k) const;

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::int8_t> mu_;
};

enum class SumMethod { direct, swapped };

struct MobiusSumResult {
  std::uint64_t N = 0;
  Real value_re;
  Real value_im;       // zero for real-valued sums
  double error_bound = 0;
  double bound_rhs = 0;  // 0 when no bound applies
  double ratio = 0;      // |value| / bound_rhs
  std::string method;
};

// sum_{n<=N} mu(n) e(n alpha); n*alpha is reduced mod 1 at extended
// precision before evaluating the exponential.
MobiusSumResult mobius_exponential_sum(const MobiusTable& table, const Real& alpha,
                                       double alpha_radius, std::uint64_t N, mpfr_prec_t prec,
                                       unsigned workers = 1);

// sum_{n<=N} mu(n) a_C(n); direct sums the angle-path a_C(n), swapped runs one
// exponential sum per Frobenius angle and averages. bound_rhs is the
// N^(1-1/gamma(q,g)) (log N)^4 shape with the given slack constant.
MobiusSumResult mobius_frobenius_sum(const MobiusTable& table, const FrobeniusSpectrum& sp,
                                     std::uint64_t N, SumMethod method, double slack = 1.0,
                                     unsigned workers = 1);

}  // namespace frobmu
