#pragma once

#include <cstdint>
#include <optional>

#include "rfree/zeta.hpp"

namespace rfree {

/// Box [-x, x]^k, relatively r-prime tuples.
struct CountParams {
  unsigned r = 1;
  unsigned k = 1;
  std::uint64_t x = 0;
};

/// Which error normalisation applies to (r, k).
enum class ErrorScale {
  x_log_x,        // r = 1, k = 2
  root_x,         // r >= 2, k = 1: x^(1/r)
  power_k_minus_1 // everything else: x^(k-1)
};

ErrorScale error_scale(unsigned r, unsigned k);
const char* to_string(ErrorScale scale);

struct CountRecord {
  CountParams params;
  BigInt count;                         // V_k^r(x)
  Ball main_term;                       // (2x)^k / zeta(rk)
  Ball error;                           // V - main_term
  std::optional<Ball> normalized_error; // |error| / scale; absent when the scale vanishes
  Ball density;                         // V / (2x+1)^k
};

/// Ground truth by enumeration of {-x..x}^k. A tuple counts iff no prime q has q^r dividing every
/// coordinate; the all-zero tuple never counts. Throws ResourceLimit above `budget` tuples.
BigInt count_oracle(const CountParams& p, std::uint64_t budget = 100'000'000);

/// sum_{d<=x^(1/r)} mu(d) (2 floor(x/d^r) + 1)^k - M(floor(x^(1/r))).
BigInt count_fast(const CountParams& p, const MobiusTable& table);

/// Full record against a precomputed zeta(rk) enclosure. `digits` sets working precision.
CountRecord count_record(const CountParams& p, const MobiusTable& table, const ZetaValue& zeta, int digits);

/// Convenience overload that builds the table and zeta(rk) itself.
CountRecord count_record(const CountParams& p, double precision);

}  // namespace rfree
