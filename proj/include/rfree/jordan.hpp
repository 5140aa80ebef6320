#pragma once

#include <cstdint>

#include "rfree/arith.hpp"

namespace rfree {

struct TotientParams {
  unsigned r = 1;  // power, >= 1
  unsigned k = 0;  // dimension, >= 0
};

/// J_k^r(n). Evaluates the Mobius divisor sum and the Euler product and throws
/// InvariantViolation if they differ. k = 0 gives the r-free indicator of n.
BigInt jordan(std::uint64_t n, TotientParams p);

/// sum over d with d^r | n of mu(d) (n / d^r)^k.
BigInt jordan_divisor_sum(std::uint64_t n, TotientParams p);

/// n^k prod_{p^r | n} (1 - p^(-rk)), kept exact and required to be integral.
BigInt jordan_euler_product(std::uint64_t n, TotientParams p);

/// Counts tuples in [1, n]^k for which no d > 1 has d^r dividing n and every coordinate.
/// Throws ResourceLimit when n^k exceeds `budget`.
BigInt jordan_oracle(std::uint64_t n, TotientParams p, std::uint64_t budget = 10'000'000);

/// sum_{n<=x} J_{k-1}^r(n) by direct summation. Requires k >= 1.
BigInt partial_sum_direct(std::uint64_t x, TotientParams p);

/// The same sum through the Bernoulli expansion
///   (1/k) sum_{j<k} C(k, j) B_j sum_{d^r<=x} mu(d) floor(x/d^r)^(k-j)
/// with B_1 = +1/2. The table must reach floor(x^(1/r)).
BigInt partial_sum_bernoulli(std::uint64_t x, TotientParams p, const MobiusTable& table);

/// sum_{d^r<=x} mu(d) faulhaber_sum(floor(x/d^r), k-1).
BigInt partial_sum_faulhaber(std::uint64_t x, TotientParams p, const MobiusTable& table);

}  // namespace rfree
