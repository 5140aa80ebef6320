#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rfree/jordan.hpp"
#include "rfree/lattice.hpp"

namespace rfree {

/// ((2X+1)^(k+1) - (2X-1)^(k+1)) / (2(k+1)) as exact coefficients c_0..c_{k+1} in X.
struct UmbralPolynomial {
  unsigned k = 0;
  std::vector<BigRational> coefficients;
};

UmbralPolynomial umbral_coefficients(unsigned k);

/// Evaluates the polynomial with X^j -> j * sum_{n<=x} J_{j-1}^r(n) for j >= 1 and
/// X^0 -> zero_power. Exact; no integrality requirement.
BigRational umbral_value(std::uint64_t x, unsigned r, unsigned k, const MobiusTable& table,
                         const BigRational& zero_power = 0);

/// umbral_value with X^0 -> 0, required to be an integer (InvariantViolation otherwise).
BigInt umbral_eval(std::uint64_t x, unsigned r, unsigned k, const MobiusTable& table);

/// Counts by splitting on the number i of zero coordinates and summing the inclusion-exclusion
/// of J_j^r over the largest coordinate n:
///   sum_{i<k} C(k,i) 2^(k-i) sum_{n<=x} sum_{j<k-i} (-1)^(k-i-1-j) C(k-i,j) J_j^r(n).
/// Slow; used to localise identity mismatches.
BigInt combinatorial_count(std::uint64_t x, unsigned r, unsigned k);

struct IdentityVerdict {
  bool equal = false;
  BigInt umbral;
  BigInt fast;
  std::optional<BigInt> oracle;         // when (2x+1)^k fits the budget
  std::optional<BigInt> combinatorial;  // filled only on mismatch
};

IdentityVerdict identity_check(unsigned r, unsigned k, std::uint64_t x, const MobiusTable& table,
                               std::uint64_t oracle_budget = 0);

}  // namespace rfree
