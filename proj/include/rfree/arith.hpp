#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rfree/error.hpp"

namespace rfree {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Möbius values and Mertens prefix sums on 1..limit, built once by a linear sieve.
class MobiusTable {
public:
  explicit MobiusTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }

  /// mu(n) for 1 <= n <= limit.
  int mu(std::uint64_t n) const { return mu_[n]; }

  /// M(n) = sum_{d<=n} mu(d); M(0) = 0.
  std::int64_t mertens(std::uint64_t n) const { return mertens_[n]; }

  std::span<const std::int8_t> mu_values() const noexcept { return {mu_.data() + 1, limit_}; }

  /// Throws InvalidArgument when the table does not reach `needed`.
  void require(std::uint64_t needed, const char* who) const;

private:
  std::uint64_t limit_;
  std::vector<std::int8_t> mu_;        // index 0 unused
  std::vector<std::int32_t> mertens_;  // mertens_[0] = 0
};

MobiusTable sieve_mobius(std::uint64_t limit);

/// Largest t with t^r <= x. Integer arithmetic only.
BigInt integer_root(const BigInt& x, unsigned r);
std::uint64_t integer_root(std::uint64_t x, unsigned r);

/// out = base^exp; false when the power does not fit in 64 bits.
bool checked_pow(std::uint64_t base, unsigned exp, std::uint64_t& out) noexcept;

BigInt binomial(unsigned long n, unsigned long k);
BigInt pow(const BigInt& base, unsigned long exp);

/// Bernoulli numbers B_0..B_{count-1} in the B_1 = +1/2 convention.
struct BernoulliSeq {
  std::vector<BigRational> values;

  const BigRational& operator[](std::size_t j) const { return values.at(j); }
  std::size_t size() const noexcept { return values.size(); }
};

BernoulliSeq bernoulli(std::size_t count);

/// sum_{m=1}^{M} m^e, evaluated through the Bernoulli polynomial formula.
BigInt faulhaber_sum(const BigInt& M, unsigned e);

/// Prime factorisation by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// True when no prime power p^r divides n. n = 0 is never r-free.
bool is_r_free(std::uint64_t n, unsigned r);

/// Visits the blocks of d in [1, floor(x^(1/r))] on which q = floor(x / d^r) is constant,
/// calling fn(d_first, d_last, q). There are O(sqrt(x)) blocks for r = 1.
template <class Fn>
void for_each_floor_block(std::uint64_t x, unsigned r, Fn&& fn) {
  const std::uint64_t last = integer_root(x, r);
  for (std::uint64_t d = 1; d <= last;) {
    std::uint64_t dr = 0;
    checked_pow(d, r, dr);
    const std::uint64_t q = x / dr;
    const std::uint64_t d_last = std::min(integer_root(x / q, r), last);
    fn(d, d_last, q);
    d = d_last + 1;
  }
}

/// Converts an exact rational known to be an integer; throws InvariantViolation otherwise.
BigInt require_integral(const BigRational& q, const char* what);

}  // namespace rfree
