#include "rfree/jordan.hpp"

#include <numeric>
#include <string>

namespace rfree {

namespace {

void check_params(TotientParams p, const char* who) {
  if (p.r < 1) throw InvalidArgument(std::string(who) + ": r must be >= 1");
}

void check_partial_params(TotientParams p, const char* who) {
  check_params(p, who);
  if (p.k < 1) throw InvalidArgument(std::string(who) + ": k must be >= 1 (the sum runs over J_{k-1})");
}

// Primes whose r-th power divides n.
std::vector<std::uint64_t> r_power_primes(std::uint64_t n, unsigned r) {
  std::vector<std::uint64_t> out;
  for (const auto& [prime, e] : factorize(n)) {
    if (e >= r) out.push_back(prime);
  }
  return out;
}

}  // namespace

BigInt jordan_divisor_sum(std::uint64_t n, TotientParams p) {
  check_params(p, "jordan");
  if (n == 0) throw InvalidArgument("jordan: n must be positive");
  // mu(d) vanishes off squarefree d, so d runs over products of distinct primes with p^r | n.
  const auto primes = r_power_primes(n, p.r);
  const BigInt big_n(static_cast<unsigned long>(n));
  BigInt total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << primes.size()); ++mask) {
    BigInt dr = 1;
    int sign = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        dr *= pow(BigInt(static_cast<unsigned long>(primes[i])), p.r);
        sign = -sign;
      }
    }
    const BigInt term = pow(BigInt(big_n / dr), p.k);
    if (sign > 0) total += term; else total -= term;
  }
  return total;
}

BigInt jordan_euler_product(std::uint64_t n, TotientParams p) {
  check_params(p, "jordan");
  if (n == 0) throw InvalidArgument("jordan: n must be positive");
  BigRational value(pow(BigInt(static_cast<unsigned long>(n)), p.k));
  for (std::uint64_t prime : r_power_primes(n, p.r)) {
    const BigInt prk = pow(BigInt(static_cast<unsigned long>(prime)), static_cast<unsigned long>(p.r) * p.k);
    value *= BigRational(prk - 1, prk);
  }
  value.canonicalize();
  return require_integral(value, "jordan_euler_product");
}

BigInt jordan(std::uint64_t n, TotientParams p) {
  BigInt by_divisors = jordan_divisor_sum(n, p);
  const BigInt by_product = jordan_euler_product(n, p);
  if (by_divisors != by_product) {
    throw InvariantViolation("jordan(" + std::to_string(n) + "): divisor sum " + by_divisors.get_str() +
                             " != Euler product " + by_product.get_str());
  }
  return by_divisors;
}

BigInt jordan_oracle(std::uint64_t n, TotientParams p, std::uint64_t budget) {
  check_params(p, "jordan_oracle");
  if (n == 0) throw InvalidArgument("jordan_oracle: n must be positive");
  std::uint64_t tuples = 0;
  if (!checked_pow(n, p.k, tuples) || tuples > budget) {
    throw ResourceLimit("jordan_oracle: n^k exceeds the enumeration budget of " + std::to_string(budget));
  }
  // Every gcd below divides n, so r-freeness only needs tabulating on 1..n.
  std::vector<bool> r_free(n + 1);
  for (std::uint64_t g = 1; g <= n; ++g) r_free[g] = is_r_free(g, p.r);

  if (p.k == 0) return r_free[n] ? 1 : 0;

  std::vector<std::uint64_t> coord(p.k, 1);
  std::vector<std::uint64_t> prefix_gcd(p.k + 1, n);
  for (unsigned i = 0; i < p.k; ++i) prefix_gcd[i + 1] = std::gcd(prefix_gcd[i], coord[i]);

  std::uint64_t count = 0;
  while (true) {
    if (r_free[prefix_gcd[p.k]]) ++count;
    unsigned pos = p.k;
    while (pos > 0 && coord[pos - 1] == n) --pos;
    if (pos == 0) break;
    ++coord[pos - 1];
    for (unsigned i = pos; i < p.k; ++i) coord[i] = 1;
    for (unsigned i = pos - 1; i < p.k; ++i) prefix_gcd[i + 1] = std::gcd(prefix_gcd[i], coord[i]);
  }
  return BigInt(static_cast<unsigned long>(count));
}

BigInt partial_sum_direct(std::uint64_t x, TotientParams p) {
  check_partial_params(p, "partial_sum_direct");
  const TotientParams inner{p.r, p.k - 1};
  BigInt total = 0;
  for (std::uint64_t n = 1; n <= x; ++n) total += jordan(n, inner);
  return total;
}

BigInt partial_sum_bernoulli(std::uint64_t x, TotientParams p, const MobiusTable& table) {
  check_partial_params(p, "partial_sum_bernoulli");
  table.require(integer_root(x, p.r), "partial_sum_bernoulli");
  const unsigned k = p.k;

  // power_sums[e] = sum_{d^r<=x} mu(d) floor(x/d^r)^e, grouped over runs of equal floors.
  std::vector<BigInt> power_sums(k + 1, 0);
  for_each_floor_block(x, p.r, [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t q) {
    const long weight = static_cast<long>(table.mertens(hi) - table.mertens(lo - 1));
    if (weight == 0) return;
    const BigInt big_q(static_cast<unsigned long>(q));
    BigInt qe = big_q;
    for (unsigned e = 1; e <= k; ++e) {
      power_sums[e] += weight * qe;
      qe *= big_q;
    }
  });

  const BernoulliSeq b = bernoulli(k);
  BigRational total = 0;
  for (unsigned j = 0; j < k; ++j) {
    total += BigRational(binomial(k, j)) * b[j] * BigRational(power_sums[k - j]);
  }
  total /= BigRational(static_cast<unsigned long>(k));
  total.canonicalize();
  return require_integral(total, "partial_sum_bernoulli");
}

BigInt partial_sum_faulhaber(std::uint64_t x, TotientParams p, const MobiusTable& table) {
  check_partial_params(p, "partial_sum_faulhaber");
  table.require(integer_root(x, p.r), "partial_sum_faulhaber");
  BigInt total = 0;
  for_each_floor_block(x, p.r, [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t q) {
    const long weight = static_cast<long>(table.mertens(hi) - table.mertens(lo - 1));
    if (weight != 0) total += weight * faulhaber_sum(BigInt(static_cast<unsigned long>(q)), p.k - 1);
  });
  return total;
}

}  // namespace rfree
