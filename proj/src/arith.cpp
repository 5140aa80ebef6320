#include "rfree/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

namespace rfree {

MobiusTable::MobiusTable(std::uint64_t limit) : limit_(limit) {
  if (limit == 0) {
    throw InvalidArgument("sieve_mobius: limit must be at least 1");
  }
  mu_.assign(limit + 1, 0);
  mertens_.assign(limit + 1, 0);
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> primes;

  mu_[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu_[i] = -1;
    }
    for (std::uint64_t p : primes) {
      const std::uint64_t m = i * p;
      if (m > limit) break;
      composite[m] = true;
      if (i % p == 0) {
        mu_[m] = 0;
        break;
      }
      mu_[m] = static_cast<std::int8_t>(-mu_[i]);
    }
  }
  for (std::uint64_t n = 1; n <= limit; ++n) {
    mertens_[n] = mertens_[n - 1] + mu_[n];
  }
}

void MobiusTable::require(std::uint64_t needed, const char* who) const {
  if (needed > limit_) {
    throw InvalidArgument(std::string(who) + ": Mobius table limit " + std::to_string(limit_) +
                          " is below required " + std::to_string(needed));
  }
}

MobiusTable sieve_mobius(std::uint64_t limit) { return MobiusTable(limit); }

BigInt integer_root(const BigInt& x, unsigned r) {
  if (r == 0) throw InvalidArgument("integer_root: r must be positive");
  if (sgn(x) < 0) throw InvalidArgument("integer_root: x must be nonnegative");
  BigInt t;
  mpz_root(t.get_mpz_t(), x.get_mpz_t(), r);
  return t;
}

bool checked_pow(std::uint64_t base, unsigned exp, std::uint64_t& out) noexcept {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return false;
  }
  out = static_cast<std::uint64_t>(acc);
  return true;
}

std::uint64_t integer_root(std::uint64_t x, unsigned r) {
  if (r == 0) throw InvalidArgument("integer_root: r must be positive");
  if (r == 1 || x < 2) return x;
  if (r >= 64) return 1;
  // Floating estimate, then exact correction in both directions.
  auto t = static_cast<std::uint64_t>(std::pow(static_cast<long double>(x), 1.0L / r));
  std::uint64_t p = 0;
  while (t > 0 && (!checked_pow(t, r, p) || p > x)) --t;
  while (checked_pow(t + 1, r, p) && p <= x) ++t;
  return t;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

BernoulliSeq bernoulli(std::size_t count) {
  if (count == 0) throw InvalidArgument("bernoulli: count must be positive");
  // First convention (B_1 = -1/2) from sum_{j=0}^{m} C(m+1, j) B_j = 0, flipped at the end.
  BernoulliSeq seq;
  seq.values.reserve(count);
  seq.values.emplace_back(1);
  for (std::size_t m = 1; m < count; ++m) {
    BigRational acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
      acc += BigRational(binomial(m + 1, j)) * seq.values[j];
    }
    BigRational bm = -acc / BigRational(static_cast<unsigned long>(m + 1));
    bm.canonicalize();
    seq.values.push_back(bm);
  }
  if (count > 1) seq.values[1] = BigRational(1, 2);
  return seq;
}

namespace {

// Shared across scan workers; returns a copy of the first `count` values.
BernoulliSeq bernoulli_prefix(std::size_t count) {
  static std::mutex lock;
  static BernoulliSeq cache = bernoulli(32);
  std::lock_guard guard(lock);
  if (cache.size() < count) cache = bernoulli(std::max(count, 2 * cache.size()));
  BernoulliSeq out;
  out.values.assign(cache.values.begin(), cache.values.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

}  // namespace

BigInt faulhaber_sum(const BigInt& M, unsigned e) {
  if (sgn(M) < 0) throw InvalidArgument("faulhaber_sum: M must be nonnegative");
  if (sgn(M) == 0) return 0;
  const unsigned k = e + 1;
  const BernoulliSeq b = bernoulli_prefix(k);
  BigRational acc = 0;
  for (unsigned j = 0; j < k; ++j) {
    if (sgn(b[j]) == 0) continue;
    acc += BigRational(binomial(k, j)) * b[j] * BigRational(pow(M, k - j));
  }
  acc /= BigRational(static_cast<unsigned long>(k));
  acc.canonicalize();
  return require_integral(acc, "faulhaber_sum");
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  if (n < 2) return out;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  for (std::uint64_t p = 5; p * p <= n; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_r_free(std::uint64_t n, unsigned r) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(n)) {
    if (e >= r) return false;
  }
  return true;
}

BigInt require_integral(const BigRational& q, const char* what) {
  BigRational c = q;
  c.canonicalize();
  if (c.get_den() != 1) {
    throw InvariantViolation(std::string(what) + ": expected an integer, got " + c.get_str());
  }
  return c.get_num();
}

}  // namespace rfree
