#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rfree/arith.hpp"

using namespace rfree;

TEST_CASE("sieve_mobius small tables") {
  const MobiusTable one(1);
  CHECK(one.mu(1) == 1);
  CHECK(one.mertens(1) == 1);

  const MobiusTable six = sieve_mobius(6);
  const int expected[] = {1, -1, -1, 0, -1, 1};
  for (int n = 1; n <= 6; ++n) CHECK(six.mu(n) == expected[n - 1]);
  CHECK(six.mertens(6) == -1);

  CHECK_THROWS_AS(sieve_mobius(0), InvalidArgument);
}

TEST_CASE("sieve_mobius agrees with trial division on a million") {
  const MobiusTable table(1'000'000);
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<std::uint64_t> pick(1, table.limit());
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t n = pick(rng);
    REQUIRE(table.mu(n) == oracle::trial_mu(n));
    if (n >= 2) {
      CHECK(table.mertens(n) - table.mertens(n - 1) == table.mu(n));
      int divisor_sum = 0;
      for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        divisor_sum += table.mu(d);
        if (d * d != n) divisor_sum += table.mu(n / d);
      }
      CHECK(divisor_sum == 0);
    }
  }
  // mu(p) = -1 at a few primes, 0 at squareful values.
  for (std::uint64_t p : {2u, 3u, 999983u}) CHECK(table.mu(p) == -1);
  for (std::uint64_t n : {4u, 18u, 1'000'000u}) CHECK(table.mu(n) == 0);
}

TEST_CASE("require rejects undersized tables") {
  const MobiusTable table(10);
  CHECK_NOTHROW(table.require(10, "t"));
  CHECK_THROWS_AS(table.require(11, "t"), InvalidArgument);
}

TEST_CASE("integer_root boundaries") {
  CHECK(integer_root(std::uint64_t{10}, 2) == 3);
  CHECK(integer_root(std::uint64_t{26}, 3) == 2);
  CHECK(integer_root(std::uint64_t{27}, 3) == 3);
  CHECK(integer_root(std::uint64_t{1'000'000'000'000'000'000ull}, 2) == 1'000'000'000u);
  CHECK(integer_root(BigInt("1000000000000000000"), 2) == BigInt(1'000'000'000));
  CHECK(integer_root(std::uint64_t{0}, 4) == 0);
  CHECK(integer_root(std::uint64_t{18446744073709551615ull}, 2) == 4294967295u);
  CHECK_THROWS_AS(integer_root(std::uint64_t{5}, 0), InvalidArgument);
}

TEST_CASE("integer_root at random perfect powers") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick_t(2, 1'000'000);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t t = pick_t(rng);
    const unsigned r = 1 + trial % 5;
    const BigInt tr = pow(BigInt(static_cast<unsigned long>(t)), r);
    REQUIRE(integer_root(tr, r) == t);
    REQUIRE(integer_root(BigInt(tr - 1), r) == t - 1);
    if (tr.fits_ulong_p()) {
      REQUIRE(integer_root(tr.get_ui(), r) == t);
      REQUIRE(integer_root(tr.get_ui() - 1, r) == t - 1);
    }
  }
}

TEST_CASE("bernoulli uses B_1 = +1/2") {
  const auto two = bernoulli(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == 1);
  CHECK(two[1] == BigRational(1, 2));

  const auto four = bernoulli(4);
  CHECK(four[2] == BigRational(1, 6));
  CHECK(four[3] == 0);

  CHECK(bernoulli(8)[6] == BigRational(1, 42));
  CHECK_THROWS_AS(bernoulli(0), InvalidArgument);
}

TEST_CASE("bernoulli matches the Akiyama-Tanigawa triangle") {
  const auto ours = bernoulli(40);
  const auto theirs = oracle::akiyama_tanigawa(40);
  for (std::size_t j = 0; j < 40; ++j) {
    CAPTURE(j);
    CHECK(ours[j] == theirs[j]);
    if (j >= 3 && j % 2 == 1) CHECK(ours[j] == 0);
  }
}

TEST_CASE("faulhaber_sum") {
  CHECK(faulhaber_sum(10, 1) == 55);
  CHECK(faulhaber_sum(5, 2) == 55);
  CHECK(faulhaber_sum(0, 3) == 0);
  CHECK(faulhaber_sum(100, 4) == oracle::naive_power_sum(100, 4));
  CHECK_THROWS_AS(faulhaber_sum(-1, 2), InvalidArgument);

  for (unsigned e = 0; e <= 8; ++e) {
    mpz_class naive = 0;
    for (std::uint64_t M = 0; M <= 1000; ++M) {
      if (M > 0) {
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), M, e);
        naive += t;
      }
      REQUIRE(faulhaber_sum(BigInt(static_cast<unsigned long>(M)), e) == naive);
    }
  }
}

TEST_CASE("factorize and is_r_free") {
  using F = std::vector<std::pair<std::uint64_t, unsigned>>;
  CHECK(factorize(1).empty());
  CHECK(factorize(360) == F{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(999983) == F{{999983, 1}});
  CHECK(is_r_free(12, 3));
  CHECK_FALSE(is_r_free(12, 2));
  CHECK_FALSE(is_r_free(0, 2));
  CHECK(is_r_free(1, 1));
  CHECK_FALSE(is_r_free(2, 1));
}

TEST_CASE("require_integral") {
  CHECK(require_integral(BigRational(6, 3), "t") == 2);
  CHECK_THROWS_AS(require_integral(BigRational(1, 3), "t"), InvariantViolation);
}

TEST_CASE("for_each_floor_block covers every d once with constant floors") {
  for (std::uint64_t x : {0u, 1u, 17u, 1000u, 12345u}) {
    for (unsigned r = 1; r <= 3; ++r) {
      std::uint64_t expected_d = 1;
      for_each_floor_block(x, r, [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t q) {
        CHECK(lo == expected_d);
        for (std::uint64_t d = lo; d <= hi; ++d) {
          std::uint64_t dr = 1;
          for (unsigned i = 0; i < r; ++i) dr *= d;
          CHECK(x / dr == q);
        }
        expected_d = hi + 1;
      });
      CHECK(expected_d == integer_root(x, r) + 1);
    }
  }
}
