#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rfree/jordan.hpp"
#include "rfree/zeta.hpp"

using namespace rfree;

TEST_CASE("jordan examples") {
  CHECK(jordan(6, {1, 1}) == 2);
  CHECK(jordan(4, {2, 2}) == 15);
  CHECK(jordan(12, {2, 0}) == 0);
  CHECK(jordan(10, {2, 0}) == 1);
  CHECK(jordan(1, {3, 4}) == 1);
  CHECK(jordan(1, {1, 0}) == 1);
  CHECK_THROWS_AS(jordan(0, {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(jordan(5, {0, 1}), InvalidArgument);
}

TEST_CASE("jordan_oracle examples") {
  CHECK(jordan_oracle(6, {1, 1}) == 2);
  CHECK(jordan_oracle(4, {2, 2}) == 15);
  for (unsigned r = 1; r <= 3; ++r) {
    for (unsigned k = 1; k <= 3; ++k) CHECK(jordan_oracle(1, {r, k}) == 1);
  }
  CHECK(jordan_oracle(12, {2, 0}) == 0);
  CHECK_THROWS_AS(jordan_oracle(1000, {1, 3}, 1'000'000), ResourceLimit);
}

TEST_CASE("divisor sum equals Euler product for n <= 10^4, r <= 4, k <= 4") {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    for (unsigned r = 1; r <= 4; ++r) {
      for (unsigned k = 0; k <= 4; ++k) {
        const TotientParams p{r, k};
        REQUIRE(jordan_divisor_sum(n, p) == jordan_euler_product(n, p));
      }
    }
  }
}

TEST_CASE("jordan matches enumeration: n <= 200 for k = 2, n <= 40 for k = 3") {
  for (unsigned r = 1; r <= 3; ++r) {
    for (std::uint64_t n = 1; n <= 200; ++n) {
      CAPTURE(n);
      CAPTURE(r);
      REQUIRE(jordan(n, {r, 2}) == jordan_oracle(n, {r, 2}));
      REQUIRE(jordan(n, {r, 1}) == jordan_oracle(n, {r, 1}));
      if (n <= 40) REQUIRE(jordan(n, {r, 3}) == jordan_oracle(n, {r, 3}));
      if (n <= 30) REQUIRE(jordan(n, {r, 2}) == oracle::brute_jordan(n, r, 2));
    }
  }
}

TEST_CASE("jordan is multiplicative") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> pick(1, 5000);
  int checked = 0;
  while (checked < 500) {
    const std::uint64_t m = pick(rng);
    const std::uint64_t n = pick(rng);
    if (std::gcd(m, n) != 1) continue;
    const TotientParams p{1 + static_cast<unsigned>(checked % 3), static_cast<unsigned>(checked % 4)};
    REQUIRE(jordan(m * n, p) == jordan(m, p) * jordan(n, p));
    ++checked;
  }
}

TEST_CASE("partial sums: examples") {
  const MobiusTable table(100);
  CHECK(partial_sum_direct(10, {2, 1}) == 7);
  CHECK(partial_sum_bernoulli(10, {2, 1}, table) == 7);
  CHECK(partial_sum_direct(5, {1, 2}) == 10);
  CHECK(partial_sum_bernoulli(5, {1, 2}, table) == 10);
  CHECK(partial_sum_direct(0, {1, 3}) == 0);
  CHECK(partial_sum_bernoulli(0, {1, 3}, table) == 0);
  for (unsigned r = 1; r <= 3; ++r) {
    for (unsigned k = 1; k <= 5; ++k) {
      CHECK(partial_sum_direct(1, {r, k}) == 1);
      CHECK(partial_sum_bernoulli(1, {r, k}, table) == 1);
    }
  }
  CHECK(partial_sum_bernoulli(100, {1, 3}, table) == partial_sum_direct(100, {1, 3}));
  CHECK_THROWS_AS(partial_sum_direct(10, {1, 0}), InvalidArgument);
  CHECK_THROWS_AS(partial_sum_bernoulli(10, {1, 0}, table), InvalidArgument);
  CHECK_THROWS_AS(partial_sum_bernoulli(101, {1, 2}, table), InvalidArgument);
}

TEST_CASE("Bernoulli expansion and Faulhaber route agree with direct sums up to 2000") {
  const MobiusTable table(2000);
  for (unsigned r = 1; r <= 3; ++r) {
    for (unsigned k = 1; k <= 5; ++k) {
      BigInt running = 0;
      for (std::uint64_t x = 1; x <= 2000; ++x) {
        running += jordan(x, {r, k - 1});
        REQUIRE(partial_sum_bernoulli(x, {r, k}, table) == running);
        if (x % 37 == 0) REQUIRE(partial_sum_faulhaber(x, {r, k}, table) == running);
      }
    }
  }
}

TEST_CASE("partial sums stay within O(x^(k-1)) of x^k / (k zeta(rk))") {
  // Bounded-sequence check: the maximum is reported, no constant is asserted.
  for (auto [r, k] : {std::pair{1u, 3u}, {2u, 2u}, {3u, 2u}, {1u, 4u}}) {
    const ZetaValue z = zeta_value(r * k, 1e-20);
    const double zeta = z.value().to_double();
    BigInt running = 0;
    double max_ratio = 0.0;
    for (std::uint64_t x = 1; x <= 5000; ++x) {
      running += jordan(x, {r, k - 1});
      const double main = std::pow(static_cast<double>(x), k) / (k * zeta);
      const double ratio = std::fabs(running.get_d() - main) / std::pow(static_cast<double>(x), k - 1);
      max_ratio = std::max(max_ratio, ratio);
    }
    MESSAGE("r=" << r << " k=" << k << " max |S(x) - x^k/(k zeta)| / x^(k-1) over x<=5000: " << max_ratio);
    CHECK(std::isfinite(max_ratio));
  }
}
