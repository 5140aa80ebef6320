#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rfree/identities.hpp"
#include "rfree/lattice.hpp"

using namespace rfree;

namespace {

double mid(const Ball& b) { return b.mid_double(); }

}  // namespace

TEST_CASE("count_oracle examples") {
  CHECK(count_oracle({2, 1, 10}) == 14);
  CHECK(count_oracle({1, 2, 1}) == 8);
  CHECK(count_oracle({1, 2, 2}) == 16);
  CHECK(count_oracle({4, 1, 15}) == 30);
  CHECK(count_oracle({1, 1, 0}) == 0);
  CHECK_THROWS_AS(count_oracle({1, 3, 500}, 1'000'000), ResourceLimit);
  CHECK_THROWS_AS(count_oracle({0, 1, 5}), InvalidArgument);
  CHECK_THROWS_AS(count_oracle({1, 0, 5}), InvalidArgument);
}

TEST_CASE("count_fast examples") {
  const MobiusTable table(100);
  CHECK(count_fast({2, 1, 10}, table) == 14);
  CHECK(count_fast({1, 2, 2}, table) == 16);
  CHECK(count_fast({1, 1, 1}, table) == 2);
  CHECK(count_fast({1, 2, 1}, table) == 8);
  CHECK(count_fast({4, 1, 15}, table) == 30);
  CHECK(count_fast({3, 2, 0}, table) == 0);
  CHECK_THROWS_AS(count_fast({1, 2, 101}, table), InvalidArgument);
}

TEST_CASE("count_fast equals enumeration on small boxes") {
  const MobiusTable table(30);
  for (unsigned r = 1; r <= 3; ++r) {
    for (unsigned k = 1; k <= 4; ++k) {
      const std::uint64_t top = k == 4 ? 10 : 25;
      for (std::uint64_t x = 0; x <= top; ++x) {
        CAPTURE(r);
        CAPTURE(k);
        CAPTURE(x);
        const BigInt fast = count_fast({r, k, x}, table);
        REQUIRE(fast == count_oracle({r, k, x}));
        if (k <= 2 && x <= 12) REQUIRE(fast == oracle::brute_count(static_cast<std::int64_t>(x), r, k));
      }
    }
  }
}

TEST_CASE("count_fast is monotone in x and in r, and bounded by the box") {
  const MobiusTable table(2000);
  for (unsigned k = 1; k <= 4; ++k) {
    for (unsigned r = 1; r <= 4; ++r) {
      BigInt previous = 0;
      for (std::uint64_t x = 0; x <= 2000; x += (k >= 3 ? 7 : 1)) {
        const BigInt v = count_fast({r, k, x}, table);
        REQUIRE(v >= previous);
        REQUIRE(v >= 0);
        REQUIRE(v <= pow(BigInt(2 * x + 1), k));
        if (r > 1) REQUIRE(v >= count_fast({r - 1, k, x}, table));
        previous = v;
      }
    }
  }
}

TEST_CASE("large k takes the arbitrary-precision path and agrees with the umbral identity") {
  const MobiusTable table(100'000);
  for (std::uint64_t x : {1000ull, 99'999ull}) {
    for (unsigned k : {6u, 9u}) {
      CAPTURE(x);
      CAPTURE(k);
      CHECK(count_fast({1, k, x}, table) == umbral_eval(x, 1, k, table));
    }
  }
  // Around the 128-bit boundary: x = 10^6, k = 5 gives (2x+1)^5 ~ 2^105.
  const MobiusTable wide(1'000'000);
  for (unsigned k = 4; k <= 7; ++k) {
    CHECK(count_fast({1, k, 1'000'000}, wide) == umbral_eval(1'000'000, 1, k, wide));
  }
}

TEST_CASE("count_record examples") {
  const MobiusTable table(100);
  const ZetaValue z2 = zeta_value(2, 1e-30);

  SUBCASE("r=2, k=1, x=10") {
    const CountRecord rec = count_record({2, 1, 10}, table, z2, 30);
    CHECK(rec.count == 14);
    CHECK(std::fabs(mid(rec.main_term) - 12.158542037080532573) < 1e-12);
    CHECK(std::fabs(mid(rec.error) - (14 - 12.158542037080532573)) < 1e-12);
    REQUIRE(rec.normalized_error);
    CHECK(std::fabs(mid(*rec.normalized_error) - (14 - 12.158542037080532573) / std::sqrt(10.0)) < 1e-12);
    CHECK(rec.main_term.rad_double() < 1e-28);
    CHECK(rec.main_term.mid().to_fixed(30).rfind("12.158542037080532573265535585", 0) == 0);
    CHECK(std::fabs(mid(rec.density) - 14.0 / 21.0) < 1e-15);
  }
  SUBCASE("r=1, k=2, x=1") {
    const CountRecord rec = count_record({1, 2, 1}, table, z2, 30);
    CHECK(rec.count == 8);
    CHECK(rec.main_term.mid().to_fixed(30).rfind("2.43170840741610651465310711703", 0) == 0);
    CHECK(std::fabs(mid(rec.error) - 5.568291592583893) < 1e-12);
    CHECK_FALSE(rec.normalized_error);  // x log x vanishes at x = 1
  }
  SUBCASE("convenience overload and zeta mismatch") {
    const CountRecord rec = count_record({4, 1, 15}, 1e-20);
    CHECK(rec.count == 30);
    CHECK(error_scale(4, 1) == ErrorScale::root_x);
    REQUIRE(rec.normalized_error);
    CHECK(std::fabs(mid(*rec.normalized_error) - std::fabs(30 - 30 / 1.0823232337111381915) / std::pow(15.0, 0.25)) < 1e-12);
    CHECK_THROWS_AS(count_record({1, 3, 10}, table, z2, 30), InvalidArgument);
  }
}

TEST_CASE("error_scale picks the three normalisations") {
  CHECK(error_scale(1, 2) == ErrorScale::x_log_x);
  CHECK(error_scale(2, 1) == ErrorScale::root_x);
  CHECK(error_scale(3, 1) == ErrorScale::root_x);
  CHECK(error_scale(1, 1) == ErrorScale::power_k_minus_1);
  CHECK(error_scale(1, 3) == ErrorScale::power_k_minus_1);
  CHECK(error_scale(2, 2) == ErrorScale::power_k_minus_1);
  CHECK(std::string(to_string(ErrorScale::x_log_x)) == "x*log(x)");
}

TEST_CASE("error equals count minus main term inside the radii") {
  const MobiusTable table(3000);
  const ZetaValue z4 = zeta_value(4, 1e-25);
  for (std::uint64_t x : {0ull, 1ull, 2ull, 17ull, 400ull, 2999ull}) {
    const CountRecord rec = count_record({2, 2, x}, table, z4, 25);
    const Ball diff = Ball::exact(rec.count, 200) - rec.main_term - rec.error;
    CHECK(diff.contains(0));
    CHECK(rec.main_term.contains(0) == (x == 0));
  }
}

TEST_CASE("density approaches 1/zeta(rk) at x = 10^4") {
  const MobiusTable table(10'000);
  struct Case {
    unsigned r, k;
    double inverse_zeta;
  };
  for (const Case c : {Case{1, 3, 0.83190737258070746868}, Case{2, 2, 0.92393840292159016702},
                       Case{3, 2, 0.98295259226458041980}}) {
    const ZetaValue z = zeta_value(c.r * c.k, 1e-20);
    const CountRecord rec = count_record({c.r, c.k, 10'000}, table, z, 20);
    const double gap = std::fabs(mid(rec.density) - c.inverse_zeta);
    MESSAGE("r=" << c.r << " k=" << c.k << " |density - 1/zeta| = " << gap);
    CHECK(gap < 0.01);
  }
}

TEST_CASE("normalised errors stay bounded up to x = 5000") {
  // Max reported for each of the three normalisations; nothing beyond finiteness is asserted.
  const MobiusTable table(5000);
  for (auto [r, k] : {std::pair{1u, 2u}, {2u, 1u}, {1u, 3u}}) {
    const ZetaValue z = zeta_value(r * k, 1e-20);
    double worst = 0.0;
    for (std::uint64_t x = 2; x <= 5000; ++x) {
      const CountRecord rec = count_record({r, k, x}, table, z, 20);
      REQUIRE(rec.normalized_error);
      worst = std::max(worst, mid(*rec.normalized_error));
    }
    MESSAGE("r=" << r << " k=" << k << " (" << std::string(to_string(error_scale(r, k))) << ") max normalised |E| = " << worst);
    CHECK(std::isfinite(worst));
  }
}
