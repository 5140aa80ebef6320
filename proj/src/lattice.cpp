#include "rfree/lattice.hpp"

#include <bit>
#include <numeric>
#include <string>

namespace rfree {

namespace {

void check_params(const CountParams& p, const char* who) {
  if (p.r < 1 || p.k < 1) throw InvalidArgument(std::string(who) + ": needs r >= 1 and k >= 1");
}

BigInt to_big(unsigned __int128 v) {
  BigInt out(static_cast<unsigned long>(v >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return out;
}

BigInt to_big(__int128 v) {
  return v < 0 ? BigInt(-to_big(static_cast<unsigned __int128>(-v))) : to_big(static_cast<unsigned __int128>(v));
}

}  // namespace

ErrorScale error_scale(unsigned r, unsigned k) {
  if (r == 1 && k == 2) return ErrorScale::x_log_x;
  if (r >= 2 && k == 1) return ErrorScale::root_x;
  return ErrorScale::power_k_minus_1;
}

const char* to_string(ErrorScale scale) {
  switch (scale) {
    case ErrorScale::x_log_x: return "x*log(x)";
    case ErrorScale::root_x: return "x^(1/r)";
    case ErrorScale::power_k_minus_1: return "x^(k-1)";
  }
  return "?";
}

BigInt count_oracle(const CountParams& p, std::uint64_t budget) {
  check_params(p, "count_oracle");
  std::uint64_t tuples = 0;
  if (p.x > (std::uint64_t{1} << 62) || !checked_pow(2 * p.x + 1, p.k, tuples) || tuples > budget) {
    throw ResourceLimit("count_oracle: (2x+1)^k exceeds the enumeration budget of " + std::to_string(budget));
  }
  // gcd of absolute values; a tuple is relatively r-prime iff that gcd is nonzero and r-free.
  std::vector<bool> r_free(p.x + 1);
  for (std::uint64_t g = 1; g <= p.x; ++g) r_free[g] = is_r_free(g, p.r);

  const auto side = static_cast<std::int64_t>(p.x);
  std::vector<std::int64_t> coord(p.k, -side);
  std::vector<std::uint64_t> prefix_gcd(p.k + 1, 0);
  auto refresh = [&](unsigned from) {
    for (unsigned i = from; i < p.k; ++i) {
      prefix_gcd[i + 1] = std::gcd(prefix_gcd[i], static_cast<std::uint64_t>(coord[i] < 0 ? -coord[i] : coord[i]));
    }
  };
  refresh(0);

  std::uint64_t count = 0;
  while (true) {
    const std::uint64_t g = prefix_gcd[p.k];
    if (g != 0 && r_free[g]) ++count;
    unsigned pos = p.k;
    while (pos > 0 && coord[pos - 1] == side) --pos;
    if (pos == 0) break;
    ++coord[pos - 1];
    for (unsigned i = pos; i < p.k; ++i) coord[i] = -side;
    refresh(pos - 1);
  }
  return BigInt(static_cast<unsigned long>(count));
}

BigInt count_fast(const CountParams& p, const MobiusTable& table) {
  check_params(p, "count_fast");
  const std::uint64_t last = integer_root(p.x, p.r);
  table.require(last, "count_fast");
  if (last == 0) return 0;

  // |sum| <= last * (2x+1)^k; stay in 128-bit integers whenever that provably fits.
  const auto side_bits = static_cast<unsigned>(std::bit_width(2 * p.x + 1));
  const auto last_bits = static_cast<unsigned>(std::bit_width(last));
  if (side_bits * p.k + last_bits < 126) {
    __int128 total = 0;
    for_each_floor_block(p.x, p.r, [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t q) {
      const std::int64_t weight = table.mertens(hi) - table.mertens(lo - 1);
      if (weight == 0) return;
      __int128 power = 1;
      for (unsigned i = 0; i < p.k; ++i) power *= static_cast<__int128>(2 * q + 1);
      total += weight * power;
    });
    total -= table.mertens(last);
    return to_big(total);
  }

  BigInt total = 0;
  for_each_floor_block(p.x, p.r, [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t q) {
    const long weight = static_cast<long>(table.mertens(hi) - table.mertens(lo - 1));
    if (weight != 0) total += weight * pow(BigInt(static_cast<unsigned long>(2 * q + 1)), p.k);
  });
  total -= static_cast<long>(table.mertens(last));
  return total;
}

CountRecord count_record(const CountParams& p, const MobiusTable& table, const ZetaValue& zeta, int digits) {
  check_params(p, "count_record");
  if (zeta.s != p.r * p.k) {
    throw InvalidArgument("count_record: zeta enclosure is for s=" + std::to_string(zeta.s) + ", needs s=rk=" +
                          std::to_string(p.r * p.k));
  }
  const BigInt x(static_cast<unsigned long>(p.x));
  const BigInt box = pow(2 * x, p.k);
  const BigInt side = pow(2 * x + 1, p.k);
  const mpfr_prec_t bits = working_bits(digits, mpz_sizeinbase(side.get_mpz_t(), 2));

  CountRecord rec{p, count_fast(p, table), Ball(bits), Ball(bits), std::nullopt, Ball(bits)};
  rec.main_term = Ball::exact(box, bits) / zeta.enclosure;
  rec.error = Ball::exact(rec.count, bits) - rec.main_term;
  rec.density = Ball::exact(BigRational(rec.count, side), bits);

  std::optional<Ball> scale;
  switch (error_scale(p.r, p.k)) {
    case ErrorScale::x_log_x:
      if (p.x >= 2) scale = Ball::exact(x, bits) * Ball::log(x, bits);
      break;
    case ErrorScale::root_x:
      if (p.x >= 1) scale = Ball::root(x, p.r, bits);
      break;
    case ErrorScale::power_k_minus_1:
      if (p.x >= 1 || p.k == 1) scale = Ball::exact(pow(x, p.k - 1), bits);
      break;
  }
  if (scale) rec.normalized_error = rec.error.abs() / *scale;
  return rec;
}

CountRecord count_record(const CountParams& p, double precision) {
  check_params(p, "count_record");
  const MobiusTable table(std::max<std::uint64_t>(1, integer_root(p.x, p.r)));
  const ZetaValue zeta = zeta_value(p.r * p.k, precision);
  return count_record(p, table, zeta, digits_for_tolerance(precision));
}

}  // namespace rfree
