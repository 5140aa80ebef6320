#include "rfree/omega.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rfree/parallel.hpp"

namespace rfree {

namespace {

std::uint64_t to_u64(const BigInt& v, const char* who) {
  if (!v.fits_ulong_p()) throw ResourceLimit(std::string(who) + ": value exceeds 64 bits");
  return v.get_ui();
}

// mu(d) d^(-rj) {x/d^r}^i, exact.
BigRational frac_term(const BigInt& x, std::uint64_t d, int mu, unsigned r, unsigned j, unsigned i) {
  const BigInt dr = pow(BigInt(static_cast<unsigned long>(d)), r);
  BigInt rem;
  mpz_fdiv_r(rem.get_mpz_t(), x.get_mpz_t(), dr.get_mpz_t());
  BigRational t(mu * pow(rem, i), pow(dr, static_cast<unsigned long>(j) + i));
  t.canonicalize();
  return t;
}

BigRational pow2_inverse(unsigned e) { return BigRational(BigInt(1), BigInt(1) << e); }

}  // namespace

FracSumResult frac_sum(const FracSumParams& p, const MobiusTable& table, SumMode mode, mpfr_prec_t bits) {
  if (p.r < 1) throw InvalidArgument("frac_sum: r must be >= 1");
  if (sgn(p.x) < 0) throw InvalidArgument("frac_sum: x must be nonnegative");
  const std::uint64_t last = to_u64(integer_root(p.x, p.r), "frac_sum");
  if (mode == SumMode::exact && last > kExactFracSumLimit) {
    throw ResourceLimit("frac_sum: floor(x^(1/r)) = " + std::to_string(last) +
                        " is above the exact-mode limit; use truncated_frac_sum or approximate mode");
  }
  table.require(last, "frac_sum");

  FracSumResult out{std::nullopt, Ball::exact(BigRational(0), bits)};
  BigRational acc = 0;
  for (std::uint64_t d = 1; d <= last; ++d) {
    const int mu = table.mu(d);
    if (mu == 0) continue;
    const BigRational term = frac_term(p.x, d, mu, p.r, p.j, p.i);
    if (mode == SumMode::exact) {
      acc += term;
    } else {
      out.value += Ball::exact(term, bits);
    }
  }
  if (mode == SumMode::exact) {
    acc.canonicalize();
    out.value = Ball::exact(acc, bits);
    out.exact = std::move(acc);
  }
  return out;
}

BigRational frac_sum_magnitude_bound(const FracSumParams& p) {
  const std::uint64_t last = to_u64(integer_root(p.x, p.r), "frac_sum_magnitude_bound");
  BigRational acc = 0;
  for (std::uint64_t d = 1; d <= last; ++d) {
    acc += BigRational(BigInt(1), pow(BigInt(static_cast<unsigned long>(d)), static_cast<unsigned long>(p.r) * p.j));
  }
  acc.canonicalize();
  return acc;
}

TruncatedSum truncated_frac_sum(const FracSumParams& p, std::uint64_t cutoff, const MobiusTable& table) {
  if (p.r < 1 || p.r * p.j < 2) throw InvalidArgument("truncated_frac_sum: needs rj >= 2 for a summable tail");
  if (cutoff < 2) throw InvalidArgument("truncated_frac_sum: cutoff D must be >= 2");
  if (sgn(p.x) < 0) throw InvalidArgument("truncated_frac_sum: x must be nonnegative");

  const BigInt root = integer_root(p.x, p.r);
  const std::uint64_t last = root > cutoff ? cutoff : root.get_ui();
  table.require(last, "truncated_frac_sum");

  TruncatedSum out{0, 0};
  for (std::uint64_t d = 1; d <= last; ++d) {
    const int mu = table.mu(d);
    if (mu != 0) out.finite_part += frac_term(p.x, d, mu, p.r, p.j, p.i);
  }
  out.finite_part.canonicalize();
  if (root > cutoff) {
    // sum_{d>D} d^-s <= integral_D^inf t^-s dt = D^(1-s)/(s-1), and |mu {.}^i| <= 1.
    const unsigned s = p.r * p.j;
    out.tail_bound = BigRational(BigInt(1), BigInt(s - 1) * pow(BigInt(static_cast<unsigned long>(cutoff)), s - 1));
    out.tail_bound.canonicalize();
  }
  return out;
}

std::vector<BigInt> witness_large(unsigned r, unsigned k, std::size_t count) {
  if (r < 2 || r * k < 4) {
    throw InvalidArgument("witness_large: the large-x branch needs r >= 2 and rk >= 4 (got r=" + std::to_string(r) +
                          ", k=" + std::to_string(k) + "); for (r,k) = (2,1) or (3,1) use the small branch");
  }
  const BigInt modulus = BigInt(1) << r;
  const BigInt residue = modulus - 1;
  const BigInt start = pow(BigInt(3), r);
  // Smallest x >= 3^r with x = 2^r - 1 (mod 2^r).
  BigInt x = start + ((residue - start % modulus) % modulus + modulus) % modulus;
  std::vector<BigInt> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n, x += modulus) out.push_back(x);
  return out;
}

BigInt witness_small(unsigned r, const BigInt& m) {
  if (r != 2 && r != 3) throw InvalidArgument("witness_small: the small-x branch covers r = 2 and r = 3 only");
  if (sgn(m) <= 0) throw InvalidArgument("witness_small: m must be positive");
  BigInt primorial = 1;  // product of the odd primes below 100
  for (std::uint64_t q = 3; q < 100; q += 2) {
    const auto f = factorize(q);
    if (f.size() == 1 && f[0].second == 1) primorial *= static_cast<unsigned long>(q);
  }
  BigInt g;
  const BigInt twice = 2 * primorial;
  mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), twice.get_mpz_t());
  if (g != 1) {
    throw InvalidArgument("witness_small: m = " + m.get_str() + " shares a factor with 2 or an odd prime below 100");
  }
  return m * m * pow(primorial, r);
}

const char* to_string(Verdict v) { return v == Verdict::negative ? "negative" : "inconclusive"; }

WitnessReport lemma_check(const BigInt& x, unsigned r, unsigned k, std::uint64_t cutoff, const MobiusTable& table) {
  if (r < 1 || k < 1) throw InvalidArgument("lemma_check: needs r >= 1 and k >= 1");
  WitnessReport rep;
  rep.x = x;
  rep.r = r;
  rep.k = k;
  rep.cutoff = cutoff;

  const FracSumParams p{r, k, 1, x};
  const BigInt root = integer_root(x, r);
  if (root <= cutoff) {
    // Whole sum is finite; no tail.
    rep.full_evaluation = true;
    const std::uint64_t last = root.get_ui();
    table.require(last, "lemma_check");
    for (std::uint64_t d = 1; d <= last; ++d) {
      const int mu = table.mu(d);
      if (mu != 0) rep.finite_part += frac_term(x, d, mu, r, k, 1);
    }
    rep.finite_part.canonicalize();
    rep.tail_bound = 0;
  } else {
    TruncatedSum t = truncated_frac_sum(p, cutoff, table);
    rep.finite_part = std::move(t.finite_part);
    rep.tail_bound = std::move(t.tail_bound);
  }
  rep.upper_bound = rep.finite_part + rep.tail_bound;
  rep.upper_bound.canonicalize();
  rep.verdict = sgn(rep.upper_bound) < 0 ? Verdict::negative : Verdict::inconclusive;

  if (r >= 2 && r * k >= 4) {
    rep.paper_bound = -pow2_inverse(r * k + 1) + pow2_inverse(r * (k + 1));
  } else if (k == 1 && (r == 2 || r == 3)) {
    rep.paper_bound = BigRational(-1, 20);
  }
  if (rep.paper_bound) {
    rep.paper_bound->canonicalize();
    rep.below_paper_bound = rep.upper_bound < *rep.paper_bound;
  }
  return rep;
}

Ball mertens_residual(std::uint64_t x, unsigned s, const ZetaValue& zeta, const MobiusTable& table) {
  if (s < 2 || zeta.s != s) throw InvalidArgument("mertens_residual: needs s >= 2 and a matching zeta(s)");
  table.require(x, "mertens_residual");
  const mpfr_prec_t bits = zeta.enclosure.precision();
  Ball sum = Ball::exact(BigRational(0), bits);
  for (std::uint64_t d = 1; d <= x; ++d) {
    const int mu = table.mu(d);
    if (mu != 0) sum += Ball::exact(BigRational(BigInt(mu), pow(BigInt(static_cast<unsigned long>(d)), s)), bits);
  }
  return sum - Ball::exact(BigRational(1), bits) / zeta.enclosure;
}

Ball proposition_residual(std::uint64_t x, unsigned k, unsigned r, const ZetaValue& zeta, const MobiusTable& table) {
  if (r < 1 || r * k < 2 || zeta.s != r * k) {
    throw InvalidArgument("proposition_residual: needs rk >= 2 and zeta(rk)");
  }
  if (x < 1) throw InvalidArgument("proposition_residual: x must be positive");
  const std::uint64_t last = integer_root(x, r);
  table.require(last, "proposition_residual");
  const BigInt big_x(static_cast<unsigned long>(x));
  const BigInt xk = pow(big_x, k);
  const mpfr_prec_t bits = zeta.enclosure.precision() + static_cast<mpfr_prec_t>(mpz_sizeinbase(xk.get_mpz_t(), 2));

  Ball sum = Ball::exact(BigRational(0), bits);
  for (std::uint64_t d = 1; d <= last; ++d) {
    const int mu = table.mu(d);
    if (mu != 0) {
      sum += Ball::exact(BigRational(BigInt(mu), pow(BigInt(static_cast<unsigned long>(d)), r * k)), bits);
    }
  }
  const Ball deviation = sum - Ball::exact(BigRational(1), bits) / zeta.enclosure;
  return Ball::exact(xk, bits) * deviation / Ball::root(big_x, r, bits);
}

ResidualMax mertens_residual_scan(std::uint64_t x_max, unsigned s, const ZetaValue& zeta, const MobiusTable& table) {
  if (s < 2 || zeta.s != s) throw InvalidArgument("mertens_residual_scan: needs s >= 2 and a matching zeta(s)");
  table.require(x_max, "mertens_residual_scan");
  const mpfr_prec_t bits = zeta.enclosure.precision();
  const Ball inverse_zeta = Ball::exact(BigRational(1), bits) / zeta.enclosure;
  Ball sum = Ball::exact(BigRational(0), bits);
  ResidualMax best;
  for (std::uint64_t x = 1; x <= x_max; ++x) {
    const int mu = table.mu(x);
    if (mu != 0) sum += Ball::exact(BigRational(BigInt(mu), pow(BigInt(static_cast<unsigned long>(x)), s)), bits);
    const Ball scaled = (sum - inverse_zeta) * Ball::exact(pow(BigInt(static_cast<unsigned long>(x)), s - 1), bits);
    const double v = std::fabs(scaled.mid_double());
    if (v > best.max_abs) best = {v, x};
  }
  return best;
}

ResidualMax proposition_residual_scan(std::uint64_t x_min, std::uint64_t x_max, unsigned k, unsigned r,
                                      const ZetaValue& zeta, const MobiusTable& table) {
  if (r < 1 || r * k < 2 || zeta.s != r * k) {
    throw InvalidArgument("proposition_residual_scan: needs rk >= 2 and zeta(rk)");
  }
  if (x_min < 1 || x_min > x_max) throw InvalidArgument("proposition_residual_scan: needs 1 <= x_min <= x_max");
  table.require(integer_root(x_max, r), "proposition_residual_scan");
  const BigInt top = pow(BigInt(static_cast<unsigned long>(x_max)), k);
  const mpfr_prec_t bits = zeta.enclosure.precision() + static_cast<mpfr_prec_t>(mpz_sizeinbase(top.get_mpz_t(), 2));
  const Ball inverse_zeta = Ball::exact(BigRational(1), bits) / zeta.enclosure;

  Ball sum = Ball::exact(BigRational(0), bits);
  std::uint64_t last = 0;
  ResidualMax best;
  for (std::uint64_t x = x_min; x <= x_max; ++x) {
    const std::uint64_t target = integer_root(x, r);
    for (; last < target; ) {
      ++last;
      const int mu = table.mu(last);
      if (mu != 0) {
        sum += Ball::exact(BigRational(BigInt(mu), pow(BigInt(static_cast<unsigned long>(last)), r * k)), bits);
      }
    }
    const BigInt big_x(static_cast<unsigned long>(x));
    const Ball value = Ball::exact(pow(big_x, k), bits) * (sum - inverse_zeta) / Ball::root(big_x, r, bits);
    const double v = std::fabs(value.mid_double());
    if (v > best.max_abs) best = {v, x};
  }
  return best;
}

std::vector<CountRecord> error_scan(unsigned r, unsigned k, std::uint64_t x_min, std::uint64_t x_max,
                                    std::uint64_t step, const ScanConfig& config) {
  if (r < 1 || k < 1) throw InvalidArgument("error_scan: needs r >= 1 and k >= 1");
  if (x_min < 2) throw InvalidArgument("error_scan: x_min must be >= 2");
  if (x_min > x_max) throw InvalidArgument("error_scan: x_min must not exceed x_max");
  if (step < 1) throw InvalidArgument("error_scan: step must be >= 1");
  const std::uint64_t count = (x_max - x_min) / step + 1;
  if (count > config.max_records) {
    throw ResourceLimit("error_scan: " + std::to_string(count) + " records exceed the limit of " +
                        std::to_string(config.max_records));
  }

  const MobiusTable table(std::max<std::uint64_t>(1, integer_root(x_max, r)));
  const ZetaValue zeta = zeta_value(r * k, config.precision);
  const int digits = digits_for_tolerance(config.precision);

  std::vector<std::optional<CountRecord>> slots(count);
  parallel_chunks(count, config.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      slots[idx] = count_record(CountParams{r, k, x_min + idx * step}, table, zeta, digits);
    }
  });

  std::vector<CountRecord> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

namespace {

OmegaRatio summarize(std::span<const std::pair<std::uint64_t, double>> points, std::uint64_t split) {
  OmegaRatio out;
  bool early = false;
  bool late = false;
  for (const auto& [x, v] : points) {
    if (x < split) {
      early = true;
      out.max_early = std::max(out.max_early, std::fabs(v));
    } else {
      late = true;
      out.max_late = std::max(out.max_late, std::fabs(v));
    }
  }
  if (!early || !late) throw InvalidArgument("omega_ratio_report: both windows around the split must be non-empty");
  if (out.max_early > 0.0) {
    out.ratio = out.max_late / out.max_early;
  } else {
    out.ratio = out.max_late > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return out;
}

}  // namespace

OmegaRatio omega_ratio_report(std::span<const CountRecord> records, std::uint64_t split) {
  std::vector<std::pair<std::uint64_t, double>> points;
  points.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.normalized_error) points.emplace_back(rec.params.x, rec.normalized_error->mid_double());
  }
  return summarize(points, split);
}

OmegaRatio omega_ratio_report(std::span<const std::pair<std::uint64_t, double>> points, std::uint64_t split) {
  return summarize(points, split);
}

}  // namespace rfree
