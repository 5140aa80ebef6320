#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rfree/lattice.hpp"

namespace rfree {

/// sum_{d^r<=x} mu(d) d^(-rj) {x/d^r}^i
struct FracSumParams {
  unsigned r = 1;
  unsigned j = 0;
  unsigned i = 0;
  BigInt x = 0;
};

enum class SumMode { exact, approximate };

/// Largest floor(x^(1/r)) accepted in exact mode; exact denominators grow like lcm(d^(r(i+j))).
inline constexpr std::uint64_t kExactFracSumLimit = 100'000;

struct FracSumResult {
  std::optional<BigRational> exact;  // present in exact mode
  Ball value;                        // always present; exact mode rounds `exact` once
};

/// Fractional parts are (x mod d^r) / d^r by big-integer modulus. Exact mode throws ResourceLimit
/// above kExactFracSumLimit; approximate mode accumulates rigorously in ball arithmetic.
FracSumResult frac_sum(const FracSumParams& p, const MobiusTable& table, SumMode mode,
                       mpfr_prec_t bits = 256);

/// sum_{d^r<=x} d^(-rj): the termwise magnitude bound for frac_sum.
BigRational frac_sum_magnitude_bound(const FracSumParams& p);

struct TruncatedSum {
  BigRational finite_part;  // exact sum over d <= min(D, x^(1/r))
  BigRational tail_bound;   // >= |sum over D < d <= x^(1/r)|, via D^(1-rj)/(rj-1)
};

/// Needs rj >= 2 and D >= 2; x may be arbitrarily large since only x mod d^r is used.
TruncatedSum truncated_frac_sum(const FracSumParams& p, std::uint64_t cutoff, const MobiusTable& table);

/// First `count` integers >= 3^r congruent to 2^r - 1 mod 2^r. Needs r >= 2 and rk >= 4.
std::vector<BigInt> witness_large(unsigned r, unsigned k, std::size_t count);

/// m^2 prod_{3<=p<100} p^r for r in {2, 3}; m must be coprime to 2 and every such p.
BigInt witness_small(unsigned r, const BigInt& m);

enum class Verdict { negative, inconclusive };
const char* to_string(Verdict v);

struct WitnessReport {
  BigInt x;
  unsigned r = 0;
  unsigned k = 0;
  std::uint64_t cutoff = 0;
  bool full_evaluation = false;           // every d with d^r <= x was summed
  BigRational finite_part;
  BigRational tail_bound;
  BigRational upper_bound;                // finite_part + tail_bound
  Verdict verdict = Verdict::inconclusive;
  std::optional<BigRational> paper_bound; // large branch: -1/2^(rk+1) + 1/2^(r(k+1)); small: -1/20
  bool below_paper_bound = false;         // upper_bound < paper_bound
};

/// Evaluates sum_{d^r<=x} mu(d) d^(-rk) {x/d^r} at a candidate witness. When floor(x^(1/r))
/// <= cutoff the sum is exact; otherwise the terms past the cutoff go into tail_bound.
WitnessReport lemma_check(const BigInt& x, unsigned r, unsigned k, std::uint64_t cutoff, const MobiusTable& table);

/// sum_{d<=x} mu(d)/d^s - 1/zeta(s).
Ball mertens_residual(std::uint64_t x, unsigned s, const ZetaValue& zeta, const MobiusTable& table);

/// (sum_{d^r<=x} mu(d) x^k / d^(rk) - x^k / zeta(rk)) / x^(1/r).
Ball proposition_residual(std::uint64_t x, unsigned k, unsigned r, const ZetaValue& zeta, const MobiusTable& table);

struct ResidualMax {
  double max_abs = 0.0;
  std::uint64_t argmax = 0;
};

/// max over 1 <= x <= x_max of |mertens_residual(x, s)| * x^(s-1), incrementally.
ResidualMax mertens_residual_scan(std::uint64_t x_max, unsigned s, const ZetaValue& zeta, const MobiusTable& table);

/// max over x_min <= x <= x_max of |proposition_residual(x, k, r)|, incrementally.
ResidualMax proposition_residual_scan(std::uint64_t x_min, std::uint64_t x_max, unsigned k, unsigned r,
                                      const ZetaValue& zeta, const MobiusTable& table);

struct ScanConfig {
  double precision = 1e-30;
  unsigned workers = 0;              // 0: hardware concurrency
  std::uint64_t max_records = 10'000'000;
};

/// One CountRecord per x in {x_min, x_min + step, ...} <= x_max, in ascending x regardless of
/// worker count.
std::vector<CountRecord> error_scan(unsigned r, unsigned k, std::uint64_t x_min, std::uint64_t x_max,
                                    std::uint64_t step, const ScanConfig& config = {});

struct OmegaRatio {
  double max_early = 0.0;  // over x < split
  double max_late = 0.0;   // over x >= split
  double ratio = 0.0;      // max_late / max_early
};

/// Two-window non-decay summary of |normalized_error| (records without one are skipped).
OmegaRatio omega_ratio_report(std::span<const CountRecord> records, std::uint64_t split);

/// Same summary over bare (x, |normalized_error|) pairs, e.g. parsed back from CSV.
OmegaRatio omega_ratio_report(std::span<const std::pair<std::uint64_t, double>> points, std::uint64_t split);

}  // namespace rfree
