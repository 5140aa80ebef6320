#include "rfree/zeta.hpp"

#include <algorithm>

namespace rfree {

namespace {

constexpr const char* kEulerGamma =
    "0.577215664901532860606512090082402431042159335939923598805767234884867726777664670936947063";

void check_s(unsigned s, const char* who) {
  if (s < 2) throw InvalidArgument(std::string(who) + ": s must be an integer >= 2");
}

// T_j = B_{2j} / (2j)! * s (s+1) ... (s+2j-2) * N^(-s-2j+1)
BigRational correction_term(unsigned s, std::uint64_t n, unsigned j, const BernoulliSeq& b) {
  BigInt rising = 1;
  for (unsigned i = 0; i + 1 < 2 * j; ++i) rising *= s + i;
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), 2 * j);
  BigRational t = b[2 * j] * BigRational(rising, fact * pow(BigInt(static_cast<unsigned long>(n)), s + 2 * j - 1));
  t.canonicalize();
  return t;
}

BigRational head_sum(unsigned s, std::uint64_t last) {
  BigRational acc = 0;
  for (std::uint64_t n = 1; n <= last; ++n) {
    acc += BigRational(BigInt(1), pow(BigInt(static_cast<unsigned long>(n)), s));
  }
  return acc;
}

}  // namespace

ZetaValue zeta_enclosure(unsigned s, std::uint64_t depth, unsigned correction_terms, mpfr_prec_t bits) {
  check_s(s, "zeta_enclosure");
  if (depth < 1) throw InvalidArgument("zeta_enclosure: depth must be positive");
  const BernoulliSeq b = bernoulli(2 * correction_terms + 3);
  const BigInt n(static_cast<unsigned long>(depth));

  BigRational approx = head_sum(s, depth - 1);
  approx += BigRational(BigInt(1), BigInt(s - 1) * pow(n, s - 1));
  approx += BigRational(BigInt(1), 2 * pow(n, s));
  for (unsigned j = 1; j <= correction_terms; ++j) approx += correction_term(s, depth, j, b);
  approx.canonicalize();
  BigRational remainder = abs(correction_term(s, depth, correction_terms + 1, b));

  ZetaValue out{s, Ball::exact(approx, bits), depth, correction_terms};
  out.enclosure.widen(remainder);
  return out;
}

ZetaValue zeta_enclosure_plain(unsigned s, std::uint64_t depth, mpfr_prec_t bits) {
  check_s(s, "zeta_enclosure_plain");
  if (depth < 1) throw InvalidArgument("zeta_enclosure_plain: depth must be positive");
  Ball sum = Ball::exact(BigRational(0), bits);
  for (std::uint64_t n = 1; n <= depth; ++n) {
    sum += Ball::exact(BigRational(BigInt(1), pow(BigInt(static_cast<unsigned long>(n)), s)), bits);
  }
  const BigRational half_tail(BigInt(1), 2 * BigInt(s - 1) * pow(BigInt(static_cast<unsigned long>(depth)), s - 1));
  ZetaValue out{s, sum + Ball::exact(half_tail, bits), depth, 0};
  out.enclosure.widen(half_tail);
  return out;
}

ZetaValue zeta_value(unsigned s, double tolerance, std::uint64_t max_depth) {
  check_s(s, "zeta_value");
  const int digits = digits_for_tolerance(tolerance);
  const mpfr_prec_t bits = working_bits(digits);
  BigRational target;
  mpq_set_d(target.get_mpq_t(), tolerance / 2);

  // Grow N and, for each N, the number of correction terms until the remainder fits. The
  // correction terms only shrink while s + 2m stays below about 2 pi N, which caps m.
  constexpr unsigned kMaxTerms = 64;
  const BernoulliSeq b = bernoulli(2 * kMaxTerms + 3);
  for (std::uint64_t depth = 8; depth <= max_depth; depth *= 2) {
    const auto max_terms = static_cast<unsigned>(std::min<std::uint64_t>(depth, kMaxTerms));
    for (unsigned m = 1; m <= max_terms; ++m) {
      if (abs(correction_term(s, depth, m + 1, b)) <= target) {
        ZetaValue z = zeta_enclosure(s, depth, m, bits);
        if (z.enclosure.rad_double() <= tolerance) return z;
        break;
      }
    }
  }
  throw ResourceLimit("zeta_value: tolerance " + std::to_string(tolerance) +
                      " not reachable within depth " + std::to_string(max_depth));
}

Ball euler_gamma(mpfr_prec_t bits) {
  Ball out = Ball::from_mid_rad(Real::from_string(kEulerGamma, std::max<mpfr_prec_t>(bits, 320)), Real(64));
  // Truncating to 90 digits costs < 1e-90; parsing into >= 320 bits costs far less.
  out.widen(BigRational(BigInt(2), pow(BigInt(10), 90)));
  return out;
}

}  // namespace rfree
