#pragma once

#include <cstdint>

#include "rfree/real.hpp"

namespace rfree {

/// Enclosure of zeta(s) for an integer s >= 2.
struct ZetaValue {
  unsigned s = 0;
  Ball enclosure;
  std::uint64_t depth = 0;         // terms summed directly
  unsigned correction_terms = 0;   // Euler-Maclaurin Bernoulli terms (0 for the plain tail scheme)

  const Real& value() const noexcept { return enclosure.mid(); }
  const Real& error_radius() const noexcept { return enclosure.rad(); }
};

/// zeta(s) with error_radius <= tolerance. Throws ResourceLimit if `max_depth` direct terms
/// are not enough.
ZetaValue zeta_value(unsigned s, double tolerance, std::uint64_t max_depth = 1u << 16);

/// Euler-Maclaurin enclosure with N = depth direct terms and m correction terms. The remainder
/// is bounded by the first omitted correction term, which is rigorous for real s > 1.
ZetaValue zeta_enclosure(unsigned s, std::uint64_t depth, unsigned correction_terms, mpfr_prec_t bits);

/// sum_{n<=N} n^-s plus the tail, which lies in (0, N^(1-s)/(s-1)].
ZetaValue zeta_enclosure_plain(unsigned s, std::uint64_t depth, mpfr_prec_t bits);

/// Euler's constant from a stored 90-digit expansion.
Ball euler_gamma(mpfr_prec_t bits);

}  // namespace rfree
