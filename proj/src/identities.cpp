#include "rfree/identities.hpp"

#include <string>

namespace rfree {

UmbralPolynomial umbral_coefficients(unsigned k) {
  if (k < 1) throw InvalidArgument("umbral_coefficients: k must be >= 1");
  // (2X+1)^(k+1) - (2X-1)^(k+1) keeps 2 C(k+1,j) (2X)^j exactly when k+1-j is odd.
  UmbralPolynomial poly{k, std::vector<BigRational>(k + 2, 0)};
  for (unsigned j = 0; j <= k + 1; ++j) {
    if ((k + 1 - j) % 2 == 0) continue;
    BigRational c(binomial(k + 1, j) << j, BigInt(k + 1));
    c.canonicalize();
    poly.coefficients[j] = c;
  }
  return poly;
}

BigRational umbral_value(std::uint64_t x, unsigned r, unsigned k, const MobiusTable& table,
                         const BigRational& zero_power) {
  const UmbralPolynomial poly = umbral_coefficients(k);
  BigRational total = poly.coefficients[0] * zero_power;
  for (unsigned j = 1; j <= k + 1; ++j) {
    if (sgn(poly.coefficients[j]) == 0) continue;
    const BigInt moment = j * partial_sum_bernoulli(x, TotientParams{r, j}, table);
    total += poly.coefficients[j] * BigRational(moment);
  }
  total.canonicalize();
  return total;
}

BigInt umbral_eval(std::uint64_t x, unsigned r, unsigned k, const MobiusTable& table) {
  return require_integral(umbral_value(x, r, k, table), "umbral_eval");
}

BigInt combinatorial_count(std::uint64_t x, unsigned r, unsigned k) {
  if (r < 1 || k < 1) throw InvalidArgument("combinatorial_count: needs r >= 1 and k >= 1");
  // jordan_table[j][n] = J_j^r(n)
  std::vector<std::vector<BigInt>> jordan_table(k, std::vector<BigInt>(x + 1));
  for (unsigned j = 0; j < k; ++j) {
    for (std::uint64_t n = 1; n <= x; ++n) jordan_table[j][n] = jordan(n, TotientParams{r, j});
  }
  BigInt total = 0;
  for (unsigned i = 0; i < k; ++i) {
    const unsigned nonzero = k - i;
    BigInt positive = 0;  // nonzero-coordinate tuples in [1, x]^nonzero that are relatively r-prime
    for (std::uint64_t n = 1; n <= x; ++n) {
      for (unsigned j = 0; j < nonzero; ++j) {
        const BigInt term = binomial(nonzero, j) * jordan_table[j][n];
        if ((nonzero - 1 - j) % 2 == 0) positive += term; else positive -= term;
      }
    }
    total += binomial(k, i) * (BigInt(1) << nonzero) * positive;
  }
  return total;
}

IdentityVerdict identity_check(unsigned r, unsigned k, std::uint64_t x, const MobiusTable& table,
                               std::uint64_t oracle_budget) {
  IdentityVerdict v;
  v.umbral = umbral_eval(x, r, k, table);
  const CountParams params{r, k, x};
  v.fast = count_fast(params, table);
  v.equal = v.umbral == v.fast;
  std::uint64_t tuples = 0;
  if (oracle_budget > 0 && checked_pow(2 * x + 1, k, tuples) && tuples <= oracle_budget) {
    v.oracle = count_oracle(params, oracle_budget);
    v.equal = v.equal && *v.oracle == v.fast;
  }
  if (!v.equal) v.combinatorial = combinatorial_count(x, r, k);
  return v;
}

}  // namespace rfree
