#pragma once

#include <string>

#include "rfree/arith.hpp"  // gmp.h must precede mpfr.h

#include <mpfr.h>

namespace rfree {

/// Owning MPFR value. Copies and assignments carry the source precision.
class Real {
public:
  explicit Real(mpfr_prec_t bits = 64);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Fixed-point rendering with `fraction_digits` digits after the point.
  std::string to_fixed(int fraction_digits) const;
  /// Scientific rendering with `digits` significant digits.
  std::string to_scientific(int digits) const;

  static Real from_string(const std::string& text, mpfr_prec_t bits);

private:
  mpfr_t value_;
};

/// Midpoint-radius enclosure: the represented quantity lies in [mid - rad, mid + rad].
/// Every operation rounds the midpoint to nearest and folds a full ulp into the radius,
/// so enclosures stay rigorous through arbitrary chains of arithmetic.
class Ball {
public:
  Ball() : Ball(128) {}
  explicit Ball(mpfr_prec_t bits);

  static Ball exact(const BigInt& value, mpfr_prec_t bits);
  static Ball exact(const BigRational& value, mpfr_prec_t bits);
  static Ball from_mid_rad(Real mid, Real rad);

  /// x^(1/r) for a nonnegative integer x.
  static Ball root(const BigInt& x, unsigned r, mpfr_prec_t bits);
  /// Natural log of a positive integer.
  static Ball log(const BigInt& x, mpfr_prec_t bits);
  static Ball pi(mpfr_prec_t bits);

  const Real& mid() const noexcept { return mid_; }
  const Real& rad() const noexcept { return rad_; }
  mpfr_prec_t precision() const noexcept { return mid_.precision(); }

  Ball operator+(const Ball& other) const;
  Ball operator-(const Ball& other) const;
  Ball operator*(const Ball& other) const;
  /// Throws InvalidArgument when the divisor enclosure contains zero.
  Ball operator/(const Ball& other) const;
  Ball operator-() const;
  Ball& operator+=(const Ball& other) { return *this = *this + other; }
  Ball& operator-=(const Ball& other) { return *this = *this - other; }

  Ball abs() const;

  /// Grows the radius by a nonnegative exact amount.
  Ball& widen(const BigRational& extra);

  /// Rigorous lower/upper endpoints (directed rounding).
  Real lower() const;
  Real upper() const;

  bool contains(const BigRational& q) const;
  bool contains_zero() const;
  bool overlaps(const Ball& other) const;
  /// True when every point of the enclosure is strictly below q.
  bool certainly_less(const BigRational& q) const;
  bool certainly_greater(const BigRational& q) const;

  double mid_double() const { return mid_.to_double(); }
  double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

private:
  void add_rounding_error(int inexact);

  Real mid_;
  Real rad_;
};

/// Bits needed to carry `digits` decimal digits plus `magnitude_bits` of integer part and guard bits.
mpfr_prec_t working_bits(int digits, std::size_t magnitude_bits = 0);

/// Decimal digit count implied by an absolute tolerance such as 1e-30.
int digits_for_tolerance(double tolerance);

}  // namespace rfree
