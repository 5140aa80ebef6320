#include "rfree/real.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rfree {

namespace {

constexpr mpfr_prec_t kRadBits = 64;

mpfr_prec_t bit_length(const BigInt& x) {
  return static_cast<mpfr_prec_t>(std::max<std::size_t>(mpz_sizeinbase(x.get_mpz_t(), 2), 2));
}

}  // namespace

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_fixed(int fraction_digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", fraction_digits, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Real::to_scientific(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real Real::from_string(const std::string& text, mpfr_prec_t bits) {
  Real out(bits);
  if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw InvalidArgument("not a decimal number: '" + text + "'");
  }
  return out;
}

Ball::Ball(mpfr_prec_t bits) : mid_(bits), rad_(kRadBits) {}

void Ball::add_rounding_error(int inexact) {
  if (inexact == 0 || !mpfr_regular_p(mid_.get())) return;
  // Round-to-nearest is off by at most half an ulp; charge a whole one.
  Real ulp(kRadBits);
  mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid_.get()) - mid_.precision(), MPFR_RNDU);
  mpfr_add(rad_.get(), rad_.get(), ulp.get(), MPFR_RNDU);
}

Ball Ball::exact(const BigInt& value, mpfr_prec_t bits) {
  Ball out(bits);
  out.add_rounding_error(mpfr_set_z(out.mid_.get(), value.get_mpz_t(), MPFR_RNDN));
  return out;
}

Ball Ball::exact(const BigRational& value, mpfr_prec_t bits) {
  Ball out(bits);
  out.add_rounding_error(mpfr_set_q(out.mid_.get(), value.get_mpq_t(), MPFR_RNDN));
  return out;
}

Ball Ball::from_mid_rad(Real mid, Real rad) {
  Ball out(mid.precision());
  out.mid_ = std::move(mid);
  mpfr_set(out.rad_.get(), rad.get(), MPFR_RNDU);
  mpfr_abs(out.rad_.get(), out.rad_.get(), MPFR_RNDU);
  return out;
}

Ball Ball::root(const BigInt& x, unsigned r, mpfr_prec_t bits) {
  if (sgn(x) < 0 || r == 0) throw InvalidArgument("Ball::root: needs x >= 0 and r >= 1");
  Real exact_x(bit_length(x));
  mpfr_set_z(exact_x.get(), x.get_mpz_t(), MPFR_RNDN);
  Ball out(bits);
  out.add_rounding_error(mpfr_rootn_ui(out.mid_.get(), exact_x.get(), r, MPFR_RNDN));
  return out;
}

Ball Ball::log(const BigInt& x, mpfr_prec_t bits) {
  if (sgn(x) <= 0) throw InvalidArgument("Ball::log: needs x > 0");
  Real exact_x(bit_length(x));
  mpfr_set_z(exact_x.get(), x.get_mpz_t(), MPFR_RNDN);
  Ball out(bits);
  out.add_rounding_error(mpfr_log(out.mid_.get(), exact_x.get(), MPFR_RNDN));
  return out;
}

Ball Ball::pi(mpfr_prec_t bits) {
  Ball out(bits);
  out.add_rounding_error(mpfr_const_pi(out.mid_.get(), MPFR_RNDN));
  return out;
}

Ball Ball::operator+(const Ball& other) const {
  Ball out(std::max(precision(), other.precision()));
  const int inexact = mpfr_add(out.mid_.get(), mid_.get(), other.mid_.get(), MPFR_RNDN);
  mpfr_add(out.rad_.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
  out.add_rounding_error(inexact);
  return out;
}

Ball Ball::operator-(const Ball& other) const {
  Ball out(std::max(precision(), other.precision()));
  const int inexact = mpfr_sub(out.mid_.get(), mid_.get(), other.mid_.get(), MPFR_RNDN);
  mpfr_add(out.rad_.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
  out.add_rounding_error(inexact);
  return out;
}

Ball Ball::operator-() const {
  Ball out(*this);
  mpfr_neg(out.mid_.get(), out.mid_.get(), MPFR_RNDN);
  return out;
}

Ball Ball::operator*(const Ball& other) const {
  Ball out(std::max(precision(), other.precision()));
  const int inexact = mpfr_mul(out.mid_.get(), mid_.get(), other.mid_.get(), MPFR_RNDN);

  Real a(kRadBits), b(kRadBits), t(kRadBits);
  mpfr_abs(a.get(), mid_.get(), MPFR_RNDU);
  mpfr_abs(b.get(), other.mid_.get(), MPFR_RNDU);
  mpfr_mul(out.rad_.get(), a.get(), other.rad_.get(), MPFR_RNDU);
  mpfr_mul(t.get(), b.get(), rad_.get(), MPFR_RNDU);
  mpfr_add(out.rad_.get(), out.rad_.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
  mpfr_add(out.rad_.get(), out.rad_.get(), t.get(), MPFR_RNDU);
  out.add_rounding_error(inexact);
  return out;
}

Ball Ball::operator/(const Ball& other) const {
  Real b_low(kRadBits);
  mpfr_abs(b_low.get(), other.mid_.get(), MPFR_RNDD);
  mpfr_sub(b_low.get(), b_low.get(), other.rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(b_low.get()) <= 0) {
    throw InvalidArgument("Ball division: divisor enclosure contains zero");
  }
  Ball out(std::max(precision(), other.precision()));
  const int inexact = mpfr_div(out.mid_.get(), mid_.get(), other.mid_.get(), MPFR_RNDN);

  // |a/b - am/bm| <= (|am| br + |bm| ar) / (|bm| (|bm| - br))
  Real a(kRadBits), b_up(kRadBits), b_down(kRadBits), num(kRadBits), t(kRadBits), den(kRadBits);
  mpfr_abs(a.get(), mid_.get(), MPFR_RNDU);
  mpfr_abs(b_up.get(), other.mid_.get(), MPFR_RNDU);
  mpfr_abs(b_down.get(), other.mid_.get(), MPFR_RNDD);
  mpfr_mul(num.get(), a.get(), other.rad_.get(), MPFR_RNDU);
  mpfr_mul(t.get(), b_up.get(), rad_.get(), MPFR_RNDU);
  mpfr_add(num.get(), num.get(), t.get(), MPFR_RNDU);
  mpfr_mul(den.get(), b_down.get(), b_low.get(), MPFR_RNDD);
  mpfr_div(out.rad_.get(), num.get(), den.get(), MPFR_RNDU);
  out.add_rounding_error(inexact);
  return out;
}

Ball Ball::abs() const {
  Ball out(*this);
  mpfr_abs(out.mid_.get(), out.mid_.get(), MPFR_RNDN);
  return out;
}

Ball& Ball::widen(const BigRational& extra) {
  Real e(kRadBits);
  mpfr_set_q(e.get(), extra.get_mpq_t(), MPFR_RNDU);
  mpfr_abs(e.get(), e.get(), MPFR_RNDU);
  mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
  return *this;
}

Real Ball::lower() const {
  Real out(precision());
  mpfr_sub(out.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return out;
}

Real Ball::upper() const {
  Real out(precision());
  mpfr_add(out.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return out;
}

bool Ball::contains(const BigRational& q) const {
  return mpfr_cmp_q(lower().get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(upper().get(), q.get_mpq_t()) >= 0;
}

bool Ball::contains_zero() const { return contains(BigRational(0)); }

bool Ball::overlaps(const Ball& other) const {
  return mpfr_lessequal_p(lower().get(), other.upper().get()) &&
         mpfr_lessequal_p(other.lower().get(), upper().get());
}

bool Ball::certainly_less(const BigRational& q) const {
  return mpfr_cmp_q(upper().get(), q.get_mpq_t()) < 0;
}

bool Ball::certainly_greater(const BigRational& q) const {
  return mpfr_cmp_q(lower().get(), q.get_mpq_t()) > 0;
}

mpfr_prec_t working_bits(int digits, std::size_t magnitude_bits) {
  const auto fraction_bits = static_cast<mpfr_prec_t>(std::ceil(std::max(digits, 1) * 3.3219280948873623));
  return fraction_bits + static_cast<mpfr_prec_t>(magnitude_bits) + 64;
}

int digits_for_tolerance(double tolerance) {
  if (!(tolerance > 0.0)) throw InvalidArgument("precision must be positive");
  return std::max(1, static_cast<int>(std::ceil(-std::log10(tolerance) - 1e-12)));
}

}  // namespace rfree
