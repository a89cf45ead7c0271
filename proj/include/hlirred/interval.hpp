// Closed intervals of MPFR floats with outward (directed) rounding.
//
// Every operation returns an interval guaranteed to contain the exact real
// result of applying the operation to any points of the operands. A verdict
// such as `certainly_less(a, b)` is therefore a proof about the underlying
// reals, not about their floating-point approximations.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hlirred {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Owning handle for a single mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrecision) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }
  /// Decimal rendering with `digits` significant digits, rounded per `rnd`.
  std::string to_string(int digits, mpfr_rnd_t rnd) const;

 private:
  mpfr_t v_;
};

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrecision) : lo_(prec), hi_(prec) {}

  static Interval exact(long value, mpfr_prec_t prec = kDefaultPrecision);
  static Interval exact_u(std::uint64_t value, mpfr_prec_t prec = kDefaultPrecision);
  static Interval exact(const mpz_class& value, mpfr_prec_t prec = kDefaultPrecision);
  static Interval exact(const mpq_class& value, mpfr_prec_t prec = kDefaultPrecision);
  /// Encloses a decimal literal such as "1.798158".
  static Interval decimal(std::string_view literal, mpfr_prec_t prec = kDefaultPrecision);
  static Interval pi(mpfr_prec_t prec = kDefaultPrecision);
  static Interval e(mpfr_prec_t prec = kDefaultPrecision);

  const Real& lower() const { return lo_; }
  const Real& upper() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  double lower_double() const { return lo_.to_double(MPFR_RNDD); }
  double upper_double() const { return hi_.to_double(MPFR_RNDU); }

  bool contains(const mpz_class& value) const;
  bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  /// Width hi - lo, rounded up.
  Real width() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws DomainError when the divisor straddles zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

 private:
  friend Interval log(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval sqrt(const Interval& x);
  friend Interval rootn(const Interval& x, unsigned long n);

  Real lo_;
  Real hi_;
};

/// Natural log; the interval must be strictly positive.
Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval sqrt(const Interval& x);
/// n-th root of a nonnegative interval.
Interval rootn(const Interval& x, unsigned long n);

/// True when every point of `a` is strictly below every point of `b`.
bool certainly_less(const Interval& a, const Interval& b);
/// True when every point of `a` is <= every point of `b`.
bool certainly_less_equal(const Interval& a, const Interval& b);

}  // namespace hlirred
