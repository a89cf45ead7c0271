#include "hlirred/interval.hpp"

#include <algorithm>
#include <array>
#include <memory>

#include "hlirred/errors.hpp"

namespace hlirred {

std::string Real::to_string(int digits, mpfr_rnd_t rnd) const {
  char* raw = nullptr;
  std::string fmt = "%." + std::to_string(digits) + "R*g";
  mpfr_asprintf(&raw, fmt.c_str(), rnd, v_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

Interval Interval::exact(long value, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), value, MPFR_RNDU);
  return r;
}

Interval Interval::exact_u(std::uint64_t value, mpfr_prec_t prec) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  Interval r(prec);
  mpfr_set_ui(r.lo_.get(), value, MPFR_RNDD);
  mpfr_set_ui(r.hi_.get(), value, MPFR_RNDU);
  return r;
}

Interval Interval::exact(const mpz_class& value, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), value.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::exact(const mpq_class& value, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), value.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::decimal(std::string_view literal, mpfr_prec_t prec) {
  std::string s(literal);
  Interval r(prec);
  if (mpfr_set_str(r.lo_.get(), s.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_.get(), s.c_str(), 10, MPFR_RNDU) != 0) {
    throw InvalidArgument("not a decimal literal: " + s);
  }
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::e(mpfr_prec_t prec) { return exp(exact(1, prec)); }

bool Interval::contains(const mpz_class& value) const {
  return mpfr_cmp_z(lo_.get(), value.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_.get(), value.get_mpz_t()) >= 0;
}

Real Interval::width() const {
  Real w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.precision());
  mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Interval r(prec);
  Real t(prec);
  bool first = true;
  for (const Real* x : {&a.lo_, &a.hi_}) {
    for (const Real* y : {&b.lo_, &b.hi_}) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0) {
    throw DomainError("interval division by an interval containing zero");
  }
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Interval r(prec);
  Real t(prec);
  bool first = true;
  for (const Real* x : {&a.lo_, &a.hi_}) {
    for (const Real* y : {&b.lo_, &b.hi_}) {
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_.get()) <= 0) throw DomainError("log of a non-positive interval");
  Interval r(x.precision());
  mpfr_log(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r(x.precision());
  mpfr_exp(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo_.get()) < 0) throw DomainError("sqrt of a negative interval");
  Interval r(x.precision());
  mpfr_sqrt(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return r;
}

Interval rootn(const Interval& x, unsigned long n) {
  if (n == 0) throw DomainError("zeroth root");
  if (mpfr_sgn(x.lo_.get()) < 0) throw DomainError("root of a negative interval");
  Interval r(x.precision());
  mpfr_rootn_ui(r.lo_.get(), x.lo_.get(), n, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_.get(), x.hi_.get(), n, MPFR_RNDU);
  return r;
}

bool certainly_less(const Interval& a, const Interval& b) {
  return mpfr_less_p(a.upper().get(), b.lower().get()) != 0;
}

bool certainly_less_equal(const Interval& a, const Interval& b) {
  return mpfr_lessequal_p(a.upper().get(), b.lower().get()) != 0;
}

}  // namespace hlirred
