#include <doctest.h>

#include <cmath>

#include "hlirred/errors.hpp"
#include "hlirred/interval.hpp"
#include "oracles.hpp"

using namespace hlirred;

TEST_SUITE("interval") {

TEST_CASE("exact values are degenerate intervals") {
  const Interval a = Interval::exact(7);
  CHECK(a.lower_double() == 7.0);
  CHECK(a.upper_double() == 7.0);
  CHECK(a.contains(mpz_class(7)));
  CHECK_FALSE(a.contains(mpz_class(8)));
  const Interval big = Interval::exact_u(UINT64_MAX);
  CHECK(big.contains(mpz_class("18446744073709551615")));
}

TEST_CASE("decimal literals are enclosed, not rounded") {
  const Interval c = Interval::decimal("1.798158");
  CHECK(c.lower_double() <= 1.798158);
  CHECK(c.upper_double() >= 1.798158);
  CHECK(mpfr_cmp(c.lower().get(), c.upper().get()) < 0);  // not representable in binary
  CHECK_THROWS_AS(Interval::decimal("1.2.3"), InvalidArgument);
}

TEST_CASE("constants bracket their double approximations") {
  CHECK(Interval::pi().lower_double() <= M_PI);
  CHECK(Interval::pi().upper_double() >= M_PI);
  CHECK(Interval::e().lower_double() <= M_E);
  CHECK(Interval::e().upper_double() >= M_E);
}

TEST_CASE("arithmetic encloses exact rational results") {
  const Interval third = Interval::exact(1) / Interval::exact(3);
  const Interval x = third * Interval::exact(3) - Interval::exact(1);
  CHECK(x.lower_double() <= 0.0);
  CHECK(x.upper_double() >= 0.0);
  CHECK(x.width().to_double(MPFR_RNDU) < 1e-30);
  CHECK_THROWS_AS(Interval::exact(1) / (Interval::exact(1) - third * Interval::exact(3)), DomainError);
}

TEST_CASE("elementary functions bracket libm values") {
  oracle::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const long v = g.integer(1, 1000000);
    const Interval x = Interval::exact(v);
    CHECK(log(x).lower_double() <= std::log(double(v)) * (1 + 1e-15));
    CHECK(log(x).upper_double() >= std::log(double(v)) * (1 - 1e-15));
    CHECK(sqrt(x).lower_double() <= std::sqrt(double(v)) * (1 + 1e-15));
    CHECK(sqrt(x).upper_double() >= std::sqrt(double(v)) * (1 - 1e-15));
  }
  CHECK_THROWS_AS(log(Interval::exact(0)), DomainError);
  CHECK_THROWS_AS(sqrt(Interval::exact(-1)), DomainError);
}

TEST_CASE("rootn of a perfect power contains the root") {
  const Interval r = rootn(Interval::exact(mpz_class("1000000000000000000000")), 7);
  CHECK(r.contains(mpz_class(1000)));
}

TEST_CASE("certified comparisons") {
  const Interval a = Interval::exact(2);
  const Interval b = sqrt(Interval::exact(5));
  CHECK(certainly_less(a, b));
  CHECK_FALSE(certainly_less(b, a));
  CHECK(certainly_less_equal(a, a));
  CHECK_FALSE(certainly_less(a, a));
}

}  // TEST_SUITE
