#include "hlirred/bounds.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hlirred/ap_products.hpp"
#include "hlirred/errors.hpp"

namespace hlirred {

namespace {

const char* const kDusartConstant = "1.2762";

std::vector<std::uint64_t> first_primes(std::uint64_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; out.size() < count; ++n) {
    bool prime = true;
    for (std::uint64_t p : out) {
      if (p * p > n) break;
      if (n % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(n);
  }
  return out;
}

mpz_class factorial(std::uint64_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class pow_ui(std::uint64_t base, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace

std::uint64_t h_p(std::uint64_t p, std::uint64_t k, std::uint64_t t0) {
  if (p < 2 || k < 2 || t0 < 1) throw InvalidArgument("h_p needs p >= 2, k >= 2, t0 >= 1");
  const std::uint64_t n = k - 1;
  if (t0 >= n / p) return 0;
  // floor(n / p^h) is nonincreasing in h and reaches 0, so the last h with
  // floor(n / p^h) > t0 is the unique solution.
  std::uint64_t h = 1;
  std::uint64_t ph = p;
  while (n / ph / p > t0) {
    ph *= p;
    ++h;
  }
  return h;
}

std::int64_t L0(std::uint64_t p, std::uint64_t k, std::uint64_t t0, std::uint64_t d) {
  if (d % p == 0) return -static_cast<std::int64_t>(ord_p_factorial(p, k - 1));
  const std::uint64_t h = h_p(p, k, t0);
  std::int64_t sum = 0;
  std::uint64_t pu = 1;
  for (std::uint64_t u = 1; u <= h; ++u) {
    pu *= p;
    sum += static_cast<std::int64_t>((k - 1) / pu);
  }
  const std::int64_t candidate = static_cast<std::int64_t>(h * t0) - sum;
  return candidate < 0 ? candidate : 0;
}

LBoundResult L_bound(const LBoundInput& input, mpfr_prec_t prec) {
  const std::int64_t t0 = input.t0();
  if (t0 <= 0) throw InvalidT0("L_bound needs t0 = k - t >= 1, got " + std::to_string(t0));
  if (input.k < 2) throw InvalidArgument("L_bound needs k >= 2");
  if (input.prime_cut_index < 1) throw InvalidArgument("L_bound needs prime_cut_index >= 1");

  LBoundResult result;
  mpz_class denominator = 1;
  for (std::uint64_t p : first_primes(input.prime_cut_index)) {
    const std::uint64_t h = input.d % p == 0 ? 0 : h_p(p, input.k, static_cast<std::uint64_t>(t0));
    const std::int64_t l0 = L0(p, input.k, static_cast<std::uint64_t>(t0), input.d);
    result.per_prime_L0[p] = l0;
    result.h_p_used[p] = h;
    denominator *= pow_ui(p, static_cast<std::uint64_t>(-l0));
  }
  const mpz_class fact = factorial(input.k - 1);
  if (!mpz_divisible_p(fact.get_mpz_t(), denominator.get_mpz_t())) {
    throw Error("L_bound: prime-power correction does not divide (k-1)!");
  }
  result.radicand = fact / denominator;
  result.value = rootn(Interval::exact(result.radicand, prec), static_cast<unsigned long>(t0));
  mpz_root(result.floor_bound.get_mpz_t(), result.radicand.get_mpz_t(), static_cast<unsigned long>(t0));
  return result;
}

mpz_class e0_bound(std::uint64_t k, std::uint64_t d) {
  if (k < 2) throw InvalidArgument("e0_bound needs k >= 2");
  mpz_class value = factorial(k - 1);
  std::uint64_t rest = d;
  for (std::uint64_t p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    value /= pow_ui(p, ord_p_factorial(p, k - 1));
  }
  return value;
}

Interval dusart_pi_upper(const Interval& nu) {
  if (!certainly_less(Interval::exact(1, nu.precision()), nu)) throw DomainError("dusart_pi_upper needs nu > 1");
  const Interval lg = log(nu);
  const Interval one = Interval::exact(1, nu.precision());
  return nu / lg * (one + Interval::decimal(kDusartConstant, nu.precision()) / lg);
}

Interval dusart_pi_upper(std::uint64_t nu) {
  if (nu <= 1) throw DomainError("dusart_pi_upper needs nu > 1");
  return dusart_pi_upper(Interval::exact_u(nu));
}

std::optional<std::uint64_t> dusart_first_failure(std::span<const std::uint64_t> primes, std::uint64_t nu_max) {
  // Double evaluation with a 1e-12 relative slack (far above the few-ulp error
  // of log and the arithmetic); anything inside the slack is re-checked with
  // the certified interval evaluation.
  constexpr double kSlack = 1e-12;
  const double c = 1.2762;
  std::size_t count = 0;
  for (std::uint64_t nu = 2; nu <= nu_max; ++nu) {
    while (count < primes.size() && primes[count] <= nu) ++count;
    const double x = static_cast<double>(nu);
    const double lg = std::log(x);
    const double bound = x / lg * (1.0 + c / lg);
    if (bound * (1.0 - kSlack) >= static_cast<double>(count)) continue;
    const Interval exact = dusart_pi_upper(nu);
    if (!certainly_less_equal(Interval::exact_u(count), exact)) return nu;
  }
  return std::nullopt;
}

Interval ord_factorial_lower(std::uint64_t p, std::uint64_t k, mpfr_prec_t prec) {
  if (k < 2 || p < 2) throw InvalidArgument("ord_factorial_lower needs k >= 2 and a prime p");
  const Interval first = (Interval::exact(static_cast<long>(k) - static_cast<long>(p), prec)) /
                         Interval::exact_u(p - 1, prec);
  if (k == 2) return first;  // log(1) = 0
  return first - log(Interval::exact_u(k - 1, prec)) / log(Interval::exact_u(p, prec));
}

std::pair<Interval, Interval> stirling_bounds(std::uint64_t k, mpfr_prec_t prec) {
  if (k < 1) throw InvalidArgument("stirling_bounds needs k >= 1");
  const Interval kk = Interval::exact_u(k, prec);
  const Interval one = Interval::exact(1, prec);
  const Interval two = Interval::exact(2, prec);
  // log of sqrt(2 pi k) e^{-k} k^k
  const Interval base = log(two * Interval::pi(prec) * kk) / two - kk + kk * log(kk);
  const Interval lower = exp(base + one / (Interval::exact(12, prec) * kk + one));
  const Interval upper = exp(base + one / (Interval::exact(12, prec) * kk));
  return {lower, upper};
}

ContradictionSides large_k_sides(std::uint64_t k, std::uint64_t v0, mpfr_prec_t prec) {
  if (k < 2 || v0 < 1) throw InvalidArgument("large_k_sides needs k >= 2 and v0 >= 1");
  const Interval v = Interval::exact_u(v0, prec);
  const Interval four_k = Interval::exact_u(4 * k, prec);
  const Interval one = Interval::exact(1, prec);
  const Interval x = log(four_k);
  ContradictionSides sides;
  sides.lhs = log(v * Interval::exact(8, prec) * Interval::e(prec));
  sides.rhs = Interval::exact(4, prec) * log(v * four_k) / x *
              (one + Interval::decimal(kDusartConstant, prec) / x);
  return sides;
}

bool large_k_contradiction(std::uint64_t k, std::uint64_t v0, mpfr_prec_t prec) {
  const ContradictionSides s = large_k_sides(k, v0, prec);
  return certainly_less_equal(s.rhs, s.lhs);
}

bool large_k_rhs_decreasing(std::uint64_t v0) {
  // RHS = 4 (1 + a/x)(1 + c/x), a = log v0, c = 1.2762, x = log 4k > 0; both
  // factors are positive and nonincreasing in x when a >= 0 and c > 0.
  return v0 >= 1 && Interval::decimal(kDusartConstant).is_positive();
}

bool corollary_threshold_check(std::uint64_t v0) {
  const Interval rhs = Interval::exact(1000) / (Interval::exact(4) * Interval::decimal("1.798158")) -
                       Interval::exact(1) / Interval::exact(2);
  return certainly_less(Interval::exact_u(v0), rhs);
}

}  // namespace hlirred
