// Explicit analytic estimates: the omega-capped upper bound L(k, l) on the
// first term of a window, Dusart / Legendre / Robbins estimates, and the
// large-k closing inequality. Every transcendental quantity is an Interval so
// each boolean verdict below is certified.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>

#include "hlirred/interval.hpp"

namespace hlirred {

struct LBoundInput {
  std::uint64_t k = 2;
  std::uint64_t t = 0;                // assumed cap on omega(Delta(m, d, k))
  std::uint64_t prime_cut_index = 4;  // l: primes p_1..p_l enter the product
  std::uint64_t d = 4;

  std::int64_t t0() const { return static_cast<std::int64_t>(k) - static_cast<std::int64_t>(t); }
};

struct LBoundResult {
  Interval value;                             // encloses L(k, l)
  mpz_class radicand;                         // (k-1)! * prod p^{L0(p)}, an integer
  mpz_class floor_bound;                      // floor(L(k, l)), exact
  std::map<std::uint64_t, std::int64_t> per_prime_L0;
  std::map<std::uint64_t, std::uint64_t> h_p_used;
};

/// The h > 0 with floor((k-1)/p^(h+1)) <= t0 < floor((k-1)/p^h), or 0 when
/// t0 >= floor((k-1)/p).
std::uint64_t h_p(std::uint64_t p, std::uint64_t k, std::uint64_t t0);

/// L0(p) for one prime: -ord_p((k-1)!) when p | d, otherwise
/// min(0, h_p t0 - sum_{u<=h_p} floor((k-1)/p^u)).
std::int64_t L0(std::uint64_t p, std::uint64_t k, std::uint64_t t0, std::uint64_t d);

/// L(k, l) = ((k-1)! prod_{p <= p_l} p^{L0(p)})^{1/t0}. Throws InvalidT0 when t0 <= 0.
LBoundResult L_bound(const LBoundInput& input, mpfr_prec_t prec = kDefaultPrecision);

/// (k-1)! with every prime-of-d part removed.
mpz_class e0_bound(std::uint64_t k, std::uint64_t d);

/// (nu / log nu)(1 + 1.2762 / log nu), the Dusart upper bound for pi(nu).
/// Throws DomainError for nu <= 1.
Interval dusart_pi_upper(const Interval& nu);
Interval dusart_pi_upper(std::uint64_t nu);

/// Compares the Dusart bound with exact pi(nu) for every integer 2 <= nu <=
/// nu_max, given the primes up to nu_max in ascending order. Returns the first
/// nu where the bound is not certified to hold.
std::optional<std::uint64_t> dusart_first_failure(std::span<const std::uint64_t> primes, std::uint64_t nu_max);

/// (k - p)/(p - 1) - log(k - 1)/log p, the lower estimate for ord_p((k-1)!).
Interval ord_factorial_lower(std::uint64_t p, std::uint64_t k, mpfr_prec_t prec = kDefaultPrecision);

/// Robbins: sqrt(2 pi k) (k/e)^k e^{1/(12k+1)} < k! < sqrt(2 pi k) (k/e)^k e^{1/(12k)}.
std::pair<Interval, Interval> stirling_bounds(std::uint64_t k, mpfr_prec_t prec = kDefaultPrecision);

struct ContradictionSides {
  Interval lhs;  // log(8 e v0)
  Interval rhs;  // 4 log(4 k v0) / log(4k) * (1 + 1.2762 / log(4k))
};

ContradictionSides large_k_sides(std::uint64_t k, std::uint64_t v0, mpfr_prec_t prec = kDefaultPrecision);

/// True iff log(8 e v0) >= RHS(k) is certified, i.e. the inequality that
/// would permit a degree-k factor fails.
bool large_k_contradiction(std::uint64_t k, std::uint64_t v0, mpfr_prec_t prec = kDefaultPrecision);

/// The right-hand side is 4 (1 + log(v0)/x)(1 + c/x) with x = log 4k, so it
/// decreases in k whenever log(v0) >= 0 and c > 0. Checks those signs.
bool large_k_rhs_decreasing(std::uint64_t v0);

/// True iff v0 < 10^3 / (4 * 1.798158) - 1/2, certified.
bool corollary_threshold_check(std::uint64_t v0);

}  // namespace hlirred
