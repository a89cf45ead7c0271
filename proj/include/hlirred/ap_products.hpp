// Exact arithmetic on windows m(m+d)...(m+(k-1)d) of an arithmetic progression.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hlirred/prime_table.hpp"

namespace hlirred {

/// Progression parameters q = alpha/d with 1 <= alpha < d and gcd(alpha, d) = 1.
struct APSpec {
  std::uint64_t alpha = 1;
  std::uint64_t d = 4;

  /// Validating constructor; throws InvalidArgument.
  static APSpec make(std::uint64_t alpha, std::uint64_t d);
  /// alpha + i*d, the (i+1)-th term of the progression.
  std::uint64_t term(std::uint64_t i) const { return alpha + i * d; }
};

/// The k terms m, m+d, ..., m+(k-1)d. Every term must fit below 2^63.
struct ProductWindow {
  std::uint64_t m = 1;
  std::uint64_t d = 4;
  std::uint64_t k = 1;

  static ProductWindow make(std::uint64_t m, std::uint64_t d, std::uint64_t k);
  std::uint64_t term(std::uint64_t i) const { return m + i * d; }
  std::uint64_t last_term() const { return m + (k - 1) * d; }
};

struct FactoredProduct {
  ProductWindow window;
  std::map<std::uint64_t, std::uint64_t> factors;  // prime -> exponent
  std::size_t omega = 0;
  std::uint64_t max_prime = 1;  // P(1) = 1

  mpz_class value() const;
};

/// One prime-power factor of a single window term.
struct TermFactor {
  std::uint64_t index;  // term index i in [0, k)
  std::uint64_t prime;
  std::uint64_t exponent;
};

/// Factorizes every term of the window by sieving the window with the
/// table's primes up to sqrt(last term); leftover cofactors are prime.
/// Entries are grouped by prime in ascending order.
std::vector<TermFactor> factor_terms(const ProductWindow& w, const PrimeTable& table);

mpz_class window_value(const ProductWindow& w);
FactoredProduct factor_window(const ProductWindow& w, const PrimeTable& table);
/// omega(Delta(m, d, k)) without building the exponent map.
std::size_t window_omega(const ProductWindow& w, const PrimeTable& table);

/// Sum over terms of ord_p(term); 0 when p | d.
std::uint64_t ord_p_window(const ProductWindow& w, std::uint64_t p);

/// Trial-division factorization of a single value with the table's primes.
/// Throws TableTooSmall when the table does not reach sqrt(x).
std::vector<std::pair<std::uint64_t, std::uint64_t>> factor_u64(std::uint64_t x, const PrimeTable& table);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t x);

/// ord_p(n!) by Legendre's formula.
std::uint64_t ord_p_factorial(std::uint64_t p, std::uint64_t n);

struct DeletionSet {
  ProductWindow window;
  std::vector<std::uint64_t> retained_indices;  // ascending
  std::uint64_t t0 = 0;                         // retained count, >= k - omega
  std::size_t omega = 0;
  mpz_class frak_p;                             // product of retained terms
};

/// For each prime dividing the window (ascending), deletes the smallest-index
/// term of maximal p-adic valuation unless such a term is already deleted.
/// Throws EmptyRetained when omega >= k.
DeletionSet build_deletion_set(const ProductWindow& w, const PrimeTable& table);

}  // namespace hlirred
