// Independent ground truth for small instances: builds G exactly and bounds
// its possible factor degrees from factorizations modulo several primes.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hlirred/ap_products.hpp"

namespace hlirred {

/// Dense polynomial with arbitrary-precision integer coefficients, stored in
/// ascending degree order with no trailing zeros.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> ascending);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; throws InvalidArgument for the zero polynomial.
  std::size_t degree() const;
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& coeff(std::size_t i) const { return coeffs_.at(i); }
  const mpz_class& leading() const;

  mpz_class content() const;
  /// Divides out the content and makes the leading coefficient positive.
  IntPolynomial primitive() const;
  mpq_class evaluate(const mpq_class& x) const;
  std::string to_string() const;

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<mpz_class> coeffs_;
};

/// Integers a_0 .. a_n with a_0 a_n != 0 and |a_0 a_n| a power of two.
struct CoefficientProfile {
  std::vector<mpz_class> a;

  static CoefficientProfile make(std::vector<mpz_class> a);
  static CoefficientProfile ones(std::size_t n);
};

/// a_i uniform in [-5, 5], a_0 and a_n drawn from {+-1, +-2, +-4}.
CoefficientProfile random_profile(std::size_t n, std::mt19937_64& rng);

/// Coefficient of x^j is a_j * prod_{i=j}^{n-1} (alpha + i d).
IntPolynomial build_G(const APSpec& spec, std::size_t n, const CoefficientProfile& profile);

/// Degrees (with multiplicity, ascending) of the irreducible factors of f
/// modulo p. Throws LeadingVanishes when p divides the leading coefficient.
std::vector<std::size_t> mod_p_degree_multiset(const IntPolynomial& f, std::uint64_t p);

/// Distinct rational roots of f, or nothing when no prime below the search
/// cap gives a square-free reduction.
std::optional<std::vector<mpq_class>> rational_roots(const IntPolynomial& f);

enum class LinearEvidence {
  NotChecked,   // rational-root test not requested
  Excluded,     // no rational root; degrees 1 and n-1 removed
  RationalRoot, // a rational root exists
  Unresolved,   // test requested but no usable prime found
};

struct DegreeSet {
  std::size_t n = 0;
  std::set<std::size_t> possible;
  LinearEvidence linear = LinearEvidence::NotChecked;

  bool contains(std::size_t d) const { return possible.count(d) != 0; }
  bool complement_closed() const;
};

/// Sound over-approximation of the degrees of factors of f over the integers:
/// the intersection over p of the subset sums of the mod-p degree multisets,
/// refined by the exact rational-root test when requested.
DegreeSet certify_degree_set(const IntPolynomial& f, std::span<const std::uint64_t> primes,
                             bool rational_root_check);

/// The `budget` smallest odd primes not dividing d or the leading coefficient
/// for which f reduces to a square-free polynomial.
std::vector<std::uint64_t> default_oracle_primes(const IntPolynomial& f, std::uint64_t d,
                                                 std::size_t budget = 12);

enum class Verdict { Pass, Inconclusive, Fail };

std::string verdict_name(Verdict v);

struct OracleResult {
  Verdict verdict = Verdict::Inconclusive;
  DegreeSet degrees;
  std::vector<std::uint64_t> primes;
  std::vector<mpq_class> roots;
  std::optional<IntPolynomial> forbidden_factor;  // present only on Fail
};

/// PASS when the certified degrees lie in {0, 1, n-1, n} (for n = 3: when the
/// rational roots are known and at most one); FAIL only with an
/// exhibited factor (two distinct rational roots for n >= 3); otherwise
/// INCONCLUSIVE. An empty `primes` selects default_oracle_primes.
OracleResult check_instance(const APSpec& spec, std::size_t n, const CoefficientProfile& profile,
                            std::span<const std::uint64_t> primes = {});

}  // namespace hlirred
