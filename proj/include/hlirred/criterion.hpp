// Factor-degree exclusion for G(x) = (alpha)_n F(x/d).
//
// A prime p with p > d, p >= min(2k, d(d-1)), p dividing some
// alpha + (n-j)d (1 <= j <= k) and no alpha + (j-1)d (1 <= j <= k) rules out
// a factor of degree k. The engine searches for such primes, checks the
// slope condition ord_p(Delta_j) / j < 1/k numerically, and packages the
// result as a self-verifying certificate.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hlirred/ap_products.hpp"
#include "hlirred/bounds.hpp"
#include "hlirred/prime_table.hpp"

namespace hlirred {

struct LemmaTrace {
  std::uint64_t p = 0;
  std::uint64_t j0 = 0;  // minimal j with p | alpha + (j-1)d; 0 when p | d
  std::uint64_t l0 = 0;  // alpha + (j0-1)d = p * l0
  std::uint64_t worst_j = 1;
  std::uint64_t worst_phi_num = 0;  // max_j ord_p(Delta_j) / j as a fraction
  std::uint64_t worst_phi_den = 1;
};

struct CriterionWitness {
  std::uint64_t p = 0;
  LemmaTrace trace;
};

/// Largest prime satisfying the exclusion condition for (n, k), or nothing.
/// Requires 1 <= k <= n/2.
std::optional<CriterionWitness> find_criterion_prime(const APSpec& spec, std::uint64_t n, std::uint64_t k,
                                                     const PrimeTable& table);

struct PhiResult {
  bool holds = false;  // ord_p(Delta_j) * k < j for all 1 <= j <= n
  LemmaTrace trace;
};

/// Exact slope check over 1 <= j <= n. Throws PrecondViolated if p divides
/// alpha + (j-1)d for some j <= k.
PhiResult phi_check(const APSpec& spec, std::uint64_t n, std::uint64_t k, std::uint64_t p);

namespace rule {

struct CriterionPrime {
  std::uint64_t p = 0;
  LemmaTrace trace;
};

/// omega(Delta(m,4,k)) exceeds omega_1(k), which forces a qualifying prime.
struct OmegaGap {
  std::uint64_t p = 0;
  LemmaTrace trace;
  std::uint64_t omega = 0;
  std::uint64_t omega_1 = 0;
};

/// k <= 6 and the smooth scan (exhaustive up to scan_limit) shows the window
/// is not 4k-smooth.
struct SmallCaseEmpty {
  std::uint64_t scan_limit = 0;
};

struct LinearFactorAllowed {};

}  // namespace rule

using ExclusionRule = std::variant<rule::CriterionPrime, rule::OmegaGap, rule::SmallCaseEmpty, rule::LinearFactorAllowed>;

struct ExclusionCertificate {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  APSpec spec;
  ExclusionRule rule;
  bool verified_by_phi_oracle = false;

  /// First term alpha + d(n - k) of the tail window.
  std::uint64_t m() const { return spec.alpha + spec.d * (n - k); }
};

struct Undecided {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::string reason;
};

using ExclusionOutcome = std::variant<ExclusionCertificate, Undecided>;

std::string rule_name(const ExclusionRule& rule);

/// max over alpha in {1, 3} of omega(Delta(alpha, 4, k)).
std::uint64_t omega_1(std::uint64_t k, const PrimeTable& table);

/// Precomputed data shared by every exclusion run: omega_1(k) for k up to a
/// cap and the 4k-smooth windows for 2 <= k <= 6 up to the scan limit.
class ScanContext {
 public:
  static ScanContext build(const PrimeTable& table, std::uint64_t scan_limit, std::uint64_t k_max,
                           unsigned threads = 1);

  std::uint64_t scan_limit() const { return scan_limit_; }
  std::uint64_t k_max() const { return omega_1_.size() - 1; }
  /// Throws InvalidArgument above k_max().
  std::uint64_t omega_1(std::uint64_t k) const;
  /// m values with P(Delta(m, 4, k)) <= 4k, m > 4k, m <= scan_limit; 2 <= k <= 6.
  const std::vector<std::uint64_t>& smooth_hits(std::uint64_t k) const;
  bool is_smooth_hit(std::uint64_t k, std::uint64_t m) const;

 private:
  std::uint64_t scan_limit_ = 0;
  std::vector<std::uint64_t> omega_1_;
  std::array<std::vector<std::uint64_t>, 7> hits_;
};

/// Runs the exclusion pipeline for one (n, k): direct criterion prime, then
/// the omega-gap rule (k >= 7) or the smooth-scan exceptions (k <= 6). Any
/// certificate returned has passed recheck_certificate.
ExclusionOutcome exclude_factor_degree(const APSpec& spec, std::uint64_t n, std::uint64_t k, const PrimeTable& table,
                                       const ScanContext& ctx);

/// Re-validates every witness of a certificate from scratch.
bool recheck_certificate(const ExclusionCertificate& cert, const PrimeTable& table);

struct TheoremReport {
  APSpec spec;
  std::uint64_t n = 0;
  std::vector<ExclusionOutcome> outcomes;  // k = 1 .. floor(n/2)

  bool ok() const;
  std::size_t undecided_count() const;
};

/// Certificates for every k in [1, n/2]; needs alpha in {1, 3} and d = 4.
TheoremReport verify_theorem(const APSpec& spec, std::uint64_t n, const PrimeTable& table, const ScanContext& ctx);

struct LBoundRow {
  std::uint64_t k = 0;
  std::uint64_t omega_1 = 0;
  LBoundResult bound;
};

/// L(k, 4) with t = omega_1(k) and d = 4 for every k in [k_from, k_to].
std::vector<LBoundRow> l_bound_sweep(std::uint64_t k_from, std::uint64_t k_to, const PrimeTable& table);

}  // namespace hlirred
