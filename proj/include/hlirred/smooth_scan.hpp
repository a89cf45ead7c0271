// Enumeration of windows Delta(m, 4, k) whose prime factors are all <= 4k,
// for the short windows 2 <= k <= 6, by exhaustive scan up to a horizon.
#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "hlirred/criterion.hpp"
#include "hlirred/prime_table.hpp"

namespace hlirred {

struct SmoothHit {
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  std::uint64_t max_prime = 1;  // P(Delta(m, 4, k))
  std::map<std::uint64_t, std::uint64_t> factors;
};

/// Smallest-prime-factor sieve over [0, limit].
class SpfSieve {
 public:
  explicit SpfSieve(std::uint64_t limit);
  std::uint64_t limit() const { return spf_.size() - 1; }
  std::uint32_t spf(std::uint64_t x) const { return spf_[x]; }
  /// Largest prime factor, with P(1) = 1.
  std::uint64_t largest_prime_factor(std::uint64_t x) const;
  /// True iff every prime factor of x is <= bound.
  bool is_smooth(std::uint64_t x, std::uint64_t bound) const;

 private:
  std::vector<std::uint32_t> spf_;
};

/// All odd m <= bound with P(m(m+4)) <= smooth_bound, ascending.
std::vector<std::uint64_t> scan_smooth_pairs(std::uint64_t bound, std::uint64_t smooth_bound, unsigned threads = 1);

/// All m <= bound with gcd(m, 4) = 1, m > 4k and P(Delta(m, 4, k)) <= 4k.
/// Requires 2 <= k <= 6.
std::vector<SmoothHit> small_k_exceptions(std::uint64_t k, std::uint64_t bound, const PrimeTable& table,
                                          unsigned threads = 1);

/// Certificate for a smooth window: alpha = m mod 4, n = k + (m - alpha)/4,
/// witness prime from the direct criterion. Throws InvalidArgument when
/// (m, k) is not a smooth window and NoWitness when no prime qualifies.
ExclusionCertificate resolve_exception(std::uint64_t m, std::uint64_t k, const PrimeTable& table);

/// CSV with columns m,k,alpha,n,max_prime,certificate_prime.
void write_hits_csv(std::ostream& os, const std::vector<SmoothHit>& hits, const PrimeTable& table);

}  // namespace hlirred
