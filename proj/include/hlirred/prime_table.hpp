// Sieved prime tables, primes in the residue classes 1 and 3 mod 4, Chebyshev
// sums and prime gaps inside a class.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "hlirred/interval.hpp"

namespace hlirred {

inline constexpr std::uint64_t kDefaultTableCeiling = 1'000'000'000;

/// Immutable list of all primes up to `limit`, with the two odd residue
/// classes mod 4 split out.
class PrimeTable {
 public:
  PrimeTable() = default;

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::span<const std::uint64_t> class1() const { return class1_; }
  std::span<const std::uint64_t> class3() const { return class3_; }
  /// Primes congruent to `l` mod 4, `l` in {1, 3}.
  std::span<const std::uint64_t> residue_class(int l) const;

  bool is_prime(std::uint64_t n) const;
  /// pi(nu) for nu <= limit.
  std::uint64_t pi(std::uint64_t nu) const;
  /// pi(nu, 4, l) for nu <= limit.
  std::uint64_t pi(std::uint64_t nu, int l) const;

  friend PrimeTable build_table(std::uint64_t limit, std::uint64_t ceiling);
  friend PrimeTable load_table(const std::filesystem::path& path);

 private:
  void split_classes();

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint64_t> class1_;
  std::vector<std::uint64_t> class3_;
};

/// Segmented sieve of Eratosthenes. Throws LimitTooLarge above `ceiling`.
PrimeTable build_table(std::uint64_t limit, std::uint64_t ceiling = kDefaultTableCeiling);

/// On-disk cache: 16-byte little-endian header ("HLPT", u32 version, u64
/// limit) followed by the primes as ascending little-endian u64.
void save_table(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable load_table(const std::filesystem::path& path);
/// Loads `path` when it holds a table covering `limit`, otherwise sieves and
/// (re)writes the cache.
PrimeTable load_or_build_table(const std::filesystem::path& path, std::uint64_t limit,
                               std::uint64_t ceiling = kDefaultTableCeiling);

struct GapWitness {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  std::uint64_t gap() const { return upper - lower; }
};

/// Largest gap between consecutive primes of class `l` (mod 4) whose lower
/// endpoint is <= ceiling. The witness is the first pair attaining it.
GapWitness max_gap_in_class(const PrimeTable& table, int l, std::uint64_t ceiling);

struct GapThreshold {
  std::uint64_t ceiling = 0;
  GapWitness witness;
};

struct GapReport {
  int class_l = 0;
  std::vector<GapThreshold> thresholds;
};

GapReport gap_report(const PrimeTable& table, int l, std::span<const std::uint64_t> ceilings);

/// theta(nu, 4, l) = sum of log p over primes p <= nu, p = l mod 4, enclosed
/// in an interval.
Interval theta_exact(const PrimeTable& table, std::uint64_t nu, int l,
                     mpfr_prec_t prec = kDefaultPrecision);
/// Chebyshev theta(nu) over all primes.
Interval theta_all(const PrimeTable& table, std::uint64_t nu, mpfr_prec_t prec = kDefaultPrecision);

struct EnvelopeRow {
  std::uint64_t nu = 0;
  int class_l = 0;
  Interval theta;
  Interval lower_bound;  // (nu/2)(1 - 2c/sqrt(nu0))
  Interval upper_bound;  // (nu/2)(1 + 2c/sqrt(nu0))
  bool holds = false;    // certified lower_bound <= theta <= upper_bound
};

struct EnvelopeReport {
  std::uint64_t nu0 = 0;
  std::vector<EnvelopeRow> rows;
  bool all_hold() const;
};

/// Checks the Ramare-Rumely envelope for theta(nu, 4, l), l in {1, 3}, at the
/// sampled nu. Every nu must satisfy nu0 <= nu <= table.limit() and nu < 1e10.
EnvelopeReport check_rr_envelope(const PrimeTable& table, std::uint64_t nu0,
                                 std::span<const std::uint64_t> sample);

/// Upper limit on m for which the class gap table forces a prime of the
/// window's class into Delta(m, 4, k), by regime of k (k >= 6). Zero for k < 6.
std::uint64_t small_m_ceiling(std::uint64_t k);

/// True iff m lies in the small-m regime for k and the class gaps below the
/// regime ceiling are all shorter than 4(k + 1), which forces P(Delta(m,4,k)) >= m.
bool corollary_small_m(const PrimeTable& table, std::uint64_t k, std::uint64_t m);

/// True iff 10^6 < m <= 138 * 4k.
bool corollary_mid_m(std::uint64_t k, std::uint64_t m);

}  // namespace hlirred
