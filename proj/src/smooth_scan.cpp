#include "hlirred/smooth_scan.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <thread>

#include "hlirred/ap_products.hpp"
#include "hlirred/errors.hpp"

namespace hlirred {

namespace {

/// Runs fn(lo, hi) on `threads` disjoint contiguous chunks of [from, to] and
/// concatenates the per-chunk outputs in chunk order.
template <typename T, typename Fn>
std::vector<T> chunked(std::uint64_t from, std::uint64_t to, unsigned threads, Fn fn) {
  if (from > to) return {};
  threads = std::max(1u, threads);
  const std::uint64_t span = to - from + 1;
  const std::uint64_t chunks = std::min<std::uint64_t>(threads, span);
  std::vector<std::vector<T>> parts(chunks);
  std::vector<std::thread> pool;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = from + span * c / chunks;
    const std::uint64_t hi = from + span * (c + 1) / chunks - 1;
    if (chunks == 1) {
      parts[c] = fn(lo, hi);
    } else {
      pool.emplace_back([&parts, c, lo, hi, &fn] { parts[c] = fn(lo, hi); });
    }
  }
  for (auto& t : pool) t.join();
  std::vector<T> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

SpfSieve::SpfSieve(std::uint64_t limit) {
  if (limit > std::numeric_limits<std::uint32_t>::max()) throw LimitTooLarge("SPF sieve limit above 2^32");
  spf_.assign(limit + 1, 0);
  if (limit >= 1) spf_[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    if (i * i > limit) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

std::uint64_t SpfSieve::largest_prime_factor(std::uint64_t x) const {
  std::uint64_t largest = 1;
  while (x > 1) {
    largest = spf_[x];
    x /= largest;
  }
  return largest;
}

bool SpfSieve::is_smooth(std::uint64_t x, std::uint64_t bound) const {
  while (x > 1) {
    const std::uint64_t p = spf_[x];
    if (p > bound) return false;
    x /= p;
  }
  return true;
}

std::vector<std::uint64_t> scan_smooth_pairs(std::uint64_t bound, std::uint64_t smooth_bound, unsigned threads) {
  if (smooth_bound < 2) throw InvalidArgument("smoothness bound must be >= 2");
  if (bound < 1) return {};
  const SpfSieve sieve(bound + 4);
  return chunked<std::uint64_t>(1, bound, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = lo | 1; m <= hi; m += 2) {
      if (sieve.is_smooth(m, smooth_bound) && sieve.is_smooth(m + 4, smooth_bound)) out.push_back(m);
    }
    return out;
  });
}

std::vector<SmoothHit> small_k_exceptions(std::uint64_t k, std::uint64_t bound, const PrimeTable& table,
                                          unsigned threads) {
  if (k < 2 || k > 6) throw InvalidArgument("small_k_exceptions needs 2 <= k <= 6");
  const std::uint64_t smooth_bound = 4 * k;
  if (table.limit() < smooth_bound) throw TableTooSmall("table must contain the primes up to 4k");
  std::vector<std::uint64_t> small;
  for (std::uint64_t p : table.primes()) {
    if (p > smooth_bound) break;
    if (p != 2) small.push_back(p);
  }
  auto is_smooth = [&small](std::uint64_t x) {
    for (std::uint64_t p : small) {
      while (x % p == 0) x /= p;
      if (x == 1) return true;
    }
    return x == 1;
  };

  const std::uint64_t first = smooth_bound + 1;  // m > 4k
  auto found = chunked<std::uint64_t>(first, std::max(bound, first - 1), threads,
                                      [&](std::uint64_t lo, std::uint64_t hi) {
                                        std::vector<std::uint64_t> out;
                                        for (std::uint64_t m = lo | 1; m <= hi; m += 2) {
                                          bool smooth = true;
                                          for (std::uint64_t i = 0; i < k && smooth; ++i) smooth = is_smooth(m + 4 * i);
                                          if (smooth) out.push_back(m);
                                        }
                                        return out;
                                      });
  std::vector<SmoothHit> hits;
  for (std::uint64_t m : found) {
    const FactoredProduct fp = factor_window(ProductWindow::make(m, 4, k), table);
    hits.push_back({m, k, fp.max_prime, fp.factors});
  }
  return hits;
}

ExclusionCertificate resolve_exception(std::uint64_t m, std::uint64_t k, const PrimeTable& table) {
  if (m % 2 == 0 || k < 2 || m <= 4 * k) {
    throw InvalidArgument("(m=" + std::to_string(m) + ", k=" + std::to_string(k) + ") is not a smooth window");
  }
  const FactoredProduct fp = factor_window(ProductWindow::make(m, 4, k), table);
  if (fp.max_prime > 4 * k) {
    throw InvalidArgument("(m=" + std::to_string(m) + ", k=" + std::to_string(k) + ") is not a smooth window");
  }
  const APSpec spec = APSpec::make(m % 4, 4);
  const std::uint64_t n = k + (m - spec.alpha) / 4;
  const auto witness = find_criterion_prime(spec, n, k, table);
  if (!witness) throw NoWitness("no qualifying prime for smooth window m=" + std::to_string(m));
  ExclusionCertificate cert{n, k, spec, rule::CriterionPrime{witness->p, witness->trace}, false};
  cert.verified_by_phi_oracle = phi_check(spec, n, k, witness->p).holds;
  return cert;
}

void write_hits_csv(std::ostream& os, const std::vector<SmoothHit>& hits, const PrimeTable& table) {
  os << "m,k,alpha,n,max_prime,certificate_prime\n";
  for (const SmoothHit& h : hits) {
    const ExclusionCertificate cert = resolve_exception(h.m, h.k, table);
    const auto& prime_rule = std::get<rule::CriterionPrime>(cert.rule);
    os << h.m << ',' << h.k << ',' << cert.spec.alpha << ',' << cert.n << ',' << h.max_prime << ','
       << prime_rule.p << '\n';
  }
}

}  // namespace hlirred
