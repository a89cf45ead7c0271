// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hlirred/bounds.hpp"
#include "hlirred/criterion.hpp"
#include "hlirred/poly_oracle.hpp"
#include "hlirred/prime_table.hpp"
#include "hlirred/smooth_scan.hpp"

using namespace hlirred;

namespace {

// Pinned thresholds. Everything below is an exact integer check except the
// oracle rate; interval checks use certified directed rounding.
constexpr std::uint64_t kGapCeilings[] = {120, 250, 2400, 1'000'000};
constexpr std::uint64_t kGapClaims[] = {24, 32, 60, 200};
constexpr std::uint64_t kLRanges[] = {10, 20, 400};
constexpr long kLClaims[] = {104, 245, 2353};
constexpr std::uint64_t kSmoothHorizon = 1'000'000;
constexpr std::uint64_t kV0 = 138;
constexpr std::uint64_t kGridTop = 1'000'000;
constexpr std::uint64_t kEnvelopeNu[] = {10'000, 100'000, 1'000'000};
constexpr std::uint64_t kSoundnessN = 500;
constexpr std::uint64_t kVerifyN = 2000;
constexpr std::uint64_t kOracleN = 25;
constexpr std::uint64_t kOracleSamples = 20;
constexpr std::uint64_t kOracleSeed = 1;
constexpr double kMaxInconclusiveRate = 0.20;
constexpr std::uint64_t kPiTop = 10'000'000;
constexpr std::uint64_t kLegendreP = 100;
constexpr std::uint64_t kLegendreK = 10'000;
constexpr std::uint64_t kStirlingK = 2000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

const PrimeTable& table() {
  static const PrimeTable t = build_table(kPiTop);
  return t;
}

Outcome gaps() {
  Outcome o;
  std::ostringstream s;
  for (int l : {1, 3}) {
    const GapReport r = gap_report(table(), l, kGapCeilings);
    s << "l=" << l << ":";
    for (std::size_t i = 0; i < r.thresholds.size(); ++i) {
      const auto& w = r.thresholds[i].witness;
      s << ' ' << w.gap() << "<=" << kGapClaims[i];
      if (w.gap() > kGapClaims[i]) o.pass = false;
    }
    s << "  ";
  }
  o.detail = s.str();
  return o;
}

Outcome l_bounds() {
  // The k <= 10 claim cannot be met: floor L(8) = 7!/(2^4 * 3) = 105 exactly.
  Outcome o;
  const auto rows = l_bound_sweep(7, 400, table());
  std::ostringstream s;
  for (std::size_t i = 0; i < std::size(kLRanges); ++i) {
    mpz_class best = 0;
    std::uint64_t arg = 0;
    for (const auto& r : rows) {
      if (r.k <= kLRanges[i] && r.bound.floor_bound > best) {
        best = r.bound.floor_bound;
        arg = r.k;
      }
    }
    const bool ok = best <= kLClaims[i];
    o.pass = o.pass && ok;
    s << "k<=" << kLRanges[i] << ": " << best.get_str() << " (k=" << arg << ") vs " << kLClaims[i]
      << (ok ? "" : " EXCEEDS") << "  ";
  }
  o.detail = s.str();
  return o;
}

Outcome smooth() {
  Outcome o;
  const auto k2 = small_k_exceptions(2, kSmoothHorizon, table());
  std::ostringstream s;
  s << "k=2:";
  for (const auto& h : k2) s << " m=" << h.m << " P=" << h.max_prime;
  o.pass = k2.size() == 2 && k2[0].m == 21 && k2[1].m == 45 && k2[0].max_prime == 7 && k2[1].max_prime == 7;
  for (std::uint64_t k = 3; k <= 6; ++k) {
    const auto hits = small_k_exceptions(k, kSmoothHorizon, table());
    s << "  k=" << k << ": " << hits.size();
    o.pass = o.pass && hits.empty();
  }
  o.detail = s.str();
  return o;
}

Outcome large_k() {
  Outcome o;
  std::uint64_t points = 0, failures = 0, first_bad = 0;
  auto check = [&](std::uint64_t k) {
    ++points;
    if (!large_k_contradiction(k, kV0) && failures++ == 0) first_bad = k;
  };
  for (std::uint64_t k = 401; k <= 10'000; ++k) check(k);
  for (std::uint64_t k = 10'100; k <= kGridTop; k += 100) check(k);
  const auto at = large_k_sides(401, kV0);
  const bool decreasing = large_k_rhs_decreasing(kV0);
  const bool threshold = corollary_threshold_check(kV0);
  o.pass = failures == 0 && decreasing && threshold;
  std::ostringstream s;
  s << "k=401 lhs=" << at.lhs.lower_double() << " rhs=" << at.rhs.upper_double() << "; grid " << points
    << " points, " << failures << " open";
  if (failures) s << " (first k=" << first_bad << ")";
  s << "; rhs decreasing=" << decreasing << "; threshold(138)=" << threshold;
  o.detail = s.str();
  return o;
}

Outcome envelope() {
  Outcome o;
  std::ostringstream s;
  for (std::uint64_t nu : kEnvelopeNu) {
    const std::uint64_t sample[] = {nu};
    const EnvelopeReport r = check_rr_envelope(table(), nu, sample);
    o.pass = o.pass && r.all_hold() && !r.rows.empty();
    s << "nu=" << nu << ": " << r.rows.size() << " rows " << (r.all_hold() ? "inside" : "OUTSIDE") << "  ";
  }
  o.detail = s.str();
  return o;
}

Outcome soundness() {
  Outcome o;
  std::uint64_t primes = 0, bad = 0;
  for (std::uint64_t alpha : {1, 3}) {
    const APSpec s = APSpec::make(alpha, 4);
    for (std::uint64_t n = 2; n <= kSoundnessN; ++n) {
      for (std::uint64_t k = 1; 2 * k <= n; ++k) {
        const auto w = find_criterion_prime(s, n, k, table());
        if (!w) continue;
        ++primes;
        if (!phi_check(s, n, k, w->p).holds) ++bad;
      }
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(primes) + " criterion primes, " + std::to_string(bad) + " failing phi_check";
  return o;
}

Outcome pipeline() {
  Outcome o;
  const ScanContext ctx = ScanContext::build(table(), 4 * kVerifyN + 3, kVerifyN / 2);
  std::ostringstream s;
  for (std::uint64_t alpha : {1, 3}) {
    std::uint64_t undecided = 0, certs = 0;
    for (std::uint64_t n = 2; n <= kVerifyN; ++n) {
      const TheoremReport r = verify_theorem(APSpec::make(alpha, 4), n, table(), ctx);
      undecided += r.undecided_count();
      certs += r.outcomes.size();
    }
    o.pass = o.pass && undecided == 0;
    s << "alpha=" << alpha << ": " << certs << " outcomes, " << undecided << " undecided  ";
  }
  o.detail = s.str();
  return o;
}

Outcome oracle_cross() {
  Outcome o;
  std::mt19937_64 rng(kOracleSeed);
  std::uint64_t total = 0, fail = 0, inconclusive = 0;
  for (std::uint64_t n = 1; n <= kOracleN; ++n) {
    for (std::uint64_t alpha : {1, 3}) {
      for (std::uint64_t i = 0; i < kOracleSamples; ++i) {
        const CoefficientProfile prof = random_profile(n, rng);
        const OracleResult r = check_instance(APSpec::make(alpha, 4), n, prof);
        ++total;
        fail += r.verdict == Verdict::Fail;
        inconclusive += r.verdict == Verdict::Inconclusive;
      }
    }
  }
  const double rate = static_cast<double>(inconclusive) / static_cast<double>(total);
  o.pass = fail == 0 && rate < kMaxInconclusiveRate;
  o.detail = std::to_string(total) + " instances, " + std::to_string(fail) + " FAIL, inconclusive rate " +
             std::to_string(rate);
  return o;
}

std::uint64_t legendre(std::uint64_t n, std::uint64_t p) {
  std::uint64_t e = 0;
  for (std::uint64_t q = p; q <= n; q *= p) e += n / q;
  return e;
}

Outcome sandwich() {
  Outcome o;
  const auto dusart = dusart_first_failure(table().primes(), kPiTop);
  std::uint64_t legendre_bad = 0, legendre_points = 0;
  for (std::uint64_t p : table().primes()) {
    if (p > kLegendreP) break;
    for (std::uint64_t k = 2; k <= kLegendreK; ++k) {
      ++legendre_points;
      if (!(ord_factorial_lower(p, k).upper_double() <= static_cast<double>(legendre(k - 1, p)))) ++legendre_bad;
    }
  }
  std::uint64_t stirling_bad = 0;
  mpz_class fact = 1;
  for (std::uint64_t k = 1; k <= kStirlingK; ++k) {
    fact *= static_cast<unsigned long>(k);
    const auto [lo, hi] = stirling_bounds(k);
    const Interval exact = Interval::exact(fact);
    if (!certainly_less_equal(lo, exact) || !certainly_less_equal(exact, hi)) ++stirling_bad;
  }
  o.pass = !dusart && legendre_bad == 0 && stirling_bad == 0;
  std::ostringstream s;
  s << "dusart to " << kPiTop << ": " << (dusart ? "fails at " + std::to_string(*dusart) : std::string("holds"))
    << "; legendre " << legendre_points << " points, " << legendre_bad << " bad; stirling k<=" << kStirlingK << ", "
    << stirling_bad << " bad";
  o.detail = s.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"class gaps", gaps},           {"L-bound maxima", l_bounds},   {"exceptional set", smooth},
      {"large-k closure", large_k},   {"theta envelope", envelope},   {"criterion soundness", soundness},
      {"pipeline n<=2000", pipeline}, {"oracle cross-check", oracle_cross}, {"bound sandwich", sandwich},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("criterion %zu %-20s %s  [%.1fs] %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
