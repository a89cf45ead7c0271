#include "hlirred/prime_table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <string>

#include "hlirred/errors.hpp"
#include "modarith.hpp"

namespace hlirred {

namespace {

constexpr std::array<char, 4> kCacheMagic = {'H', 'L', 'P', 'T'};
constexpr std::uint32_t kCacheVersion = 1;
constexpr std::uint64_t kSegmentSize = 1u << 18;

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

void write_u32(std::ostream& os, std::uint32_t v) {
  std::array<unsigned char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b.data()), b.size());
}

void write_u64(std::ostream& os, std::uint64_t v) {
  std::array<unsigned char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b.data()), b.size());
}

std::uint64_t read_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void check_class(int l) {
  if (l != 1 && l != 3) throw InvalidArgument("residue class must be 1 or 3 mod 4");
}

}  // namespace

std::span<const std::uint64_t> PrimeTable::residue_class(int l) const {
  check_class(l);
  return l == 1 ? class1() : class3();
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw TableTooSmall("is_prime query above table limit");
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::uint64_t PrimeTable::pi(std::uint64_t nu) const {
  if (nu > limit_) throw CeilingExceedsTable("pi query above table limit");
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), nu) - primes_.begin());
}

std::uint64_t PrimeTable::pi(std::uint64_t nu, int l) const {
  if (nu > limit_) throw CeilingExceedsTable("pi query above table limit");
  auto cls = residue_class(l);
  return static_cast<std::uint64_t>(std::upper_bound(cls.begin(), cls.end(), nu) - cls.begin());
}

void PrimeTable::split_classes() {
  class1_.clear();
  class3_.clear();
  for (std::uint64_t p : primes_) {
    if (p % 4 == 1) class1_.push_back(p);
    else if (p % 4 == 3) class3_.push_back(p);
  }
}

PrimeTable build_table(std::uint64_t limit, std::uint64_t ceiling) {
  if (limit < 2) throw InvalidArgument("prime table limit must be >= 2");
  if (limit > ceiling) {
    throw LimitTooLarge("prime table limit " + std::to_string(limit) + " exceeds budget " +
                        std::to_string(ceiling));
  }
  PrimeTable table;
  table.limit_ = limit;
  const std::uint64_t root = detail::isqrt(limit);
  const std::vector<std::uint64_t> base = simple_sieve(root);
  table.primes_.reserve(static_cast<std::size_t>(1.2 * limit / std::max(1.0, std::log(double(limit)))) + 16);

  std::vector<char> segment(kSegmentSize);
  for (std::uint64_t low = 2; low <= limit; low += kSegmentSize) {
    const std::uint64_t high = std::min(limit, low + kSegmentSize - 1);
    std::fill(segment.begin(), segment.end(), 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) segment[j - low] = 0;
    }
    for (std::uint64_t n = low; n <= high; ++n) {
      if (segment[n - low]) table.primes_.push_back(n);
    }
  }
  table.split_classes();
  return table;
}

void save_table(const PrimeTable& table, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open prime-table cache for writing: " + path.string());
  os.write(kCacheMagic.data(), kCacheMagic.size());
  write_u32(os, kCacheVersion);
  write_u64(os, table.limit());
  for (std::uint64_t p : table.primes()) write_u64(os, p);
  if (!os) throw Error("failed writing prime-table cache: " + path.string());
}

PrimeTable load_table(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CacheFormatError("cannot open prime-table cache: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (bytes.size() < 16) throw CacheFormatError("prime-table cache shorter than its header");
  if (std::memcmp(bytes.data(), kCacheMagic.data(), 4) != 0) throw CacheFormatError("bad prime-table magic");
  if (read_le(bytes.data() + 4, 4) != kCacheVersion) throw CacheFormatError("unsupported prime-table version");
  if ((bytes.size() - 16) % 8 != 0) throw CacheFormatError("truncated prime record");

  PrimeTable table;
  table.limit_ = read_le(bytes.data() + 8, 8);
  const std::size_t count = (bytes.size() - 16) / 8;
  table.primes_.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t p = read_le(bytes.data() + 16 + 8 * i, 8);
    if (p < 2 || p > table.limit_) throw CacheFormatError("prime outside [2, limit] in cache");
    if (!table.primes_.empty() && p <= table.primes_.back()) {
      throw CacheFormatError("prime-table cache is not strictly ascending");
    }
    table.primes_.push_back(p);
  }
  table.split_classes();
  return table;
}

PrimeTable load_or_build_table(const std::filesystem::path& path, std::uint64_t limit, std::uint64_t ceiling) {
  if (std::filesystem::exists(path)) {
    try {
      PrimeTable cached = load_table(path);
      if (cached.limit() >= limit) return cached;
    } catch (const CacheFormatError&) {
      // fall through and rebuild
    }
  }
  PrimeTable table = build_table(limit, ceiling);
  save_table(table, path);
  return table;
}

GapWitness max_gap_in_class(const PrimeTable& table, int l, std::uint64_t ceiling) {
  auto cls = table.residue_class(l);
  if (ceiling > table.limit()) {
    throw CeilingExceedsTable("gap ceiling " + std::to_string(ceiling) + " above table limit");
  }
  auto last = std::upper_bound(cls.begin(), cls.end(), ceiling);
  if (last == cls.begin()) throw CeilingExceedsTable("no prime of the class below the ceiling");
  if (last == cls.end()) {
    throw CeilingExceedsTable("successor of the last class prime below " + std::to_string(ceiling) +
                              " is not in the table");
  }
  GapWitness best;
  for (auto it = cls.begin(); it != last; ++it) {
    const std::uint64_t gap = *(it + 1) - *it;
    if (gap > best.gap()) best = {*it, *(it + 1)};
  }
  return best;
}

GapReport gap_report(const PrimeTable& table, int l, std::span<const std::uint64_t> ceilings) {
  GapReport report{l, {}};
  for (std::uint64_t c : ceilings) report.thresholds.push_back({c, max_gap_in_class(table, l, c)});
  return report;
}

Interval theta_exact(const PrimeTable& table, std::uint64_t nu, int l, mpfr_prec_t prec) {
  if (nu > table.limit()) throw CeilingExceedsTable("theta argument above table limit");
  Interval sum = Interval::exact(0, prec);
  for (std::uint64_t p : table.residue_class(l)) {
    if (p > nu) break;
    sum += log(Interval::exact_u(p, prec));
  }
  return sum;
}

Interval theta_all(const PrimeTable& table, std::uint64_t nu, mpfr_prec_t prec) {
  if (nu > table.limit()) throw CeilingExceedsTable("theta argument above table limit");
  Interval sum = Interval::exact(0, prec);
  for (std::uint64_t p : table.primes()) {
    if (p > nu) break;
    sum += log(Interval::exact_u(p, prec));
  }
  return sum;
}

bool EnvelopeReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const EnvelopeRow& r) { return r.holds; });
}

EnvelopeReport check_rr_envelope(const PrimeTable& table, std::uint64_t nu0,
                                 std::span<const std::uint64_t> sample) {
  constexpr std::uint64_t kTenToTen = 10'000'000'000ULL;
  for (std::uint64_t nu : sample) {
    if (nu < nu0 || nu > table.limit() || nu >= kTenToTen) {
      throw SampleOutOfRange("sample nu=" + std::to_string(nu) + " outside [nu0, min(limit, 1e10))");
    }
  }
  if (nu0 == 0) throw SampleOutOfRange("nu0 must be positive");

  const Interval c = Interval::decimal("1.798158");
  const Interval two = Interval::exact(2);
  const Interval one = Interval::exact(1);
  const Interval rel = two * c / sqrt(Interval::exact_u(nu0));

  EnvelopeReport report{nu0, {}};
  for (std::uint64_t nu : sample) {
    const Interval half_nu = Interval::exact_u(nu) / two;
    for (int l : {1, 3}) {
      EnvelopeRow row;
      row.nu = nu;
      row.class_l = l;
      row.theta = theta_exact(table, nu, l);
      row.lower_bound = half_nu * (one - rel);
      row.upper_bound = half_nu * (one + rel);
      row.holds = certainly_less_equal(row.lower_bound, row.theta) &&
                  certainly_less_equal(row.theta, row.upper_bound);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::uint64_t small_m_ceiling(std::uint64_t k) {
  if (k < 6) return 0;
  if (k < 8) return 120;
  if (k < 15) return 250;
  if (k < 50) return 2400;
  return 1'000'000;
}

bool corollary_small_m(const PrimeTable& table, std::uint64_t k, std::uint64_t m) {
  if (m % 2 == 0) throw InvalidArgument("corollary_small_m needs gcd(m, 4) = 1");
  const std::uint64_t ceiling = small_m_ceiling(k);
  if (ceiling == 0 || m > ceiling) return false;
  const int l = static_cast<int>(m % 4);
  // Only gaps whose lower prime is <= m - 4 could enclose the window.
  const GapWitness gap = max_gap_in_class(table, l, ceiling);
  return gap.gap() < 4 * (k + 1);
}

bool corollary_mid_m(std::uint64_t k, std::uint64_t m) {
  return m > 1'000'000 && m <= 138 * 4 * k;
}

}  // namespace hlirred
