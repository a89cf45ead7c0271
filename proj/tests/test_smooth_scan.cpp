#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "hlirred/errors.hpp"
#include "hlirred/smooth_scan.hpp"
#include "oracles.hpp"

using namespace hlirred;

namespace {

const PrimeTable& table() {
  static const PrimeTable t = build_table(100'000);
  return t;
}

bool contains(const std::vector<std::uint64_t>& v, std::uint64_t x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST_SUITE("smooth_scan") {

TEST_CASE("spf sieve against trial division") {
  const SpfSieve s(200'000);
  oracle::Gen g(1);
  CHECK(s.largest_prime_factor(1) == 1);
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t x = g.uniform(1, 200'000);
    CHECK(s.largest_prime_factor(x) == oracle::largest_prime(mpz_class(static_cast<unsigned long>(x))));
  }
  CHECK(s.is_smooth(525, 7));
  CHECK_FALSE(s.is_smooth(525, 5));
  CHECK_THROWS_AS(SpfSieve(1ull << 33), LimitTooLarge);
}

TEST_CASE("scan_smooth_pairs examples") {
  const auto a = scan_smooth_pairs(100, 7);
  CHECK(contains(a, 21));
  CHECK(contains(a, 45));
  const auto b = scan_smooth_pairs(10, 5);
  CHECK(contains(b, 1));
  CHECK(contains(b, 5));
  CHECK(scan_smooth_pairs(3, 2).empty());
}

TEST_CASE("property: pair scan is exactly the smooth set") {
  const std::uint64_t bound = 200'000, B = 23;
  const auto hits = scan_smooth_pairs(bound, B, 4);
  CHECK(std::is_sorted(hits.begin(), hits.end()));
  const std::set<std::uint64_t> set(hits.begin(), hits.end());
  for (std::uint64_t m : hits)
    CHECK(oracle::largest_prime(mpz_class(static_cast<unsigned long>(m)) * static_cast<unsigned long>(m + 4)) <= B);
  oracle::Gen g(42);
  for (int i = 0; i < 10'000; ++i) {
    const std::uint64_t m = 2 * g.uniform(0, bound / 2 - 1) + 1;
    if (set.count(m)) continue;
    CHECK(oracle::largest_prime(mpz_class(static_cast<unsigned long>(m)) * static_cast<unsigned long>(m + 4)) > B);
  }
  // Thread count does not change the answer.
  CHECK(scan_smooth_pairs(bound, B, 1) == hits);
}

TEST_CASE("small_k_exceptions up to 10^6") {
  const auto k2 = small_k_exceptions(2, 1'000'000, table(), 4);
  REQUIRE(k2.size() == 2);
  CHECK(k2[0].m == 21);
  CHECK(k2[1].m == 45);
  for (const auto& h : k2) CHECK(h.max_prime == 7);
  CHECK(k2[0].factors == std::map<std::uint64_t, std::uint64_t>{{3, 1}, {5, 2}, {7, 1}});
  for (std::uint64_t k = 3; k <= 6; ++k) CHECK(small_k_exceptions(k, 1'000'000, table(), 4).empty());
  CHECK_THROWS_AS(small_k_exceptions(1, 100, table()), InvalidArgument);
  CHECK_THROWS_AS(small_k_exceptions(7, 100, table()), InvalidArgument);
}

TEST_CASE("property: windows brute-forced for small horizons") {
  for (std::uint64_t k = 2; k <= 6; ++k) {
    std::vector<std::uint64_t> naive;
    for (std::uint64_t m = 4 * k + 1; m <= 20'000; m += 2)
      if (oracle::largest_prime(oracle::window(m, 4, k)) <= 4 * k) naive.push_back(m);
    std::vector<std::uint64_t> got;
    for (const auto& h : small_k_exceptions(k, 20'000, table())) got.push_back(h.m);
    CHECK(got == naive);
  }
}

TEST_CASE("window hits are pair hits") {
  const auto pairs = scan_smooth_pairs(1'000'000, 27);
  for (std::uint64_t k = 2; k <= 6; ++k)
    for (const auto& h : small_k_exceptions(k, 1'000'000, table()))
      CHECK(contains(pairs, h.m));
}

TEST_CASE("resolve_exception") {
  const auto a = resolve_exception(21, 2, table());
  CHECK(a.spec.alpha == 1);
  CHECK(a.n == 7);
  CHECK(std::get<rule::CriterionPrime>(a.rule).p == 7);
  CHECK(recheck_certificate(a, table()));
  const auto b = resolve_exception(45, 2, table());
  CHECK(b.n == 13);
  CHECK(std::get<rule::CriterionPrime>(b.rule).p == 7);
  CHECK(recheck_certificate(b, table()));
  CHECK_THROWS_AS(resolve_exception(21, 3, table()), InvalidArgument);
  CHECK_THROWS_AS(resolve_exception(33, 2, table()), InvalidArgument);
}

TEST_CASE("csv output") {
  std::ostringstream os;
  write_hits_csv(os, small_k_exceptions(2, 100, table()), table());
  CHECK(os.str() == "m,k,alpha,n,max_prime,certificate_prime\n21,2,1,7,7,7\n45,2,1,13,7,7\n");
}

}  // TEST_SUITE
