#include <doctest.h>

#include <algorithm>
#include <random>

#include "hlirred/criterion.hpp"
#include "hlirred/errors.hpp"
#include "hlirred/poly_oracle.hpp"
#include "oracles.hpp"

using namespace hlirred;

namespace {

IntPolynomial poly(std::vector<long> ascending) {
  std::vector<mpz_class> c;
  for (long v : ascending) c.emplace_back(v);
  return IntPolynomial(std::move(c));
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

IntPolynomial random_poly(oracle::Gen& g, std::size_t deg) {
  std::vector<mpz_class> c(deg + 1);
  for (auto& x : c) x = g.integer(-9, 9);
  while (c.back() == 0) c.back() = g.integer(-9, 9);
  return IntPolynomial(std::move(c));
}

mpq_class G_by_definition(std::uint64_t alpha, std::uint64_t d, std::size_t n, const std::vector<mpz_class>& a,
                          const mpq_class& x) {
  // F(y) = sum_j a_j y^j d^j / (alpha)_j, so (alpha)_n F(x/d) = sum_j a_j x^j (alpha)_n / (alpha)_j.
  mpz_class full = 1;
  for (std::size_t i = 0; i < n; ++i) full *= static_cast<unsigned long>(alpha + i * d);
  mpq_class sum = 0, xp = 1;
  mpz_class head = 1;  // (alpha)_j
  for (std::size_t j = 0; j <= n; ++j) {
    mpq_class ratio(full, head);
    ratio.canonicalize();
    sum += mpq_class(a[j]) * xp * ratio;
    head *= static_cast<unsigned long>(alpha + j * d);
    xp *= x;
  }
  return sum;
}

}  // namespace

TEST_SUITE("poly_oracle") {

TEST_CASE("profile validation") {
  CHECK_NOTHROW(CoefficientProfile::make({1, 0, -4}));
  CHECK_THROWS_AS(CoefficientProfile::make({3, 1}), ProfileMismatch);
  CHECK_THROWS_AS(CoefficientProfile::make({0, 1}), ProfileMismatch);
  CHECK_THROWS_AS(CoefficientProfile::make({1}), ProfileMismatch);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto p = random_profile(1 + i % 20, rng);
    mpz_class prod = abs(p.a.front() * p.a.back());
    while (prod % 2 == 0) prod /= 2;
    CHECK(prod == 1);
    for (const auto& x : p.a) CHECK((x >= -5 && x <= 5));
  }
}

TEST_CASE("build_G examples") {
  CHECK(build_G(APSpec::make(1, 4), 1, CoefficientProfile::ones(1)) == poly({1, 1}));
  CHECK(build_G(APSpec::make(1, 4), 2, CoefficientProfile::ones(2)) == poly({5, 5, 1}));
  CHECK(build_G(APSpec::make(3, 4), 2, CoefficientProfile::ones(2)) == poly({21, 7, 1}));
  CHECK_THROWS_AS(build_G(APSpec::make(1, 4), 3, CoefficientProfile::ones(2)), ProfileMismatch);
}

TEST_CASE("build_G matches the defining identity at sample points") {
  for (std::uint64_t alpha : {1, 3})
    for (std::size_t n = 1; n <= 15; ++n) {
      const auto prof = CoefficientProfile::ones(n);
      const IntPolynomial G = build_G(APSpec::make(alpha, 4), n, prof);
      for (long x : {0L, 1L, -1L, 2L, -2L, 4L, 8L})
        CHECK(G.evaluate(mpq_class(x)) == G_by_definition(alpha, 4, n, prof.a, mpq_class(x)));
    }
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 12;
    const auto prof = random_profile(n, rng);
    const IntPolynomial G = build_G(APSpec::make(3, 4), n, prof);
    CHECK(G.evaluate(mpq_class(1, 3)) == G_by_definition(3, 4, n, prof.a, mpq_class(1, 3)));
  }
}

TEST_CASE("polynomial basics") {
  const IntPolynomial f = poly({6, 4, 2});
  CHECK(f.content() == 2);
  CHECK(f.primitive() == poly({3, 2, 1}));
  CHECK(poly({-2, 0, -4}).primitive() == poly({1, 0, 2}));
  CHECK(poly({1, 1}) * poly({-1, 1}) == poly({-1, 0, 1}));
  CHECK(poly({5, 5, 1}).to_string() == "x^2 + 5x + 5");
  CHECK(poly({0, 0}).is_zero());
  CHECK_THROWS_AS(IntPolynomial().degree(), InvalidArgument);
}

TEST_CASE("mod-p degree multisets") {
  CHECK(mod_p_degree_multiset(poly({5, 5, 1}), 3) == std::vector<std::size_t>{2});
  CHECK(mod_p_degree_multiset(poly({-1, 0, 1}), 5) == std::vector<std::size_t>{1, 1});
  CHECK(mod_p_degree_multiset(poly({1, 1}), 7) == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(mod_p_degree_multiset(poly({1, 3}), 3), LeadingVanishes);
  // (x + 1)^2 (x^2 + 1) mod 3: x^2 + 1 is irreducible mod 3.
  const IntPolynomial sq = poly({1, 1}) * poly({1, 1}) * poly({1, 0, 1});
  CHECK(sorted(mod_p_degree_multiset(sq, 3)) == std::vector<std::size_t>{1, 1, 2});
  // x^3 - x = x (x - 1)(x + 1)
  CHECK(mod_p_degree_multiset(poly({0, -1, 0, 1}), 3) == std::vector<std::size_t>{1, 1, 1});
  // p-th power: x^3 + 1 = (x + 1)^3 mod 3
  CHECK(mod_p_degree_multiset(poly({1, 0, 0, 1}), 3) == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("degree multiset degrees sum to the degree") {
  oracle::Gen g(31);
  for (int i = 0; i < 300; ++i) {
    const IntPolynomial f = random_poly(g, g.uniform(1, 14));
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
      if (f.leading() % p == 0) continue;
      const auto m = mod_p_degree_multiset(f, p);
      std::size_t total = 0;
      for (auto d : m) total += d;
      CHECK(total == f.degree());
    }
  }
}

TEST_CASE("rational roots") {
  const auto a = rational_roots(poly({-6, 1, 1}));  // (x + 3)(x - 2)
  REQUIRE(a);
  CHECK(*a == std::vector<mpq_class>{-3, 2});
  const auto b = rational_roots(poly({-1, 0, 4}));  // (2x - 1)(2x + 1)
  REQUIRE(b);
  CHECK(*b == std::vector<mpq_class>{mpq_class(-1, 2), mpq_class(1, 2)});
  const auto c = rational_roots(poly({5, 5, 1}));
  REQUIRE(c);
  CHECK(c->empty());
  const auto z = rational_roots(poly({0, 0, 1, 1}));
  REQUIRE(z);
  CHECK(*z == std::vector<mpq_class>{-1, 0});
}

TEST_CASE("property: rational roots of products of linear factors") {
  oracle::Gen g(12);
  for (int it = 0; it < 300; ++it) {
    IntPolynomial f = poly({1});
    std::vector<mpq_class> expected;
    const int lin = int(g.uniform(1, 3));
    for (int i = 0; i < lin; ++i) {
      const long num = g.integer(-30, 30), den = g.integer(1, 7);
      f = f * poly({-num, den});
      mpq_class r(num, den);
      r.canonicalize();
      expected.push_back(r);
    }
    f = f * random_poly(g, g.uniform(0, 4));
    const auto roots = rational_roots(f);
    if (!roots) continue;  // repeated factor; nothing to compare
    for (const auto& r : expected) CHECK(std::find(roots->begin(), roots->end(), r) != roots->end());
    for (const auto& r : *roots) CHECK(f.evaluate(r) == 0);
  }
}

TEST_CASE("certify_degree_set examples") {
  const std::uint64_t three[] = {3};
  const DegreeSet a = certify_degree_set(poly({5, 5, 1}), three, false);
  CHECK(a.possible == std::set<std::size_t>{0, 2});
  const IntPolynomial cubic = poly({1, 1}) * poly({5, 5, 1});
  const auto primes = default_oracle_primes(cubic, 4);
  const DegreeSet b = certify_degree_set(cubic, primes, true);
  CHECK(b.possible == std::set<std::size_t>{0, 1, 2, 3});
  CHECK(b.linear == LinearEvidence::RationalRoot);
  const DegreeSet c = certify_degree_set(poly({1, 1}), three, true);
  CHECK(c.possible == std::set<std::size_t>{0, 1});
  CHECK(default_oracle_primes(cubic, 4).size() == 12);
}

TEST_CASE("property: certified sets never exclude a true factor degree") {
  oracle::Gen g(500);
  for (int it = 0; it < 500; ++it) {
    const IntPolynomial gpoly = random_poly(g, g.uniform(1, 6));
    const IntPolynomial hpoly = random_poly(g, g.uniform(1, 6));
    const IntPolynomial f = gpoly * hpoly;
    auto primes = default_oracle_primes(f, 4);
    if (primes.empty()) {
      // Non-square-free everywhere; use any primes not dividing the leading coefficient.
      for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23})
        if (f.leading() % p != 0) primes.push_back(p);
    }
    const DegreeSet s = certify_degree_set(f, primes, it % 2 == 0);
    CAPTURE(f.to_string());
    CHECK(s.contains(gpoly.degree()));
    CHECK(s.contains(hpoly.degree()));
    CHECK(s.complement_closed());
    CHECK(s.contains(0));
    CHECK(s.contains(f.degree()));
  }
}

TEST_CASE("check_instance examples") {
  CHECK(check_instance(APSpec::make(1, 4), 2, CoefficientProfile::ones(2)).verdict == Verdict::Pass);
  CHECK(check_instance(APSpec::make(3, 4), 2, CoefficientProfile::ones(2)).verdict == Verdict::Pass);
  const auto r = check_instance(APSpec::make(1, 4), 4, CoefficientProfile::make({1, 0, 0, 0, 1}));
  CHECK(r.verdict != Verdict::Fail);
  MESSAGE("x^4 + 1*(alpha)_4 profile verdict: " << verdict_name(r.verdict));
  CHECK(check_instance(APSpec::make(1, 4), 1, CoefficientProfile::ones(1)).verdict == Verdict::Pass);
}

TEST_CASE("agreement with the criterion pipeline on small instances") {
  const PrimeTable table = build_table(10'000);
  const ScanContext ctx = ScanContext::build(table, 4 * 25 + 3, 12);
  std::mt19937_64 rng(1);
  std::size_t inconclusive = 0, total = 0;
  for (std::uint64_t alpha : {1, 3}) {
    const APSpec spec = APSpec::make(alpha, 4);
    for (std::size_t n = 1; n <= 25; ++n) {
      const bool certified = verify_theorem(spec, n, table, ctx).ok();
      for (int s = 0; s < 20; ++s) {
        const auto res = check_instance(spec, n, random_profile(n, rng));
        ++total;
        if (res.verdict == Verdict::Inconclusive) ++inconclusive;
        CHECK(res.degrees.complement_closed());
        if (certified) CHECK(res.verdict != Verdict::Fail);
      }
    }
  }
  MESSAGE("inconclusive " << inconclusive << " of " << total);
  CHECK(double(inconclusive) / total < 0.2);
}

TEST_CASE("the FAIL path names a genuine quadratic factor") {
  std::mt19937_64 rng(99);
  std::size_t fails = 0;
  for (int i = 0; i < 3000; ++i) {
    const std::size_t n = 3 + i % 4;
    const auto prof = random_profile(n, rng);
    const auto res = check_instance(APSpec::make(1, 4), n, prof);
    if (res.verdict != Verdict::Fail) continue;
    ++fails;
    REQUIRE(res.forbidden_factor);
    const IntPolynomial G = build_G(APSpec::make(1, 4), n, prof);
    CHECK(res.forbidden_factor->degree() == 2);
    for (std::size_t r = 0; r < 2; ++r) {
      CHECK(res.forbidden_factor->evaluate(res.roots[r]) == 0);
      CHECK(G.evaluate(res.roots[r]) == 0);
    }
  }
  MESSAGE("FAIL verdicts in the random sample: " << fails);
}

}  // TEST_SUITE
