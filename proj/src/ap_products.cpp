#include "hlirred/ap_products.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hlirred/errors.hpp"
#include "modarith.hpp"

namespace hlirred {

namespace {

constexpr std::uint64_t kTermCeiling = 1ULL << 63;

}  // namespace

APSpec APSpec::make(std::uint64_t alpha, std::uint64_t d) {
  if (alpha < 1 || alpha >= d) throw InvalidArgument("APSpec needs 1 <= alpha < d");
  if (std::gcd(alpha, d) != 1) throw InvalidArgument("APSpec needs gcd(alpha, d) = 1");
  return {alpha, d};
}

ProductWindow ProductWindow::make(std::uint64_t m, std::uint64_t d, std::uint64_t k) {
  if (m < 1 || d < 1) throw InvalidArgument("window needs positive m and d");
  if (k < 1) throw InvalidArgument("window needs k >= 1");
  if (std::gcd(m, d) != 1) throw InvalidArgument("window needs gcd(m, d) = 1");
  if ((k - 1) > (kTermCeiling - m) / d) throw InvalidArgument("window term exceeds 2^63");
  return {m, d, k};
}

mpz_class FactoredProduct::value() const {
  mpz_class v = 1;
  for (auto [p, e] : factors) {
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
    v *= pe;
  }
  return v;
}

mpz_class window_value(const ProductWindow& w) {
  mpz_class v = 1;
  for (std::uint64_t i = 0; i < w.k; ++i) v *= mpz_class(static_cast<unsigned long>(w.term(i)));
  return v;
}

std::vector<TermFactor> factor_terms(const ProductWindow& w, const PrimeTable& table) {
  const std::uint64_t cutoff = detail::isqrt(w.last_term());
  if (table.limit() < cutoff) {
    throw TableTooSmall("prime table limit " + std::to_string(table.limit()) + " below sqrt of last term " +
                        std::to_string(cutoff));
  }
  std::vector<std::uint64_t> rest(w.k);
  for (std::uint64_t i = 0; i < w.k; ++i) rest[i] = w.term(i);

  std::vector<TermFactor> out;
  for (std::uint64_t p : table.primes()) {
    if (p > cutoff) break;
    if (w.d % p == 0) continue;
    const std::uint64_t first = detail::first_multiple_index(w.m, w.d, p);
    for (std::uint64_t i = first; i < w.k; i += p) {
      std::uint64_t e = 0;
      while (rest[i] % p == 0) {
        rest[i] /= p;
        ++e;
      }
      out.push_back({i, p, e});
    }
  }
  std::vector<TermFactor> large;
  for (std::uint64_t i = 0; i < w.k; ++i) {
    if (rest[i] > 1) large.push_back({i, rest[i], 1});
  }
  std::sort(large.begin(), large.end(),
            [](const TermFactor& a, const TermFactor& b) { return a.prime != b.prime ? a.prime < b.prime : a.index < b.index; });
  out.insert(out.end(), large.begin(), large.end());
  return out;
}

FactoredProduct factor_window(const ProductWindow& w, const PrimeTable& table) {
  FactoredProduct fp;
  fp.window = w;
  for (const TermFactor& tf : factor_terms(w, table)) fp.factors[tf.prime] += tf.exponent;
  fp.omega = fp.factors.size();
  fp.max_prime = fp.factors.empty() ? 1 : fp.factors.rbegin()->first;
  return fp;
}

std::size_t window_omega(const ProductWindow& w, const PrimeTable& table) {
  // Small primes arrive grouped in ascending order, large cofactors sorted after them.
  std::size_t omega = 0;
  std::uint64_t prev = 0;
  for (const TermFactor& tf : factor_terms(w, table)) {
    if (tf.prime != prev) ++omega;
    prev = tf.prime;
  }
  return omega;
}

std::uint64_t ord_p_window(const ProductWindow& w, std::uint64_t p) {
  if (p < 2) throw InvalidArgument("ord_p_window needs a prime p");
  if (w.d % p == 0) return 0;
  std::uint64_t total = 0;
  const std::uint64_t last = w.last_term();
  // Terms divisible by p^e form one residue class of indices mod p^e.
  unsigned __int128 pe = p;
  while (pe <= last) {
    const auto modulus = static_cast<std::uint64_t>(pe);
    const std::uint64_t first = detail::first_multiple_index(w.m, w.d, modulus);
    if (first < w.k) total += (w.k - 1 - first) / modulus + 1;
    pe *= p;
  }
  return total;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> factor_u64(std::uint64_t x, const PrimeTable& table) {
  if (x == 0) throw InvalidArgument("cannot factor 0");
  const std::uint64_t cutoff = detail::isqrt(x);
  if (table.limit() < cutoff) throw TableTooSmall("prime table does not reach sqrt(x)");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t p : table.primes()) {
    if (p * p > x) break;
    if (x % p != 0) continue;
    std::uint64_t e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (x > 1) out.push_back({x, 1});
  return out;
}

bool is_prime_u64(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (x % p == 0) return x == p;
  }
  std::uint64_t odd = x - 1;
  int twos = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++twos;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t y = detail::powmod(a, odd, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int r = 1; r < twos; ++r) {
      y = detail::mulmod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t ord_p_factorial(std::uint64_t p, std::uint64_t n) {
  std::uint64_t total = 0;
  while (n > 0) {
    n /= p;
    total += n;
  }
  return total;
}

DeletionSet build_deletion_set(const ProductWindow& w, const PrimeTable& table) {
  const auto terms = factor_terms(w, table);
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> by_prime;  // p -> (index, ord)
  for (const TermFactor& tf : terms) by_prime[tf.prime].push_back({tf.index, tf.exponent});

  DeletionSet ds;
  ds.window = w;
  ds.omega = by_prime.size();
  if (ds.omega >= w.k) {
    throw EmptyRetained("omega = " + std::to_string(ds.omega) + " >= k = " + std::to_string(w.k));
  }

  std::vector<bool> deleted(w.k, false);
  for (auto& [p, entries] : by_prime) {
    std::uint64_t best = 0;
    for (auto [i, e] : entries) best = std::max(best, e);
    bool covered = false;
    std::uint64_t smallest = w.k;
    for (auto [i, e] : entries) {
      if (e != best) continue;
      if (deleted[i]) covered = true;
      smallest = std::min(smallest, i);
    }
    if (!covered) deleted[smallest] = true;
  }

  ds.frak_p = 1;
  for (std::uint64_t i = 0; i < w.k; ++i) {
    if (deleted[i]) continue;
    ds.retained_indices.push_back(i);
    ds.frak_p *= mpz_class(static_cast<unsigned long>(w.term(i)));
  }
  ds.t0 = ds.retained_indices.size();
  return ds;
}

}  // namespace hlirred
