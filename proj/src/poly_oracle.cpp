#include "hlirred/poly_oracle.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "hlirred/errors.hpp"
#include "modarith.hpp"

namespace hlirred {

namespace {

// Polynomials over F_p, ascending coefficients, no trailing zeros.
using FpPoly = std::vector<std::uint64_t>;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mod_mpz(const mpz_class& v, std::uint64_t p) {
  return mpz_fdiv_ui(v.get_mpz_t(), p);
}

FpPoly reduce(const IntPolynomial& f, std::uint64_t p) {
  FpPoly out;
  for (const mpz_class& c : f.coeffs()) out.push_back(mod_mpz(c, p));
  trim(out);
  return out;
}

FpPoly sub(FpPoly a, const FpPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + detail::mulmod(a[i], b[j], p)) % p;
  }
  trim(out);
  return out;
}

/// Quotient and remainder; b must be nonzero.
std::pair<FpPoly, FpPoly> divmod(FpPoly a, const FpPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) return {{}, a};
  const std::uint64_t inv = detail::invmod(b.back(), p);
  FpPoly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const std::uint64_t c = detail::mulmod(a[i], inv, p);
    q[i - (b.size() - 1)] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t idx = i - (b.size() - 1) + j;
      a[idx] = (a[idx] + p - detail::mulmod(c, b[j], p)) % p;
    }
  }
  trim(q);
  trim(a);
  return {q, a};
}

FpPoly rem(const FpPoly& a, const FpPoly& b, std::uint64_t p) { return divmod(a, b, p).second; }

FpPoly monic(FpPoly a, std::uint64_t p) {
  if (a.empty()) return a;
  const std::uint64_t inv = detail::invmod(a.back(), p);
  for (auto& c : a) c = detail::mulmod(c, inv, p);
  return a;
}

FpPoly gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  while (!b.empty()) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

FpPoly derivative(const FpPoly& a, std::uint64_t p) {
  FpPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(detail::mulmod(a[i], i % p, p));
  trim(out);
  return out;
}

FpPoly powmod(FpPoly base, std::uint64_t e, const FpPoly& modulus, std::uint64_t p) {
  FpPoly result{1};
  result = rem(result, modulus, p);
  base = rem(base, modulus, p);
  while (e > 0) {
    if (e & 1) result = rem(mul(result, base, p), modulus, p);
    base = rem(mul(base, base, p), modulus, p);
    e >>= 1;
  }
  return result;
}

bool is_one(const FpPoly& a) { return a.size() == 1 && a[0] == 1; }

/// Square-free decomposition of a monic polynomial: (factor, multiplicity).
std::vector<std::pair<FpPoly, std::size_t>> squarefree(const FpPoly& f, std::uint64_t p) {
  std::vector<std::pair<FpPoly, std::size_t>> out;
  if (f.size() <= 1) return out;
  FpPoly c = gcd(f, derivative(f, p), p);
  FpPoly w = divmod(f, c, p).first;
  std::size_t i = 1;
  while (!is_one(w)) {
    FpPoly y = gcd(w, c, p);
    FpPoly fac = divmod(w, y, p).first;
    if (fac.size() > 1) out.push_back({monic(fac, p), i});
    w = y;
    c = divmod(c, y, p).first;
    ++i;
  }
  if (c.size() > 1) {
    // c is a p-th power: its p-th root keeps every p-th coefficient.
    FpPoly root;
    for (std::size_t j = 0; j < c.size(); j += p) root.push_back(c[j]);
    for (auto& [g, mult] : squarefree(monic(root, p), p)) out.push_back({g, mult * p});
  }
  return out;
}

/// Distinct-degree factorization of a square-free monic polynomial.
std::vector<std::size_t> ddf_degrees(FpPoly g, std::uint64_t p) {
  std::vector<std::size_t> out;
  const FpPoly x{0, 1};
  FpPoly h = rem(x, g, p);
  for (std::size_t i = 1; g.size() - 1 >= 2 * i; ++i) {
    h = powmod(h, p, g, p);
    FpPoly t = gcd(g, sub(h, x, p), p);
    if (t.size() > 1) {
      for (std::size_t c = 0; c < (t.size() - 1) / i; ++c) out.push_back(i);
      g = divmod(g, t, p).first;
      h = rem(h, g, p);
    }
  }
  if (g.size() > 1) out.push_back(g.size() - 1);
  return out;
}

bool squarefree_mod(const IntPolynomial& f, std::uint64_t p) {
  const FpPoly fp = reduce(f, p);
  if (fp.size() != f.coeffs().size()) return false;
  return is_one(gcd(fp, derivative(fp, p), p));
}

std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 3; n <= limit; n += 2) {
    if (is_prime_u64(n)) out.push_back(n);
  }
  return out;
}

constexpr std::uint64_t kPrimeSearchCap = 5000;

mpz_class symmetric_mod(const mpz_class& v, const mpz_class& modulus) {
  mpz_class r = v % modulus;
  if (r < 0) r += modulus;
  if (2 * r > modulus) r -= modulus;
  return r;
}

/// Value of the polynomial at x modulo m (Horner).
mpz_class eval_mod(const IntPolynomial& f, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = (acc * x + f.coeff(i)) % m;
  return acc;
}

IntPolynomial derivative(const IntPolynomial& f) {
  std::vector<mpz_class> out;
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) out.push_back(f.coeff(i) * static_cast<unsigned long>(i));
  return IntPolynomial(std::move(out));
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<mpz_class> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t IntPolynomial::degree() const {
  if (coeffs_.empty()) throw InvalidArgument("degree of the zero polynomial");
  return coeffs_.size() - 1;
}

const mpz_class& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw InvalidArgument("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPolynomial IntPolynomial::primitive() const {
  if (is_zero()) throw InvalidArgument("primitive part of the zero polynomial");
  mpz_class g = content();
  if (leading() < 0) g = -g;
  std::vector<mpz_class> out;
  for (const auto& c : coeffs_) out.push_back(c / g);
  return IntPolynomial(std::move(out));
}

mpq_class IntPolynomial::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + mpq_class(coeffs_[i]);
  return acc;
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << (coeffs_[i] < 0 ? " - " : " + ");
    else if (coeffs_[i] < 0) os << "-";
    mpz_class mag = abs(coeffs_[i]);
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(out));
}

CoefficientProfile CoefficientProfile::make(std::vector<mpz_class> a) {
  if (a.size() < 2) throw ProfileMismatch("profile needs at least a_0 and a_1");
  if (a.front() == 0 || a.back() == 0) throw ProfileMismatch("a_0 and a_n must be nonzero");
  mpz_class prod = abs(a.front() * a.back());
  while (prod % 2 == 0) prod /= 2;
  if (prod != 1) throw ProfileMismatch("|a_0 a_n| must be a power of two");
  return {std::move(a)};
}

CoefficientProfile CoefficientProfile::ones(std::size_t n) {
  return make(std::vector<mpz_class>(n + 1, 1));
}

CoefficientProfile random_profile(std::size_t n, std::mt19937_64& rng) {
  static constexpr std::array<long, 6> kEnds = {1, -1, 2, -2, 4, -4};
  std::vector<mpz_class> a(n + 1);
  for (std::size_t i = 0; i <= n; ++i) a[i] = static_cast<long>(rng() % 11) - 5;
  a[0] = kEnds[rng() % kEnds.size()];
  a[n] = kEnds[rng() % kEnds.size()];
  return CoefficientProfile::make(std::move(a));
}

IntPolynomial build_G(const APSpec& spec, std::size_t n, const CoefficientProfile& profile) {
  if (profile.a.size() != n + 1) {
    throw ProfileMismatch("profile has " + std::to_string(profile.a.size()) + " entries, need " + std::to_string(n + 1));
  }
  std::vector<mpz_class> coeffs(n + 1);
  mpz_class tail = 1;  // prod_{i=j}^{n-1} (alpha + i d)
  for (std::size_t j = n + 1; j-- > 0;) {
    if (j < n) tail *= static_cast<unsigned long>(spec.term(j));
    coeffs[j] = profile.a[j] * tail;
  }
  return IntPolynomial(std::move(coeffs));
}

std::vector<std::size_t> mod_p_degree_multiset(const IntPolynomial& f, std::uint64_t p) {
  if (f.is_zero()) throw InvalidArgument("mod_p_degree_multiset of the zero polynomial");
  if (mod_mpz(f.leading(), p) == 0) throw LeadingVanishes("p=" + std::to_string(p) + " divides the leading coefficient");
  std::vector<std::size_t> out;
  for (auto& [g, mult] : squarefree(monic(reduce(f, p), p), p)) {
    for (std::size_t d : ddf_degrees(g, p)) {
      for (std::size_t r = 0; r < mult; ++r) out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<mpq_class>> rational_roots(const IntPolynomial& input) {
  if (input.is_zero()) throw InvalidArgument("rational_roots of the zero polynomial");
  std::vector<mpq_class> roots;
  std::vector<mpz_class> c = input.primitive().coeffs();
  if (c.front() == 0) {
    roots.push_back(0);
    while (c.front() == 0) c.erase(c.begin());
  }
  const IntPolynomial f(c);
  if (f.degree() == 0) return roots;

  std::optional<std::uint64_t> good;
  for (std::uint64_t p : odd_primes_up_to(kPrimeSearchCap)) {
    if (mod_mpz(f.leading(), p) != 0 && squarefree_mod(f, p)) {
      good = p;
      break;
    }
  }
  if (!good) return std::nullopt;
  const std::uint64_t p = *good;

  // |root| <= B = 1 + max |c_i / c_n|; lc * root is an integer of size <= |lc| B.
  const mpz_class lc = abs(f.leading());
  mpz_class max_c = 0;
  for (const auto& ci : f.coeffs()) max_c = std::max(max_c, mpz_class(abs(ci)));
  const mpz_class bound = lc * (1 + max_c / lc + 1);
  const IntPolynomial df = derivative(f);

  for (std::uint64_t r = 0; r < p; ++r) {
    if (eval_mod(f, r, p) != 0) continue;
    mpz_class root = r;
    mpz_class modulus = p;
    while (modulus <= 2 * bound) {
      modulus *= modulus;
      mpz_class inv;
      mpz_class deriv = eval_mod(df, root, modulus);
      if (deriv < 0) deriv += modulus;
      mpz_invert(inv.get_mpz_t(), deriv.get_mpz_t(), modulus.get_mpz_t());
      mpz_class value = eval_mod(f, root, modulus);
      root = (root - value * inv) % modulus;
      if (root < 0) root += modulus;
    }
    const mpz_class numerator = symmetric_mod(f.leading() * root, modulus);
    const mpq_class candidate(numerator, f.leading());
    mpq_class canon = candidate;
    canon.canonicalize();
    if (f.evaluate(canon) == 0) roots.push_back(canon);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

bool DegreeSet::complement_closed() const {
  return std::all_of(possible.begin(), possible.end(), [this](std::size_t d) { return d <= n && contains(n - d); });
}

DegreeSet certify_degree_set(const IntPolynomial& input, std::span<const std::uint64_t> primes,
                             bool rational_root_check) {
  const IntPolynomial f = input.primitive();
  DegreeSet result;
  result.n = f.degree();
  std::vector<bool> allowed(result.n + 1, true);
  for (std::uint64_t p : primes) {
    std::vector<bool> sums(result.n + 1, false);
    sums[0] = true;
    for (std::size_t d : mod_p_degree_multiset(f, p)) {
      for (std::size_t s = result.n + 1; s-- > d;) {
        if (sums[s - d]) sums[s] = true;
      }
    }
    for (std::size_t s = 0; s <= result.n; ++s) allowed[s] = allowed[s] && sums[s];
  }
  if (rational_root_check && result.n >= 1) {
    const auto roots = rational_roots(f);
    if (!roots) {
      result.linear = LinearEvidence::Unresolved;
    } else if (roots->empty()) {
      result.linear = LinearEvidence::Excluded;
      allowed[1] = false;
      allowed[result.n - 1] = false;
    } else {
      result.linear = LinearEvidence::RationalRoot;
    }
  }
  allowed[0] = true;
  allowed[result.n] = true;
  for (std::size_t s = 0; s <= result.n; ++s) {
    if (allowed[s]) result.possible.insert(s);
  }
  return result;
}

std::vector<std::uint64_t> default_oracle_primes(const IntPolynomial& input, std::uint64_t d, std::size_t budget) {
  const IntPolynomial f = input.primitive();
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : odd_primes_up_to(kPrimeSearchCap)) {
    if (out.size() >= budget) break;
    if (d % p == 0 || mod_mpz(f.leading(), p) == 0) continue;
    if (!squarefree_mod(f, p)) continue;
    out.push_back(p);
  }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::Fail: return "FAIL";
  }
  return "?";
}

OracleResult check_instance(const APSpec& spec, std::size_t n, const CoefficientProfile& profile,
                            std::span<const std::uint64_t> primes) {
  const IntPolynomial g = build_G(spec, n, profile).primitive();
  OracleResult result;
  if (primes.empty()) {
    result.primes = default_oracle_primes(g, spec.d);
  } else {
    result.primes.assign(primes.begin(), primes.end());
  }
  result.degrees = certify_degree_set(g, result.primes, true);
  const auto roots = rational_roots(g);
  if (roots) result.roots = *roots;

  if (n >= 3 && result.roots.size() >= 2) {
    // Two coprime primitive linear factors multiply to an integer factor of degree 2.
    IntPolynomial quad(std::vector<mpz_class>{1});
    for (std::size_t i = 0; i < 2; ++i) {
      const mpq_class& r = result.roots[i];
      quad = quad * IntPolynomial(std::vector<mpz_class>{mpz_class(-r.get_num()), r.get_den()});
    }
    result.forbidden_factor = quad;
    result.verdict = Verdict::Fail;
    return result;
  }
  bool shaped = std::all_of(result.degrees.possible.begin(), result.degrees.possible.end(),
                            [n](std::size_t d) { return d <= 1 || d + 1 >= n; });
  // For a cubic every degree is allowed and the shape can only break through
  // a repeated root, which the root list cannot see without a square-free
  // reduction.
  if (n == 3) shaped = roots.has_value();
  result.verdict = shaped ? Verdict::Pass : Verdict::Inconclusive;
  return result;
}

}  // namespace hlirred
