#include "hlirred/criterion.hpp"

#include <algorithm>
#include <set>

#include "hlirred/errors.hpp"
#include "hlirred/smooth_scan.hpp"
#include "modarith.hpp"

namespace hlirred {

namespace {

void check_k_range(std::uint64_t n, std::uint64_t k) {
  if (k < 1 || 2 * k > n) {
    throw InvalidArgument("need 1 <= k <= n/2, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

ProductWindow tail_window(const APSpec& spec, std::uint64_t n, std::uint64_t k) {
  return ProductWindow::make(spec.alpha + spec.d * (n - k), spec.d, k);
}

/// Smallest 1-based j with p | alpha + (j-1)d; 0 when p | d.
std::uint64_t first_j(const APSpec& spec, std::uint64_t p) {
  if (spec.d % p == 0) return 0;
  return 1 + detail::first_multiple_index(spec.alpha, spec.d, p);
}

std::uint64_t ord_p_u64(std::uint64_t x, std::uint64_t p) {
  std::uint64_t e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

bool threshold_ok(const APSpec& spec, std::uint64_t k, std::uint64_t p) {
  return p > spec.d && p >= std::min(2 * k, spec.d * (spec.d - 1));
}

/// The exclusion condition checked term by term, independent of any
/// factorization routine.
bool condition_holds(const APSpec& spec, std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (!is_prime_u64(p) || !threshold_ok(spec, k, p)) return false;
  bool divides_tail = false;
  for (std::uint64_t j = 1; j <= k; ++j) {
    if (spec.term(n - j) % p == 0) divides_tail = true;
    if (spec.term(j - 1) % p == 0) return false;
  }
  return divides_tail;
}

std::uint64_t max_prime_of_window(const ProductWindow& w, const PrimeTable& table) {
  std::uint64_t best = 1;
  for (std::uint64_t i = 0; i < w.k; ++i) {
    for (auto [p, e] : factor_u64(w.term(i), table)) best = std::max(best, p);
  }
  return best;
}

std::size_t omega_by_terms(const ProductWindow& w, const PrimeTable& table) {
  std::set<std::uint64_t> primes;
  for (std::uint64_t i = 0; i < w.k; ++i) {
    for (auto [p, e] : factor_u64(w.term(i), table)) primes.insert(p);
  }
  return primes.size();
}

ExclusionOutcome finalize(ExclusionCertificate cert, const PrimeTable& table) {
  if (!recheck_certificate(cert, table)) {
    return Undecided{cert.n, cert.k, "certificate for rule " + rule_name(cert.rule) + " failed its self-check"};
  }
  return cert;
}

}  // namespace

PhiResult phi_check(const APSpec& spec, std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (p < 2) throw InvalidArgument("phi_check needs a prime p");
  PhiResult result;
  result.trace.p = p;
  const std::uint64_t j0 = first_j(spec, p);
  if (j0 == 0) {
    result.holds = true;
    return result;
  }
  if (j0 <= k) {
    throw PrecondViolated("p=" + std::to_string(p) + " divides alpha + (j-1)d for j=" + std::to_string(j0) +
                          " <= k=" + std::to_string(k));
  }
  result.trace.j0 = j0;
  result.trace.l0 = spec.term(j0 - 1) / p;
  result.holds = true;
  // ord_p(Delta_j) only grows at j = j0 + s p, and phi_j decreases between
  // jumps, so the maximum over 1 <= j <= n is attained at a jump.
  std::uint64_t ord = 0;
  for (std::uint64_t j = j0; j <= n; j += p) {
    ord += ord_p_u64(spec.term(j - 1), p);
    const auto lhs = static_cast<unsigned __int128>(ord) * result.trace.worst_phi_den;
    const auto rhs = static_cast<unsigned __int128>(result.trace.worst_phi_num) * j;
    if (lhs > rhs) {
      result.trace.worst_j = j;
      result.trace.worst_phi_num = ord;
      result.trace.worst_phi_den = j;
    }
    if (static_cast<unsigned __int128>(ord) * k >= j) result.holds = false;
  }
  return result;
}

std::optional<CriterionWitness> find_criterion_prime(const APSpec& spec, std::uint64_t n, std::uint64_t k,
                                                     const PrimeTable& table) {
  check_k_range(n, k);
  const ProductWindow tail = tail_window(spec, n, k);
  std::uint64_t best = 0;
  for (const TermFactor& tf : factor_terms(tail, table)) {
    if (tf.prime <= best || !threshold_ok(spec, k, tf.prime)) continue;
    if (first_j(spec, tf.prime) > k) best = tf.prime;
  }
  if (best == 0) return std::nullopt;
  return CriterionWitness{best, phi_check(spec, n, k, best).trace};
}

std::string rule_name(const ExclusionRule& rule) {
  struct Visitor {
    std::string operator()(const rule::CriterionPrime&) const { return "criterion_prime"; }
    std::string operator()(const rule::OmegaGap&) const { return "omega_gap"; }
    std::string operator()(const rule::SmallCaseEmpty&) const { return "small_case_empty"; }
    std::string operator()(const rule::LinearFactorAllowed&) const { return "linear_factor_allowed"; }
  };
  return std::visit(Visitor{}, rule);
}

std::uint64_t omega_1(std::uint64_t k, const PrimeTable& table) {
  if (k < 1) throw InvalidArgument("omega_1 needs k >= 1");
  return std::max(window_omega(ProductWindow::make(1, 4, k), table),
                  window_omega(ProductWindow::make(3, 4, k), table));
}

ScanContext ScanContext::build(const PrimeTable& table, std::uint64_t scan_limit, std::uint64_t k_max,
                               unsigned threads) {
  ScanContext ctx;
  ctx.scan_limit_ = scan_limit;
  ctx.omega_1_.assign(k_max + 1, 0);
  for (std::uint64_t alpha : {1, 3}) {
    std::set<std::uint64_t> primes;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
      for (auto [p, e] : factor_u64(alpha + 4 * (k - 1), table)) primes.insert(p);
      ctx.omega_1_[k] = std::max<std::uint64_t>(ctx.omega_1_[k], primes.size());
    }
  }
  for (std::uint64_t k = 2; k <= 6; ++k) {
    for (const SmoothHit& hit : small_k_exceptions(k, scan_limit, table, threads)) ctx.hits_[k].push_back(hit.m);
  }
  return ctx;
}

std::uint64_t ScanContext::omega_1(std::uint64_t k) const {
  if (k < 1 || k >= omega_1_.size()) throw InvalidArgument("omega_1 cache does not cover k=" + std::to_string(k));
  return omega_1_[k];
}

const std::vector<std::uint64_t>& ScanContext::smooth_hits(std::uint64_t k) const {
  if (k < 2 || k > 6) throw InvalidArgument("smooth hits exist only for 2 <= k <= 6");
  return hits_[k];
}

bool ScanContext::is_smooth_hit(std::uint64_t k, std::uint64_t m) const {
  const auto& hits = smooth_hits(k);
  return std::binary_search(hits.begin(), hits.end(), m);
}

ExclusionOutcome exclude_factor_degree(const APSpec& spec, std::uint64_t n, std::uint64_t k, const PrimeTable& table,
                                       const ScanContext& ctx) {
  if (k == 1) return finalize(ExclusionCertificate{n, 1, spec, rule::LinearFactorAllowed{}, false}, table);
  check_k_range(n, k);
  const std::uint64_t m = spec.alpha + spec.d * (n - k);
  auto certified = [&](ExclusionRule rule, std::uint64_t p) {
    ExclusionCertificate cert{n, k, spec, std::move(rule), false};
    cert.verified_by_phi_oracle = phi_check(spec, n, k, p).holds;
    return finalize(std::move(cert), table);
  };

  const auto direct = find_criterion_prime(spec, n, k, table);
  // A prime above dk cannot divide the head alpha ... alpha + (k-1)d.
  if (direct && direct->p > spec.d * k) return certified(rule::CriterionPrime{direct->p, direct->trace}, direct->p);
  if (spec.d != 4) {
    if (direct) return certified(rule::CriterionPrime{direct->p, direct->trace}, direct->p);
    return Undecided{n, k, "no criterion prime; omega and smooth rules need d = 4"};
  }

  if (k >= 7) {
    const ProductWindow tail = tail_window(spec, n, k);
    const std::uint64_t omega = window_omega(tail, table);
    const std::uint64_t w1 = k <= ctx.k_max() ? ctx.omega_1(k) : omega_1(k, table);
    if (omega > w1) {
      std::uint64_t best = 0;
      for (const TermFactor& tf : factor_terms(tail, table)) {
        if (tf.prime > k && tf.prime >= std::min<std::uint64_t>(2 * k, 12) && first_j(spec, tf.prime) > k) {
          best = std::max(best, tf.prime);
        }
      }
      if (best != 0) {
        return certified(rule::OmegaGap{best, phi_check(spec, n, k, best).trace, omega, w1}, best);
      }
    }
  } else if (ctx.is_smooth_hit(k, m)) {
    ExclusionCertificate cert = resolve_exception(m, k, table);
    if (cert.n != n || cert.spec.alpha != spec.alpha) {
      return Undecided{n, k, "smooth window resolved to a different instance"};
    }
    return finalize(std::move(cert), table);
  } else if (!direct && m <= ctx.scan_limit()) {
    return finalize(ExclusionCertificate{n, k, spec, rule::SmallCaseEmpty{ctx.scan_limit()}, false}, table);
  }

  if (direct) return certified(rule::CriterionPrime{direct->p, direct->trace}, direct->p);
  return Undecided{n, k, "no rule produced a witness"};
}

bool recheck_certificate(const ExclusionCertificate& cert, const PrimeTable& table) {
  const APSpec& spec = cert.spec;
  if (spec.alpha < 1 || spec.alpha >= spec.d) return false;
  if (cert.k < 1 || 2 * cert.k > cert.n) return false;

  struct Visitor {
    const ExclusionCertificate& cert;
    const PrimeTable& table;

    bool operator()(const rule::CriterionPrime& r) const {
      return r.trace.p == r.p && condition_holds(cert.spec, cert.n, cert.k, r.p);
    }
    bool operator()(const rule::OmegaGap& r) const {
      if (cert.spec.d != 4 || cert.k < 7) return false;
      if (!(r.p > cert.k && r.p >= std::min<std::uint64_t>(2 * cert.k, 12))) return false;
      if (!condition_holds(cert.spec, cert.n, cert.k, r.p)) return false;
      const std::size_t omega = omega_by_terms(ProductWindow::make(cert.m(), 4, cert.k), table);
      const std::size_t w1 = std::max(omega_by_terms(ProductWindow::make(1, 4, cert.k), table),
                                      omega_by_terms(ProductWindow::make(3, 4, cert.k), table));
      return omega == r.omega && w1 == r.omega_1 && omega > w1;
    }
    bool operator()(const rule::SmallCaseEmpty& r) const {
      if (cert.spec.d != 4 || cert.k > 6 || cert.m() > r.scan_limit) return false;
      return max_prime_of_window(ProductWindow::make(cert.m(), 4, cert.k), table) > 4 * cert.k;
    }
    bool operator()(const rule::LinearFactorAllowed&) const { return cert.k == 1; }
  };
  return std::visit(Visitor{cert, table}, cert.rule);
}

bool TheoremReport::ok() const { return undecided_count() == 0; }

std::size_t TheoremReport::undecided_count() const {
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [](const ExclusionOutcome& o) {
    return std::holds_alternative<Undecided>(o);
  }));
}

TheoremReport verify_theorem(const APSpec& spec, std::uint64_t n, const PrimeTable& table, const ScanContext& ctx) {
  if (spec.d != 4 || (spec.alpha != 1 && spec.alpha != 3)) {
    throw InvalidArgument("verify_theorem needs d = 4 and alpha in {1, 3}");
  }
  TheoremReport report{spec, n, {}};
  for (std::uint64_t k = 1; 2 * k <= n; ++k) report.outcomes.push_back(exclude_factor_degree(spec, n, k, table, ctx));
  return report;
}

std::vector<LBoundRow> l_bound_sweep(std::uint64_t k_from, std::uint64_t k_to, const PrimeTable& table) {
  std::vector<LBoundRow> rows;
  for (std::uint64_t k = k_from; k <= k_to; ++k) {
    const std::uint64_t w1 = omega_1(k, table);
    rows.push_back({k, w1, L_bound(LBoundInput{k, w1, 4, 4})});
  }
  return rows;
}

}  // namespace hlirred
