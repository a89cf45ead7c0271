#include "hlirred/report.hpp"

#include <charconv>
#include <string>

#include "hlirred/errors.hpp"

namespace hlirred {

namespace {

using nlohmann::json;

std::string dec(std::uint64_t v) { return std::to_string(v); }

std::uint64_t parse_dec(const json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (!j.is_string()) throw InvalidArgument("expected a decimal string");
  const std::string s = j.get<std::string>();
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) throw InvalidArgument("bad decimal string: " + s);
  return v;
}

LemmaTrace trace_from_json(const json& j) {
  LemmaTrace t;
  t.p = parse_dec(j.at("p"));
  t.j0 = j.at("j0").get<std::uint64_t>();
  t.l0 = j.at("l0").get<std::uint64_t>();
  t.worst_j = j.at("worst_j").get<std::uint64_t>();
  t.worst_phi_num = j.at("worst_phi").at(0).get<std::uint64_t>();
  t.worst_phi_den = j.at("worst_phi").at(1).get<std::uint64_t>();
  return t;
}

}  // namespace

json to_json(const Interval& x) {
  return {{"lo", x.lower().to_string(20, MPFR_RNDD)}, {"hi", x.upper().to_string(20, MPFR_RNDU)}};
}

json to_json(const LemmaTrace& t) {
  return {{"p", dec(t.p)},
          {"j0", t.j0},
          {"l0", t.l0},
          {"worst_j", t.worst_j},
          {"worst_phi", {t.worst_phi_num, t.worst_phi_den}}};
}

json to_json(const ExclusionCertificate& cert) {
  json j = {{"n", cert.n},
            {"k", cert.k},
            {"alpha", cert.spec.alpha},
            {"d", cert.spec.d},
            {"m", dec(cert.m())},
            {"rule", rule_name(cert.rule)},
            {"verified_by_phi_oracle", cert.verified_by_phi_oracle}};
  if (const auto* r = std::get_if<rule::CriterionPrime>(&cert.rule)) {
    j["p"] = dec(r->p);
    j["trace"] = to_json(r->trace);
  } else if (const auto* r = std::get_if<rule::OmegaGap>(&cert.rule)) {
    j["p"] = dec(r->p);
    j["trace"] = to_json(r->trace);
    j["omega"] = r->omega;
    j["omega_1"] = r->omega_1;
  } else if (const auto* r = std::get_if<rule::SmallCaseEmpty>(&cert.rule)) {
    j["scan_limit"] = dec(r->scan_limit);
  }
  return j;
}

json to_json(const ExclusionOutcome& outcome) {
  if (const auto* cert = std::get_if<ExclusionCertificate>(&outcome)) return to_json(*cert);
  const auto& u = std::get<Undecided>(outcome);
  return {{"n", u.n}, {"k", u.k}, {"rule", "undecided"}, {"reason", u.reason}};
}

json to_json(const TheoremReport& report) {
  json certs = json::array();
  for (const auto& o : report.outcomes) certs.push_back(to_json(o));
  return {{"n", report.n}, {"alpha", report.spec.alpha}, {"ok", report.ok()}, {"certificates", certs}};
}

json to_json(const GapReport& report) {
  json rows = json::array();
  for (const auto& t : report.thresholds) {
    rows.push_back({{"ceiling", dec(t.ceiling)},
                    {"max_gap", t.witness.gap()},
                    {"witness", {dec(t.witness.lower), dec(t.witness.upper)}}});
  }
  return {{"class", report.class_l}, {"thresholds", rows}};
}

json to_json(const EnvelopeRow& row) {
  return {{"nu", dec(row.nu)},
          {"class", row.class_l},
          {"theta", to_json(row.theta)},
          {"lower_bound", to_json(row.lower_bound)},
          {"upper_bound", to_json(row.upper_bound)},
          {"holds", row.holds}};
}

json to_json(const LBoundRow& row) {
  json l0 = json::object();
  for (auto [p, v] : row.bound.per_prime_L0) l0[dec(p)] = v;
  json hp = json::object();
  for (auto [p, v] : row.bound.h_p_used) hp[dec(p)] = v;
  return {{"k", row.k},
          {"omega_1", row.omega_1},
          {"t0", row.k - row.omega_1},
          {"radicand", row.bound.radicand.get_str()},
          {"floor_bound", row.bound.floor_bound.get_str()},
          {"value", to_json(row.bound.value)},
          {"L0", l0},
          {"h_p", hp}};
}

json to_json(const SmoothHit& hit) {
  json factors = json::object();
  for (auto [p, e] : hit.factors) factors[dec(p)] = e;
  return {{"m", dec(hit.m)}, {"k", hit.k}, {"max_prime", dec(hit.max_prime)}, {"factors", factors}};
}

json to_json(const OracleResult& result) {
  json degrees = json::array();
  for (std::size_t d : result.degrees.possible) degrees.push_back(d);
  json roots = json::array();
  for (const auto& r : result.roots) roots.push_back(r.get_str());
  json j = {{"verdict", verdict_name(result.verdict)},
            {"degrees", degrees},
            {"primes", result.primes},
            {"rational_roots", roots}};
  if (result.forbidden_factor) j["forbidden_factor"] = result.forbidden_factor->to_string();
  return j;
}

ExclusionCertificate certificate_from_json(const json& j) {
  try {
    ExclusionCertificate cert;
    cert.n = j.at("n").get<std::uint64_t>();
    cert.k = j.at("k").get<std::uint64_t>();
    cert.spec = APSpec::make(j.at("alpha").get<std::uint64_t>(), j.at("d").get<std::uint64_t>());
    cert.verified_by_phi_oracle = j.value("verified_by_phi_oracle", false);
    const std::string name = j.at("rule").get<std::string>();
    if (name == "criterion_prime") {
      cert.rule = rule::CriterionPrime{parse_dec(j.at("p")), trace_from_json(j.at("trace"))};
    } else if (name == "omega_gap") {
      cert.rule = rule::OmegaGap{parse_dec(j.at("p")), trace_from_json(j.at("trace")),
                                 j.at("omega").get<std::uint64_t>(), j.at("omega_1").get<std::uint64_t>()};
    } else if (name == "small_case_empty") {
      cert.rule = rule::SmallCaseEmpty{parse_dec(j.at("scan_limit"))};
    } else if (name == "linear_factor_allowed") {
      cert.rule = rule::LinearFactorAllowed{};
    } else {
      throw InvalidArgument("unknown certificate rule: " + name);
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace hlirred
