// JSON rendering of certificates and verification reports (schema "hl-irred/1").
// Integers that can exceed 2^53 (primes, window terms, big integers) are
// written as decimal strings.
#pragma once

#include <json.hpp>

#include "hlirred/criterion.hpp"
#include "hlirred/poly_oracle.hpp"
#include "hlirred/prime_table.hpp"
#include "hlirred/smooth_scan.hpp"

namespace hlirred {

inline constexpr const char* kSchema = "hl-irred/1";

nlohmann::json to_json(const Interval& x);
nlohmann::json to_json(const LemmaTrace& trace);
nlohmann::json to_json(const ExclusionCertificate& cert);
nlohmann::json to_json(const ExclusionOutcome& outcome);
nlohmann::json to_json(const TheoremReport& report);
nlohmann::json to_json(const GapReport& report);
nlohmann::json to_json(const EnvelopeRow& row);
nlohmann::json to_json(const LBoundRow& row);
nlohmann::json to_json(const SmoothHit& hit);
nlohmann::json to_json(const OracleResult& result);

/// Parses a certificate written by to_json; throws InvalidArgument on
/// malformed input.
ExclusionCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace hlirred
