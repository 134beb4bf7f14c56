#pragma once

#include <string>

#include "folprod/fibered_manifold.hpp"
#include "folprod/verifier.hpp"

namespace folprod {

// Builds and validates a scenario from the JSON document (schema: phi,
// speed, family, optional n_max and tolerances). Structural problems throw
// ParseError with the field path; domain rejections surface as
// ValidationError (field, reason) except the hypothesis codes OrbitNotClosed
// and NegativeSpeed, which keep their own names for the exit diagnostics.
MappingTorusScenario parse_scenario_text(const std::string& text);
MappingTorusScenario parse_scenario(const std::string& path);

// Canonical document: resolved μ, det-1 φ entries, trig terms sorted by
// frequency, explicit n_max and tolerances, sorted keys. The parser applies
// the same canonicalization, so parse ∘ serialize is the identity and the
// digest below is well-defined.
std::string serialize_scenario(const MappingTorusScenario& scenario);

std::string sha256_hex(const std::string& bytes);
std::string scenario_digest(const MappingTorusScenario& scenario);

// The machine-readable report: VerificationReport fields plus "version" and
// "scenario_digest", complex numbers as [re, im], points chart-tagged.
std::string report_to_json(const VerificationReport& report);

}  // namespace folprod
