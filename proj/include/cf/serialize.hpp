#pragma once

#include "cf/convergence.hpp"
#include "cf/identities.hpp"
#include "cf/transforms.hpp"

namespace cf {

// The serialized form of a source is its descriptor:
//   {"b0": <scalar>, "terms": [["a1","b1"], ...]}        explicit finite list
//   {"b0": <scalar>, "family": <name>, "params": {...}}  named family
//   {"transform": <name>, ..., "of": <source JSON>}      derived source
Json source_json(const CoefficientSource& src);

// Rebuilds a source from its JSON form. Named families are the identity
// catalog ids plus:
//   golden    a_n = b_n = 1 (no params)
//   constant  params {"a","b"}, every term identical
//   linear    params {"a_start","a_step","b_start","b_step"}
// constant/linear accept an optional top-level "length". Derived forms replay
// the recorded transform chain; descriptors recorded as "custom" (opaque
// callables) are rejected as non-reconstructible.
CoefficientSource source_from_json(const Json& j, int digits = 50);

Json certificate_json(const ConvergenceCertificate& c);

// target serializes as the scalar text, or "inf" for a target at the point
// at infinity.
Json report_json(const VerificationReport& r);

// CSV row matching report_csv_header(); params appears as compact JSON.
std::string report_csv_header();
std::string report_csv_row(const VerificationReport& r);

}  // namespace cf
