#pragma once

#include "cf/convergence.hpp"
#include "cf/transforms.hpp"

#include <array>

namespace cf {

// Catalog of verifiable continued-fraction identities. Parameters travel as
// JSON objects of Scalar text forms, e.g. {"a":"1","x":"2"}; decimal or
// i-forms select complex-float mode at the given digit count.
//
//   entry7    params x          target 1
//   entry7a   params y (seq)    target 1
//   entry9    params a, x       target (x+a+1)/(x+1)
//   entry10   params n          target n
//   entry12   params a, x       target 1
//   entry13   params a, b, d    target a   (optional "footnote": true -> b)
//   rr        params q          cross-checked against bb at alpha = 0
//   bb        params q, alpha   cross-checked against rr
//   bb_even   params q, alpha   cross-checked against bb
enum class IdentityId { entry7, entry7a, entry9, entry10, entry12, entry13, rr, bb, bb_even };

IdentityId identity_from_string(const std::string& name);
const char* identity_name(IdentityId id);
const std::vector<IdentityId>& identity_catalog();

// Closed-form target. kind == infinite marks a target at the point at
// infinity (entry9 with x = -1); kind == cross_check marks identities whose
// target is the independent evaluation of a partner identity.
struct ClosedForm {
    enum class Kind { finite, infinite, cross_check };
    Kind kind = Kind::finite;
    Scalar value;  // meaningful only for kind == finite
};

// Scalar sequence spec shared by identity parameters and serialized
// descriptors. Indices start at 1.
//   {"kind":"constant","value":s}
//   {"kind":"linear","start":s,"step":s}       y_i = start + (i-1) step
//   {"kind":"geometric","scale":s,"ratio":s}   y_i = scale * ratio^(i-1)
//   {"kind":"list","values":[s,...]}           finite
std::function<Scalar(std::int64_t)> make_sequence(const Json& spec, int digits);
std::optional<std::int64_t> sequence_length(const Json& spec);

// The continued fraction exactly as the identity states it; entry10 includes
// the b = 0 term at position n. Throws on a violated hypothesis, naming the
// clause.
CoefficientSource cf_source(IdentityId id, const Json& params, int digits = 50);

ClosedForm closed_form(IdentityId id, const Json& params, int digits = 50);

// The longer fraction each proof contracts from: entry7/7a/9/10 recover the
// source as their even part through the unit-step scheme, entry12/13 through
// the zero-interleaved scheme, and bb is its own extension (its odd part is
// rr). Throws for rr and bb_even, which have no recorded extension.
CoefficientSource proof_extension(IdentityId id, const Json& params, int digits = 50);

// Parameter set of the recorded counterexample fixture: entry13 with
// (a,b,d) = (2,1,1) and the footnote override, converging to b = 1.
Json entry13_footnote_params();

// Partial sum sum_{i=0}^{k} (a)_i (b)_i / ((c)_i i!) of the Gauss series at
// unit argument, by incremental term ratios. Needs c + j != 0 for j < k.
Scalar hyp2f1_partial_sum(const Scalar& a, const Scalar& b, const Scalar& c, std::int64_t k);

// s_k / asymptote where s_k is the partial sum above and the asymptote is
// Gamma(c) k^(a+b-c) / (Gamma(a)Gamma(b)) for Re(c-a-b) < 0, or
// Gamma(c) log k / (Gamma(a)Gamma(b)) for c = a+b. Real parameters only;
// the ratio tends to 1 as k grows. k >= 2.
Scalar hill_ratio(const Scalar& a, const Scalar& b, const Scalar& c, std::int64_t k,
                  int digits = 50);

// One-level elimination of a k^(-p) error term: given f at depth D and D/2,
// returns (2^p f_D - f_{D/2}) / (2^p - 1). Exact rational when p is a
// rational integer and the values are rational.
Scalar richardson_limit(const Scalar& f_depth, const Scalar& f_half_depth, const Scalar& p);

// Value at h = 0 of the homographic fit (A + B h)/(1 + C h) through three
// samples. Exact when the data is exactly homographic in h; falls back to
// f[2] when the fit degenerates.
Scalar mobius_limit(const std::array<Scalar, 3>& h, const std::array<Scalar, 3>& f);

// Limit as j -> infinity of the homographic-in-j fit through g_0, g_1, g_2 at
// consecutive equally spaced j: g_1 - 2 d0 d1/(d1 - d0) with d0 = g1 - g0,
// d1 = g2 - g1. Exact for g_j = L - c/(P + jQ).
Scalar mobius_limit_equispaced(const std::array<Scalar, 3>& g);

struct VerificationReport {
    std::string id;
    Json params;
    std::int64_t depth = 0;
    int precision_digits = 0;
    ClosedForm target;
    Scalar estimate;
    Scalar abs_diff;  // real-valued, same arithmetic mode as estimate
    Json diagnostics;
    bool verdict = false;
};

// Evaluates the identity CF and compares against the closed form (or the
// partner identity for rr/bb/bb_even). Estimators: plain deepest approximant
// by default; Richardson with exponent (b-a)/d for entry13's main case;
// homographic extrapolation for entry12, the entry13 footnote fixture, and
// (with one Richardson sweep) entry13 with a = b. entry13 reports also check
// every approximant k <= 50 against the collapsed closed form a S_k/(S_k+1).
VerificationReport verify(IdentityId id, const Json& params, std::int64_t depth, int digits,
                          const Rational& tol);

}  // namespace cf
