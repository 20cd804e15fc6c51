#pragma once

#include "cf/source.hpp"

namespace cf {

// A_N : B_N in the extended complex plane; B = 0 means value-at-infinity.
struct ProjectiveValue {
    Scalar A, B;
    bool is_infinite() const { return B.is_zero(); }
};

// State of the canonical three-term recurrences after N terms, seeded with
// A_{-1} = 1, B_{-1} = 0, A_0 = b0, B_0 = 1. renorm_log is the base-2
// exponent that has been divided out of all four entries (complex mode only);
// the projective class of (A, B) is unaffected.
struct Convergent {
    std::int64_t N = 0;
    Scalar A, A_prev, B, B_prev;
    long renorm_log = 0;
};

struct EvalOptions {
    // rescale when max(|A_N|, |B_N|) leaves the 10^(+-digits/2) window
    bool renormalize = true;
};

// Invoke visit on the convergent states N = 0..N_max in order.
void walk_convergents(const CoefficientSource& src, std::int64_t N_max,
                      const std::function<void(const Convergent&)>& visit,
                      const EvalOptions& opts = {});

std::vector<Convergent> convergents(const CoefficientSource& src, std::int64_t N_max,
                                    const EvalOptions& opts = {});

ProjectiveValue value_at(const CoefficientSource& src, std::int64_t N,
                         const EvalOptions& opts = {});

// Both determinant residuals at index N (zero when the identities hold):
//   A_N B_{N-1} - A_{N-1} B_N - (-1)^(N-1) prod_{i<=N} a_i
//   A_{N+1} B_{N-1} - A_{N-1} B_{N+1} - (-1)^(N-1) b_{N+1} prod_{i<=N} a_i
// Evaluated without renormalization so both are exact in rational mode.
std::pair<Scalar, Scalar> determinant_residual(const CoefficientSource& src, std::int64_t N);

// f_N - f_{N-1} computed as (-1)^(N-1) prod a_i / (B_N B_{N-1}).
Scalar approximant_gap(const CoefficientSource& src, std::int64_t N);

}  // namespace cf
