#pragma once

#include "cf/eval.hpp"

namespace cf {

// Finite-depth evidence that a convergence criterion holds. Certificates are
// depth-stamped: they assert the checked inequalities up to `depth` only,
// except when `exhaustive` is set (constant coefficient families, where one
// inequality covers every index analytically).
struct ConvergenceCertificate {
    std::string criterion;  // "worpitzky" | "lange" | "wall-empirical"
    bool certified = false;
    bool exhaustive = false;
    std::int64_t depth = 0;
    Json witness;         // criterion-specific scalars as text
    std::string refusal;  // set iff !certified: first failing index/inequality
};

// Requires unit denominators (use to_unit_denominators first). Certifies iff
// |a_n| <= 1/4 for n <= depth, and additionally checks the value-region
// claim: every approximant of the K part lies in the open disc |w| < 1/2.
ConvergenceCertificate worpitzky_check(const CoefficientSource& src, std::int64_t depth);

// Twin-region criterion for K(c_n^2/1): certifies iff |alpha| < rho < |alpha+1|
// and, for n <= depth, |c_(2n-1) +- i alpha| <= rho and
// |c_(2n) +- i(1+alpha)| >= rho. All comparisons are made on squared moduli,
// so rho enters as rho_sq; rational-mode checks are exact.
ConvergenceCertificate lange_check(const std::function<Scalar(std::int64_t)>& c,
                                   const Scalar& alpha, const Scalar& rho_sq,
                                   std::int64_t depth);

// Witness pair for tails with constant odd-index terms c_(2k-1)^2 = 1/a.
// rho_sq is always exact in rational mode; rho itself is an exact Scalar only
// when representable (perfect square), else nullopt in rational mode and a
// rounded value in complex mode.
struct LangeParams {
    Scalar alpha;
    Scalar rho_sq;
    std::optional<Scalar> rho;
};

// With sqrt(1/a) = c + i d (principal, c > 0):
//   alpha = ((c^2+d^2)/2)(1 + i d/c),
//   rho^2 = ((c^2+d^2)/(4c^2))((c^2+d^2)^2 + 4c^2).
// Then |alpha| < rho < |alpha+1| always (rho^2 - |alpha|^2 = c^2 + d^2 and
// |alpha+1|^2 = rho^2 + 1) and |sqrt(1/a) +- i alpha| = rho exactly.
// Errors when a lies on the ray (-inf, 0].
LangeParams lange_find_params(const Scalar& a);

struct EmpiricalLimit {
    ProjectiveValue estimate;  // last finite approximant
    bool converged = false;    // |last even - last odd| < tol
    Json diagnostics;
};

// Walks approximants to `depth`, skipping indices with B_N = 0. Reports the
// last approximant, the max consecutive gap over the final quarter of
// indices, last values and gaps of the even and odd subsequences, and the
// bounds appearing in the bounded-approximant/bounded-subsequence linkage
// between even and odd limits (max |f_N| and max |a_2k| seen).
// Errors when every approximant is at infinity or depth < 4.
EmpiricalLimit empirical_limit(const CoefficientSource& src, std::int64_t depth,
                               const Rational& tol);

// Certificate wrapper over empirical_limit: certifies iff the even and odd
// subsequences agree within tol at depth; witness carries the two bounds.
ConvergenceCertificate wall_empirical_certificate(const CoefficientSource& src,
                                                  std::int64_t depth, const Rational& tol);

}  // namespace cf
