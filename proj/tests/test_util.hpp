#pragma once

#include "cf/eval.hpp"
#include "cf/source.hpp"

#include <random>
#include <string>
#include <vector>

namespace cft {

inline cf::Scalar rat(const std::string& s) {
    return cf::parse_scalar(s, 50);
}

inline cf::CoefficientSource mk(const std::string& b0,
                                std::vector<std::pair<std::string, std::string>> terms) {
    std::vector<cf::Term> ts;
    for (auto& [a, b] : terms) ts.push_back({rat(a), rat(b)});
    return cf::make_terms_source(rat(b0), std::move(ts));
}

// b0 = 0, a_n = b_n = 1
inline cf::CoefficientSource golden() {
    cf::Json d;
    d["b0"] = "0";
    d["family"] = "golden";
    return cf::CoefficientSource(
        cf::Scalar(), [](std::int64_t) { return cf::Term{cf::Scalar::from_long(1), cf::Scalar::from_long(1)}; },
        std::nullopt, d);
}

// integer coefficients in [-5, 5]. a_n = 0 is always resampled (it collapses
// the determinant and lets later convergent pairs degenerate to (0,0));
// b_n = 0 is resampled when nonzero_b is set (contractions need them nonzero).
inline cf::CoefficientSource random_rational_source(std::mt19937_64& rng, int nterms,
                                                    bool nonzero_b) {
    std::uniform_int_distribution<int> dist(-5, 5);
    std::vector<cf::Term> ts;
    for (int i = 0; i < nterms; ++i) {
        int a = dist(rng), b = dist(rng);
        while (a == 0) a = dist(rng);
        while (nonzero_b && b == 0) b = dist(rng);
        ts.push_back({cf::Scalar::from_long(a), cf::Scalar::from_long(b)});
    }
    return cf::make_terms_source(cf::Scalar::from_long(dist(rng)), std::move(ts));
}

// exact projective equality: A1*B2 == A2*B1 and the pairs are nondegenerate
inline bool same_projective(const cf::ProjectiveValue& x, const cf::ProjectiveValue& y) {
    return x.A * y.B == y.A * x.B && !(x.A.is_zero() && x.B.is_zero()) &&
           !(y.A.is_zero() && y.B.is_zero());
}

}  // namespace cft
