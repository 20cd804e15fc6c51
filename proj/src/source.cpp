#include "cf/source.hpp"

namespace cf {

CoefficientSource::CoefficientSource(Scalar b0, std::function<Term(std::int64_t)> term,
                                     std::optional<std::int64_t> length, Json descriptor)
    : b0_(std::move(b0)),
      term_(std::move(term)),
      length_(length),
      descriptor_(std::move(descriptor)) {}

Term CoefficientSource::term(std::int64_t n) const {
    if (n < 1) throw error("term index must be >= 1");
    if (length_ && n > *length_)
        throw error("finite source has only " + std::to_string(*length_) + " terms, requested " +
                    std::to_string(n));
    return term_(n);
}

CoefficientSource make_terms_source(Scalar b0, std::vector<Term> terms) {
    Json desc;
    desc["b0"] = b0.str();
    desc["terms"] = Json::array();
    for (const Term& t : terms) desc["terms"].push_back(Json::array({t.a.str(), t.b.str()}));
    auto n = static_cast<std::int64_t>(terms.size());
    auto fn = [terms = std::move(terms)](std::int64_t k) { return terms[static_cast<size_t>(k - 1)]; };
    return CoefficientSource(std::move(b0), std::move(fn), n, std::move(desc));
}

CoefficientSource tail(const CoefficientSource& src, std::int64_t m) {
    if (m < 1) throw error("tail shift must be >= 1");
    std::optional<std::int64_t> len;
    if (src.length()) {
        if (m > *src.length()) throw error("tail shift exceeds finite source length");
        len = *src.length() - m + 1;
    }
    Json desc;
    desc["transform"] = "tail";
    desc["m"] = m;
    desc["of"] = src.descriptor();
    Scalar zero = src.b0().is_rational() ? Scalar() : Scalar(BigComplex::zero(src.b0().digits()));
    auto fn = [src, m](std::int64_t n) { return src.term(n + m - 1); };
    return CoefficientSource(std::move(zero), std::move(fn), len, std::move(desc));
}

CoefficientSource equivalence_transform(const CoefficientSource& src,
                                        std::function<Scalar(std::int64_t)> r, Json r_descriptor) {
    Json desc;
    desc["transform"] = "equivalence";
    desc["r"] = r_descriptor.is_null() ? Json("custom") : r_descriptor;
    desc["of"] = src.descriptor();
    auto fn = [src, r](std::int64_t n) {
        Scalar rn = r(n);
        if (rn.is_zero()) throw error("equivalence transform requires r(n) != 0 (n=" + std::to_string(n) + ")");
        Term t = src.term(n);
        if (n == 1) return Term{rn * t.a, rn * t.b};
        Scalar rp = r(n - 1);
        if (rp.is_zero())
            throw error("equivalence transform requires r(n) != 0 (n=" + std::to_string(n - 1) + ")");
        return Term{rn * rp * t.a, rn * t.b};
    };
    return CoefficientSource(src.b0(), std::move(fn), src.length(), std::move(desc));
}

CoefficientSource to_unit_denominators(const CoefficientSource& src) {
    Json desc;
    desc["transform"] = "unit-denominators";
    desc["of"] = src.descriptor();
    auto fn = [src](std::int64_t n) -> Term {
        Term t = src.term(n);
        if (t.b.is_zero())
            throw error("unit-denominator form requires b_n != 0 (n=" + std::to_string(n) + ")");
        Scalar one = t.b / t.b;
        if (n == 1) return Term{t.a / t.b, one};
        Scalar bp = src.term(n - 1).b;
        if (bp.is_zero())
            throw error("unit-denominator form requires b_n != 0 (n=" + std::to_string(n - 1) + ")");
        return Term{t.a / (t.b * bp), one};
    };
    return CoefficientSource(src.b0(), std::move(fn), src.length(), std::move(desc));
}

CoefficientSource to_unit_numerators(const CoefficientSource& src) {
    Json desc;
    desc["transform"] = "unit-numerators";
    desc["of"] = src.descriptor();
    // r(n) = 1/(r(n-1) a_n) has no closed form in general; rebuild the prefix
    // per call to keep term() pure and cache-free (O(n) per term).
    auto fn = [src](std::int64_t n) -> Term {
        Scalar r, one;
        for (std::int64_t k = 1; k <= n; ++k) {
            Scalar a = src.term(k).a;
            if (a.is_zero())
                throw error("unit-numerator form requires a_n != 0 (n=" + std::to_string(k) + ")");
            if (k == 1) {
                one = a / a;
                r = one / a;
            } else {
                r = one / (r * a);
            }
        }
        return Term{one, r * src.term(n).b};
    };
    return CoefficientSource(src.b0(), std::move(fn), src.length(), std::move(desc));
}

}  // namespace cf
