#pragma once

#include "cf/scalar.hpp"

#include "json.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace cf {

using Json = nlohmann::ordered_json;

struct Term {
    Scalar a, b;
};

// A replayable generator for b0 + K(a_n/b_n). term(n) is pure: calling it
// twice with the same n gives identical values, so sources are safe to share
// across threads. Transformed sources capture their upstream by value.
class CoefficientSource {
  public:
    CoefficientSource(Scalar b0, std::function<Term(std::int64_t)> term,
                      std::optional<std::int64_t> length, Json descriptor);

    const Scalar& b0() const { return b0_; }
    Term term(std::int64_t n) const;
    std::optional<std::int64_t> length() const { return length_; }
    const Json& descriptor() const { return descriptor_; }

  private:
    Scalar b0_;
    std::function<Term(std::int64_t)> term_;
    std::optional<std::int64_t> length_;
    Json descriptor_;
};

// finite source from an explicit term list
CoefficientSource make_terms_source(Scalar b0, std::vector<Term> terms);

// drop the first m-1 partial fractions; b0 becomes 0
CoefficientSource tail(const CoefficientSource& src, std::int64_t m);

// a'_n = r(n) r(n-1) a_n, b'_n = r(n) b_n with r(0) = 1; approximants are
// unchanged at every index. r(n) = 0 is rejected when the term is produced.
// r_descriptor documents r for serialization ("custom" if not given).
CoefficientSource equivalence_transform(const CoefficientSource& src,
                                        std::function<Scalar(std::int64_t)> r,
                                        Json r_descriptor = Json());

// equivalence transform with r(n) = 1/b_n, giving all b'_n = 1
CoefficientSource to_unit_denominators(const CoefficientSource& src);

// equivalence transform with r(n) = 1/(r(n-1) a_n), giving all a'_n = 1
CoefficientSource to_unit_numerators(const CoefficientSource& src);

}  // namespace cf
