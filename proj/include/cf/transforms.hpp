#pragma once

#include "cf/source.hpp"

namespace cf {

// Canonical contraction keeping the even-indexed approximants: term k of the
// result equals (C_k, D_k) with C_k = A_2k, D_k = B_2k exactly. Requires
// b_2k != 0 for every index the requested depth touches.
CoefficientSource even_part(const CoefficientSource& src);

// Canonical contraction keeping the odd-indexed approximants; the constant
// term becomes (b0 b1 + a1)/b1. Requires b_(2k+1) != 0.
CoefficientSource odd_part(const CoefficientSource& src);

// The four extension schemes. Each produces a longer fraction whose even part
// (cor1/cor2/cor3) or odd part (cor7) recovers the target term-by-term.
//  - cor1/cor2 read the target's own (c_n, d_n) coefficients directly.
//  - cor3 needs the target written as
//      b0 + a1/(b1 + a2) - a2 a3/(a4 + a3) - a4 a5/(a6 + a5) - ...
//    and carries that a-sequence plus b1 explicitly (the factorization of a
//    product a_2k a_(2k+1) is not unique, so it cannot be reverse-engineered).
//  - cor7 carries the c-sequence of a target shaped
//      c1 + c1 c2/(1 + c2 c3/(1 + c3 c4/(1 + ...))).
struct ExtensionScheme {
    enum class Kind { cor1, cor2, cor3, cor7 };
    Kind kind;
    std::function<Scalar(std::int64_t)> seq;  // cor3: a_k; cor7: c_k
    std::optional<Scalar> b1;                 // cor3 only
    Json seq_descriptor;

    static ExtensionScheme cor1();
    static ExtensionScheme cor2();
    static ExtensionScheme cor3(std::function<Scalar(std::int64_t)> a_seq, Scalar b1,
                                Json seq_descriptor = Json());
    static ExtensionScheme cor7(std::function<Scalar(std::int64_t)> c_seq,
                                Json seq_descriptor = Json());
};

const char* scheme_name(ExtensionScheme::Kind k);

CoefficientSource extend(const CoefficientSource& target, const ExtensionScheme& scheme);

// CF whose N-th approximant is K[N] exactly; needs K_i != K_(i-1).
CoefficientSource bernoulli_cf(const std::vector<Scalar>& K);

// CF whose N-th approximant is the partial sum a_0 + ... + a_N; needs a_i != 0
// for i >= 1.
CoefficientSource euler_cf(const std::vector<Scalar>& a);

// For a finite fraction with all partial numerators 1, repeatedly merge
// ... + 1/(p + 1/(0 + 1/(q + ...))) into ... + 1/((p+q) + ...). The value of
// the full fraction is unchanged. Zeros must sit strictly inside the term
// list, with a predecessor and a successor to merge.
CoefficientSource collapse_zeros(const CoefficientSource& src);

}  // namespace cf
