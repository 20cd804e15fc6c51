#include "cf/eval.hpp"

#include <climits>
#include <cmath>

namespace cf {

namespace {

long max_exp2(const BigComplex& z) {
    long e = LONG_MIN;
    if (!z.re().is_zero()) e = std::max(e, static_cast<long>(mpfr_get_exp(z.re().get())));
    if (!z.im().is_zero()) e = std::max(e, static_cast<long>(mpfr_get_exp(z.im().get())));
    return e;
}

}  // namespace

void walk_convergents(const CoefficientSource& src, std::int64_t N_max,
                      const std::function<void(const Convergent&)>& visit,
                      const EvalOptions& opts) {
    if (N_max < 0) throw error("convergent depth must be >= 0");
    const Scalar& b0 = src.b0();
    const bool cmode = !b0.is_rational();

    Convergent st;
    st.N = 0;
    st.A = b0;
    st.A_prev = one_like(b0);
    st.B = one_like(b0);
    st.B_prev = zero_like(b0);
    st.renorm_log = 0;
    visit(st);

    for (std::int64_t n = 1; n <= N_max; ++n) {
        Term t = src.term(n);
        Scalar A = t.b * st.A + t.a * st.A_prev;
        Scalar B = t.b * st.B + t.a * st.B_prev;
        st.A_prev = std::move(st.A);
        st.B_prev = std::move(st.B);
        st.A = std::move(A);
        st.B = std::move(B);
        st.N = n;
        if (st.A.is_zero() && st.B.is_zero())
            throw error("degenerate convergent (0,0) at N=" + std::to_string(n));
        if (cmode && opts.renormalize) {
            const long window =
                static_cast<long>(std::ceil(st.A.digits() * 0.5 * 3.321928094887362));
            long e = std::max(max_exp2(st.A.cplx()), max_exp2(st.B.cplx()));
            if (e != LONG_MIN && (e > window || e < -window)) {
                st.A = Scalar(scale2(st.A.cplx(), -e));
                st.B = Scalar(scale2(st.B.cplx(), -e));
                st.A_prev = Scalar(scale2(st.A_prev.cplx(), -e));
                st.B_prev = Scalar(scale2(st.B_prev.cplx(), -e));
                st.renorm_log += e;
            }
        }
        visit(st);
    }
}

std::vector<Convergent> convergents(const CoefficientSource& src, std::int64_t N_max,
                                    const EvalOptions& opts) {
    std::vector<Convergent> out;
    out.reserve(static_cast<size_t>(N_max) + 1);
    walk_convergents(src, N_max, [&out](const Convergent& c) { out.push_back(c); }, opts);
    return out;
}

ProjectiveValue value_at(const CoefficientSource& src, std::int64_t N, const EvalOptions& opts) {
    ProjectiveValue v{Scalar(), Scalar()};
    walk_convergents(src, N, [&v, N](const Convergent& c) {
        if (c.N == N) v = ProjectiveValue{c.A, c.B};
    }, opts);
    return v;
}

namespace {

struct DetState {
    Convergent at_N, at_N1;
};

}  // namespace

std::pair<Scalar, Scalar> determinant_residual(const CoefficientSource& src, std::int64_t N) {
    if (N < 1) throw error("determinant residual needs N >= 1");
    DetState ds;
    EvalOptions exact{.renormalize = false};
    walk_convergents(src, N + 1, [&ds, N](const Convergent& c) {
        if (c.N == N) ds.at_N = c;
        if (c.N == N + 1) ds.at_N1 = c;
    }, exact);
    Scalar prod = one_like(src.b0());
    for (std::int64_t i = 1; i <= N; ++i) prod = prod * src.term(i).a;
    Scalar sign = (N % 2 == 1) ? one_like(src.b0()) : -one_like(src.b0());
    const Scalar& A_N = ds.at_N.A;
    const Scalar& A_Nm1 = ds.at_N.A_prev;
    const Scalar& B_N = ds.at_N.B;
    const Scalar& B_Nm1 = ds.at_N.B_prev;
    const Scalar& A_N1 = ds.at_N1.A;
    const Scalar& B_N1 = ds.at_N1.B;
    Scalar r1 = A_N * B_Nm1 - A_Nm1 * B_N - sign * prod;
    Scalar r2 = A_N1 * B_Nm1 - A_Nm1 * B_N1 - sign * src.term(N + 1).b * prod;
    return {std::move(r1), std::move(r2)};
}

Scalar approximant_gap(const CoefficientSource& src, std::int64_t N) {
    if (N < 1) throw error("approximant gap needs N >= 1");
    Convergent at_N;
    EvalOptions exact{.renormalize = false};
    walk_convergents(src, N, [&at_N, N](const Convergent& c) {
        if (c.N == N) at_N = c;
    }, exact);
    if (at_N.B.is_zero() || at_N.B_prev.is_zero())
        throw error("approximant gap undefined: zero denominator at N=" + std::to_string(N));
    Scalar prod = one_like(src.b0());
    for (std::int64_t i = 1; i <= N; ++i) prod = prod * src.term(i).a;
    Scalar sign = (N % 2 == 1) ? one_like(src.b0()) : -one_like(src.b0());
    return sign * prod / (at_N.B * at_N.B_prev);
}

}  // namespace cf
