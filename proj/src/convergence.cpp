#include "cf/convergence.hpp"

namespace cf {

namespace {

// |z|^2 as a real-valued Scalar in z's mode
Scalar abs_sq(const Scalar& z) {
    if (z.is_rational()) return z * z;
    const BigComplex& c = z.cplx();
    BigFloat m = abs(c);
    BigFloat m2(m.prec());
    mpfr_sqr(m2.get(), m.get(), MPFR_RNDN);
    return Scalar(BigComplex(std::move(m2), BigFloat::from_long(0, m.prec()), z.digits()));
}

// comparisons of real-valued scalars; complex mode tolerates rounding noise
int cmp_real(const Scalar& x, const Scalar& y) {
    if (x.is_rational()) return x.rat() < y.rat() ? -1 : (x.rat() == y.rat() ? 0 : 1);
    return cmp(x.cplx().re(), y.cplx().re());
}

bool leq_slack(const Scalar& x, const Scalar& y) {
    return cmp_real(x, y) <= 0 || near(x, y);
}

bool abs_greater(const Scalar& x, const Scalar& y) {
    if (x.is_rational()) return abs_rational(x.rat()) > abs_rational(y.rat());
    return cmp(abs(x.cplx()), abs(y.cplx())) > 0;
}

std::string abs_str(const Scalar& x) {
    if (x.is_rational()) return Scalar(abs_rational(x.rat())).str();
    return abs(x.cplx()).str(x.digits());
}

bool is_constant_family(const CoefficientSource& src) {
    const Json& d = src.descriptor();
    return d.is_object() && d.contains("family") && d["family"] == "constant";
}

}  // namespace

ConvergenceCertificate worpitzky_check(const CoefficientSource& src, std::int64_t depth) {
    if (depth < 1) throw error("worpitzky check needs depth >= 1");
    ConvergenceCertificate cert;
    cert.criterion = "worpitzky";
    cert.depth = depth;
    const Rational quarter(1, 4);
    Scalar sup_a;
    bool have_sup = false;
    for (std::int64_t n = 1; n <= depth; ++n) {
        Term t = src.term(n);
        if (!(t.b == one_like(t.b)))
            throw error("worpitzky criterion needs unit denominators (b_" + std::to_string(n) +
                        " != 1)");
        if (cmp_abs(t.a, quarter) > 0) {
            cert.refusal = "partial numerator magnitude exceeds 1/4 at index " + std::to_string(n);
            cert.witness["index"] = n;
            cert.witness["a"] = t.a.str();
            return cert;
        }
        if (!have_sup || abs_greater(t.a, sup_a)) {
            sup_a = t.a;
            have_sup = true;
        }
    }
    // value-region claim: approximants of the K part stay inside |w| < 1/2
    const Rational half(1, 2);
    Scalar max_f;
    bool have_f = false;
    std::int64_t bad_index = 0;
    std::string bad_what;
    walk_convergents(src, depth, [&](const Convergent& cv) {
        if (cv.N == 0 || bad_index) return;
        if (cv.B.is_zero()) {
            bad_index = cv.N;
            bad_what = "approximant at infinity at index " + std::to_string(cv.N);
            return;
        }
        Scalar f = (cv.A - src.b0() * cv.B) / cv.B;
        if (cmp_abs(f, half) >= 0) {
            bad_index = cv.N;
            bad_what = "approximant leaves the open disc of radius 1/2 at index " +
                       std::to_string(cv.N);
            return;
        }
        if (!have_f || abs_greater(f, max_f)) {
            max_f = f;
            have_f = true;
        }
    });
    if (bad_index) {
        cert.refusal = bad_what;
        cert.witness["index"] = bad_index;
        return cert;
    }
    cert.certified = true;
    cert.exhaustive = is_constant_family(src);
    cert.witness["sup_abs_a"] = abs_str(sup_a);
    cert.witness["max_abs_approximant"] = have_f ? abs_str(max_f) : "0";
    return cert;
}

ConvergenceCertificate lange_check(const std::function<Scalar(std::int64_t)>& c,
                                   const Scalar& alpha, const Scalar& rho_sq,
                                   std::int64_t depth) {
    if (depth < 1) throw error("lange check needs depth >= 1");
    ConvergenceCertificate cert;
    cert.criterion = "lange";
    cert.depth = depth;
    cert.witness["alpha"] = alpha.str();
    cert.witness["rho_sq"] = rho_sq.str();
    Scalar one = one_like(alpha);
    if (cmp_real(abs_sq(alpha), rho_sq) >= 0) {
        cert.refusal = "witness pair needs |alpha| < rho";
        return cert;
    }
    if (cmp_real(rho_sq, abs_sq(alpha + one)) >= 0) {
        cert.refusal = "witness pair needs rho < |alpha+1|";
        return cert;
    }
    auto fail_odd = [&](std::int64_t idx) {
        cert.refusal = "|c_n +- i alpha| <= rho fails at odd index " + std::to_string(idx);
        cert.witness["index"] = idx;
    };
    auto fail_even = [&](std::int64_t idx) {
        cert.refusal = "|c_n +- i(1+alpha)| >= rho fails at even index " + std::to_string(idx);
        cert.witness["index"] = idx;
    };
    if (alpha.is_rational()) {
        // everything real: |c +- i t|^2 = c^2 + t^2 for both signs
        Scalar t1 = alpha * alpha;
        Scalar t2 = (one + alpha) * (one + alpha);
        for (std::int64_t n = 1; n <= depth; ++n) {
            Scalar co = c(2 * n - 1), ce = c(2 * n);
            if (!leq_slack(co * co + t1, rho_sq)) {
                fail_odd(2 * n - 1);
                return cert;
            }
            if (!leq_slack(rho_sq, ce * ce + t2)) {
                fail_even(2 * n);
                return cert;
            }
        }
    } else {
        int d = alpha.digits();
        mpfr_prec_t bits = bits_for_digits(d);
        Scalar iu(BigComplex(BigFloat::from_long(0, bits), BigFloat::from_long(1, bits), d));
        Scalar ia = iu * alpha;
        Scalar ia1 = iu * (one + alpha);
        for (std::int64_t n = 1; n <= depth; ++n) {
            Scalar co = c(2 * n - 1), ce = c(2 * n);
            if (!leq_slack(abs_sq(co + ia), rho_sq) || !leq_slack(abs_sq(co - ia), rho_sq)) {
                fail_odd(2 * n - 1);
                return cert;
            }
            if (!leq_slack(rho_sq, abs_sq(ce + ia1)) || !leq_slack(rho_sq, abs_sq(ce - ia1))) {
                fail_even(2 * n);
                return cert;
            }
        }
    }
    cert.certified = true;
    return cert;
}

LangeParams lange_find_params(const Scalar& a) {
    if (a.is_rational()) {
        const Rational& q = a.rat();
        if (q <= 0) throw error("lange parameters need a off the ray (-inf, 0]");
        LangeParams p;
        p.alpha = Scalar(Rational(1) / (2 * q));
        p.rho_sq = Scalar((Rational(1) / (q * q) + Rational(4) / q) / 4);
        Rational r;
        if (exact_sqrt(p.rho_sq.rat(), r)) p.rho = Scalar(r);
        // rho^2 - alpha^2 = 1/a > 0 and (alpha+1)^2 = rho^2 + 1 by construction
        if (!(p.alpha.rat() * p.alpha.rat() < p.rho_sq.rat()))
            throw error("internal: lange sandwich violated");
        return p;
    }
    const BigComplex& z = a.cplx();
    if (z.is_zero() || (z.is_real() && z.re().sign() < 0))
        throw error("lange parameters need a off the ray (-inf, 0]");
    Scalar s = Scalar(sqrt((one_like(a) / a).cplx()));
    const BigFloat& c = s.cplx().re();
    const BigFloat& d = s.cplx().im();
    if (c.sign() <= 0) throw error("lange parameters need a off the ray (-inf, 0]");
    mpfr_prec_t bits = c.prec();
    BigFloat c2(bits), d2(bits), m2(bits), are(bits), aim(bits), r2(bits), t(bits);
    mpfr_sqr(c2.get(), c.get(), MPFR_RNDN);
    mpfr_sqr(d2.get(), d.get(), MPFR_RNDN);
    mpfr_add(m2.get(), c2.get(), d2.get(), MPFR_RNDN);  // c^2 + d^2
    mpfr_div_ui(are.get(), m2.get(), 2, MPFR_RNDN);
    mpfr_mul(aim.get(), are.get(), d.get(), MPFR_RNDN);
    mpfr_div(aim.get(), aim.get(), c.get(), MPFR_RNDN);  // (m2/2) d/c
    // rho^2 = m2 (m2^2 + 4 c^2) / (4 c^2)
    mpfr_sqr(r2.get(), m2.get(), MPFR_RNDN);
    mpfr_mul_ui(t.get(), c2.get(), 4, MPFR_RNDN);
    mpfr_add(r2.get(), r2.get(), t.get(), MPFR_RNDN);
    mpfr_mul(r2.get(), r2.get(), m2.get(), MPFR_RNDN);
    mpfr_div(r2.get(), r2.get(), t.get(), MPFR_RNDN);
    int dig = a.digits();
    LangeParams p;
    p.alpha = Scalar(BigComplex(std::move(are), std::move(aim), dig));
    BigFloat r(bits);
    mpfr_sqrt(r.get(), r2.get(), MPFR_RNDN);
    p.rho_sq = Scalar(BigComplex(std::move(r2), BigFloat::from_long(0, bits), dig));
    p.rho = Scalar(BigComplex(std::move(r), BigFloat::from_long(0, bits), dig));
    if (cmp_real(abs_sq(p.alpha), p.rho_sq) >= 0 ||
        cmp_real(p.rho_sq, abs_sq(p.alpha + one_like(p.alpha))) >= 0)
        throw error("internal: lange sandwich violated");
    return p;
}

EmpiricalLimit empirical_limit(const CoefficientSource& src, std::int64_t depth,
                               const Rational& tol) {
    if (depth < 4) throw error("empirical limit needs depth >= 4");
    EmpiricalLimit out;
    struct Slot {
        bool have = false;
        std::int64_t index = 0;
        Scalar value;
        double gap = -1.0;  // from the previous member of the same subsequence
    };
    Slot even, odd;
    Scalar last_f;
    std::int64_t last_index = -1;
    std::int64_t skipped = 0;
    bool have_last = false;
    double max_gap_tail = -1.0, max_abs_f = 0.0;
    Convergent best;
    const std::int64_t tail_start = depth - depth / 4;
    walk_convergents(src, depth, [&](const Convergent& cv) {
        if (cv.N == 0) return;  // the constant term is not part of the estimate stream
        if (cv.B.is_zero()) {
            ++skipped;
            return;
        }
        Scalar f = cv.A / cv.B;
        double af = gap_magnitude(f, zero_like(f));
        if (af > max_abs_f) max_abs_f = af;
        if (have_last && last_index == cv.N - 1 && cv.N >= tail_start) {
            double g = gap_magnitude(f, last_f);
            if (g > max_gap_tail) max_gap_tail = g;
        }
        Slot& s = (cv.N % 2 == 0) ? even : odd;
        if (s.have) s.gap = gap_magnitude(f, s.value);
        s.have = true;
        s.index = cv.N;
        s.value = f;
        last_f = f;
        last_index = cv.N;
        have_last = true;
        best = cv;
    });
    if (!have_last) throw error("all approximants at infinity");
    out.estimate = ProjectiveValue{best.A, best.B};
    Json diag;
    diag["depth"] = depth;
    diag["last_index"] = last_index;
    diag["value"] = last_f.str();
    diag["skipped_infinite"] = skipped;
    if (max_gap_tail >= 0) diag["max_gap_final_quarter"] = max_gap_tail;
    auto slot_json = [](const Slot& s) {
        Json j;
        j["index"] = s.index;
        j["value"] = s.value.str();
        if (s.gap >= 0) j["gap"] = s.gap;
        return j;
    };
    if (even.have) diag["even"] = slot_json(even);
    if (odd.have) diag["odd"] = slot_json(odd);
    if (even.have && odd.have) {
        Scalar delta = even.value - odd.value;
        out.converged = cmp_abs(delta, tol) < 0;
        diag["delta_even_odd"] = gap_magnitude(even.value, odd.value);
    }
    Json wall;
    wall["max_abs_approximant"] = max_abs_f;
    double max_even_a = 0.0;
    for (std::int64_t k = 1; 2 * k <= depth; ++k) {
        Scalar a = src.term(2 * k).a;
        double v = gap_magnitude(a, zero_like(a));
        if (v > max_even_a) max_even_a = v;
    }
    wall["max_abs_even_numerator"] = max_even_a;
    diag["wall"] = wall;
    diag["converged"] = out.converged;
    out.diagnostics = std::move(diag);
    return out;
}

ConvergenceCertificate wall_empirical_certificate(const CoefficientSource& src,
                                                  std::int64_t depth, const Rational& tol) {
    EmpiricalLimit lim = empirical_limit(src, depth, tol);
    ConvergenceCertificate cert;
    cert.criterion = "wall-empirical";
    cert.depth = depth;
    cert.certified = lim.converged;
    cert.witness["M"] = lim.diagnostics["wall"]["max_abs_approximant"];
    cert.witness["L"] = lim.diagnostics["wall"]["max_abs_even_numerator"];
    cert.witness["subsequence"] = "even indices";
    if (lim.diagnostics.contains("delta_even_odd"))
        cert.witness["delta_even_odd"] = lim.diagnostics["delta_even_odd"];
    if (!lim.converged)
        cert.refusal = "even and odd subsequences do not agree within tolerance at depth " +
                       std::to_string(depth);
    return cert;
}

}  // namespace cf
