// Acceptance gate: thirteen end-to-end criteria with pinned tolerances.
// Each prints exactly one PASS/FAIL line; the process exits nonzero if any
// criterion fails. The CLI criterion needs the cf binary path as argv[1]
// (or in CF_BIN).

#include "cf/convergence.hpp"
#include "cf/eval.hpp"
#include "cf/identities.hpp"
#include "cf/serialize.hpp"
#include "cf/source.hpp"
#include "cf/transforms.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cf;

namespace {

int failures = 0;

void line(int idx, bool ok, const std::string& what) {
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

Scalar S(long v) { return Scalar::from_long(v); }

Scalar rat(const std::string& text) { return parse_scalar(text, 50); }

bool below(const Scalar& x, const std::string& tol) {
    return cmp_abs(x, parse_tolerance(tol)) < 0;
}

double mag(const Scalar& x) { return gap_magnitude(x, zero_like(x)); }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", v);
    return buf;
}

bool same_value(const ProjectiveValue& u, const ProjectiveValue& v) {
    return u.A * v.B == v.A * u.B;
}

long nonzero(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-5, 5);
    long v = 0;
    while (v == 0) v = d(rng);
    return v;
}

CoefficientSource random_source(std::mt19937_64& rng, int nterms) {
    std::uniform_int_distribution<long> d(-5, 5);
    std::vector<Term> terms;
    for (int i = 0; i < nterms; ++i) terms.push_back({S(nonzero(rng)), S(nonzero(rng))});
    return make_terms_source(S(d(rng)), std::move(terms));
}

VerificationReport check(IdentityId id, const Json& params, std::int64_t depth,
                         const std::string& tol) {
    return verify(id, params, depth, 50, parse_tolerance(tol));
}

// ---- criterion 1: contraction subsequence property -------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260823);
    std::string why;
    for (int trial = 0; trial < 500 && why.empty(); ++trial) {
        CoefficientSource src = random_source(rng, 15);
        std::vector<Convergent> f = convergents(src, 15);
        std::vector<Convergent> fe = convergents(even_part(src), 7);
        std::vector<Convergent> fo = convergents(odd_part(src), 7);
        for (int k = 0; k <= 7; ++k) {
            if (!same_value({fe[k].A, fe[k].B}, {f[2 * k].A, f[2 * k].B}))
                why = "even part differs at k=" + std::to_string(k);
            if (!same_value({fo[k].A, fo[k].B}, {f[2 * k + 1].A, f[2 * k + 1].B}))
                why = "odd part differs at k=" + std::to_string(k);
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = why.empty() && secs < 10.0;
    std::ostringstream msg;
    if (why.empty())
        msg << "500 random 15-term sources: even/odd approximants match f_2k and f_(2k+1) "
               "exactly in " << sci(secs) << " s (budget 10 s)";
    else
        msg << why;
    line(1, ok, msg.str());
}

// ---- criterion 2: extension round trips ------------------------------------

void criterion2() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-5, 5);
    std::string why;
    auto same_terms = [](const CoefficientSource& x, const CoefficientSource& y, int n) {
        if (x.b0() != y.b0()) return false;
        for (int k = 1; k <= n; ++k)
            if (x.term(k).a != y.term(k).a || x.term(k).b != y.term(k).b) return false;
        return true;
    };
    for (int trial = 0; trial < 200 && why.empty(); ++trial) {
        CoefficientSource target = random_source(rng, 8);
        if (!same_terms(even_part(extend(target, ExtensionScheme::cor1())), target, 8))
            why = "cor1 round trip failed at trial " + std::to_string(trial);
        if (!same_terms(even_part(extend(target, ExtensionScheme::cor2())), target, 8))
            why = "cor2 round trip failed at trial " + std::to_string(trial);

        std::vector<Scalar> c;
        c.push_back(S(0));  // 1-based
        for (int i = 1; i <= 9; ++i) c.push_back(S(nonzero(rng)));
        std::vector<Term> terms;
        for (int k = 1; k <= 8; ++k) terms.push_back({c[k] * c[k + 1], S(1)});
        CoefficientSource t7 = make_terms_source(c[1], std::move(terms));
        ExtensionScheme scheme =
            ExtensionScheme::cor7([c](std::int64_t j) { return c[std::size_t(j)]; });
        if (!same_terms(odd_part(extend(t7, scheme)), t7, 8))
            why = "cor7 round trip failed at trial " + std::to_string(trial);
    }
    line(2, why.empty(),
         why.empty() ? "cor1/cor2/cor7 recover 200 random targets term-by-term exactly" : why);
}

// ---- criterion 3: determinant residuals ------------------------------------

void criterion3() {
    std::mt19937_64 rng(11);
    std::string why;
    for (int trial = 0; trial < 100 && why.empty(); ++trial) {
        CoefficientSource src = random_source(rng, 30);
        for (std::int64_t N = 1; N <= 25; ++N) {
            auto [r1, r2] = determinant_residual(src, N);
            if (!r1.is_zero() || !r2.is_zero()) {
                why = "nonzero residual at trial " + std::to_string(trial) +
                      ", N=" + std::to_string(N);
                break;
            }
        }
    }
    line(3, why.empty(),
         why.empty()
             ? "determinant residuals exactly (0,0) for N <= 25 on 100 random 30-term sources"
             : why);
}

// ---- criterion 4: unit-step identities -------------------------------------

void criterion4() {
    std::string why;
    for (const char* x : {"1", "1/2", "2+1i"}) {
        auto rep = check(IdentityId::entry7, Json{{"x", x}}, 40, "1e-20");
        if (!rep.verdict) why = std::string("entry7 x=") + x + " missed 1e-20";
    }
    std::vector<Json> specs = {
        Json{{"y", Json{{"kind", "linear"}, {"start", "1"}, {"step", "1"}}}},
        Json{{"y", Json{{"kind", "constant"}, {"value", "6"}}}},
        Json{{"y", Json{{"kind", "linear"}, {"start", "1+1i"}, {"step", "1+1i"}}}},
    };
    for (std::size_t i = 0; i < specs.size() && why.empty(); ++i) {
        auto rep = check(IdentityId::entry7a, specs[i], 40, "1e-20");
        if (!rep.verdict) why = "entry7a sequence " + std::to_string(i) + " missed 1e-20";
        CoefficientSource ext = proof_extension(IdentityId::entry7a, specs[i], 50);
        walk_convergents(ext, 81, [&](const Convergent& cv) {
            if (cv.N % 2 == 0 || !why.empty()) return;
            Scalar f = cv.A / cv.B;
            bool one = f.is_rational() ? f == S(1) : near(f, one_like(f));
            if (!one) why = "extension odd approximant differs from 1 at N=" +
                            std::to_string(cv.N) + " (sequence " + std::to_string(i) + ")";
        });
    }
    line(4, why.empty(),
         why.empty() ? "entry7 (x in {1, 1/2, 2+i}) and entry7a (3 sequences) within 1e-20 at "
                       "depth 40; extension odd approximants identically 1"
                     : why);
}

// ---- criterion 5: shifted-parameter identity -------------------------------

void criterion5() {
    std::string why;
    const std::pair<const char*, const char*> pairs[] = {
        {"1", "2"}, {"1", "1/2"}, {"2", "1"}, {"1/2", "1/3"}, {"3", "-1/2"}, {"1+1i", "2.0"}};
    for (auto [a, x] : pairs) {
        auto rep = check(IdentityId::entry9, Json{{"a", a}, {"x", x}}, 500, "1e-15");
        if (!rep.verdict)
            why = std::string("(a,x)=(") + a + "," + x + ") abs_diff " + sci(mag(rep.abs_diff));
    }
    auto rep0 = check(IdentityId::entry9, Json{{"a", "0"}, {"x", "-2"}}, 500, "1e-15");
    if (!rep0.verdict) why = "a=0, x=-2 empirical case failed";
    if (why.empty() && !rep0.diagnostics.contains("note")) why = "a=0 case lost its empirical note";
    line(5, why.empty(),
         why.empty() ? "six (a,x) pairs within 1e-15 at depth 500; a=0, |x|=2 passes empirically"
                     : why);
}

// ---- criterion 6: integer-target fraction with interior zero ---------------

void criterion6() {
    std::string why;
    for (long n = 1; n <= 6 && why.empty(); ++n) {
        Json params{{"n", n}};
        CoefficientSource src = cf_source(IdentityId::entry10, params, 50);
        if (!src.term(n).b.is_zero()) {
            why = "n=" + std::to_string(n) + ": b_n is not zero";
            continue;
        }
        auto rep = check(IdentityId::entry10, params, 100, "1e-20");
        if (!rep.verdict) {
            why = "n=" + std::to_string(n) + " abs_diff " + sci(mag(rep.abs_diff));
            continue;
        }
        std::int64_t N = src.length() ? std::min<std::int64_t>(100, *src.length()) : 100;
        if (value_at(src, N).is_infinite()) why = "n=" + std::to_string(n) + ": f_100 at infinity";
    }
    line(6, why.empty(),
         why.empty() ? "n in {1..6} within 1e-20; interior b=0 crossed projectively with a "
                       "finite final approximant"
                     : why);
}

// ---- criterion 7: difference-of-squares identity ---------------------------

void criterion7() {
    std::string why;
    const std::pair<const char*, const char*> pairs[] = {{"1", "1"}, {"2", "1/2"}, {"1.0", "1+1i"}};
    for (auto [a, x] : pairs) {
        auto rep = check(IdentityId::entry12, Json{{"a", a}, {"x", x}}, 300, "1e-15");
        if (!rep.verdict)
            why = std::string("(a,x)=(") + a + "," + x + ") abs_diff " + sci(mag(rep.abs_diff));
    }
    if (why.empty()) {
        CoefficientSource den =
            to_unit_numerators(proof_extension(IdentityId::entry12, Json{{"a", "1"}, {"x", "1"}}));
        std::int64_t odd_seen = 0;
        walk_convergents(den, 81, [&](const Convergent& cv) {
            if (cv.N % 2 == 0 || !why.empty()) return;
            if (cv.B.is_zero() || cv.A != cv.B)
                why = "unit-numerator extension odd approximant differs from 1 at N=" +
                      std::to_string(cv.N);
            ++odd_seen;
        });
        if (why.empty() && odd_seen != 41) why = "expected 41 odd approximants";
    }
    line(7, why.empty(),
         why.empty() ? "three (a,x) pairs within 1e-15 at depth 300; unit-numerator extension "
                       "keeps odd approximants exactly 1 to depth 81"
                     : why);
}

// ---- criterion 8: three-parameter identity with extrapolation --------------

void criterion8() {
    auto r121 = check(IdentityId::entry13, Json{{"a", "1"}, {"b", "2"}, {"d", "1"}}, 10000, "1e-3");
    auto r132 = check(IdentityId::entry13, Json{{"a", "1"}, {"b", "3"}, {"d", "2"}}, 10000, "1e-3");
    auto requal =
        check(IdentityId::entry13, Json{{"a", "2"}, {"b", "2"}, {"d", "1"}}, 10000, "1e-10");
    auto rd0 = check(IdentityId::entry13, Json{{"a", "1"}, {"b", "2"}, {"d", "0"}}, 10000, "1e-10");
    auto rfoot = check(IdentityId::entry13, entry13_footnote_params(), 10000, "1e-3");
    bool ok = r121.verdict && r132.verdict && requal.verdict && rd0.verdict && rfoot.verdict;
    std::ostringstream msg;
    msg << "(1,2,1) " << sci(mag(r121.abs_diff)) << (r121.verdict ? "" : " MISS") << ", (1,3,2) "
        << sci(mag(r132.abs_diff)) << (r132.verdict ? "" : " MISS") << " vs 1e-3; d=0 "
        << sci(mag(rd0.abs_diff)) << (rd0.verdict ? "" : " MISS") << " vs 1e-10; footnote -> b "
        << sci(mag(rfoot.abs_diff)) << (rfoot.verdict ? "" : " MISS") << " vs 1e-3; a=b (2,2,1) "
        << sci(mag(requal.abs_diff))
        << (requal.verdict ? " vs 1e-10"
                           : " misses 1e-10: the equal-parameter sum decays like 1/log k, so no "
                             "finite-depth estimator reaches it (best extrapolation shown)");
    line(8, ok, msg.str());
}

// ---- criterion 9: q-series generalization ----------------------------------

void criterion9() {
    std::string why;
    double worst = 0.0;
    for (const char* q : {"0.1", "-0.4", "0.3+0.2i"}) {
        for (const char* al : {"0", "1/2", "0.5i"}) {
            Json bp{{"q", q}, {"alpha", al}};
            CoefficientSource bb = cf_source(IdentityId::bb, bp, 50);
            CoefficientSource rr = cf_source(IdentityId::rr, Json{{"q", q}}, 50);
            ProjectiveValue vb = value_at(bb, 200);
            ProjectiveValue vr = value_at(rr, 200);
            if (vb.is_infinite() || vr.is_infinite()) {
                why = std::string("approximant at infinity for q=") + q;
                break;
            }
            double gap = gap_magnitude(vb.A / vb.B, vr.A / vr.B);
            worst = std::max(worst, gap);
            if (gap >= 1e-30) {
                why = std::string("q=") + q + ", alpha=" + al + ": |bb-rr| = " + sci(gap);
                break;
            }
            CoefficientSource ev = even_part(bb);
            CoefficientSource be = cf_source(IdentityId::bb_even, bp, 50);
            for (int k = 1; k <= 40; ++k) {
                if (!near(ev.term(k).a, be.term(k).a) || !near(ev.term(k).b, be.term(k).b)) {
                    why = std::string("bb_even term ") + std::to_string(k) +
                          " differs from even_part(bb) at q=" + q + ", alpha=" + al;
                    break;
                }
            }
            if (!why.empty()) break;
        }
        if (!why.empty()) break;
    }
    line(9, why.empty(),
         why.empty() ? "|bb - rr| < 1e-30 over the 3x3 (q, alpha) grid at depth 200 (worst " +
                           sci(worst) + "); bb_even matches even_part(bb) to 40 terms"
                     : why);
}

// ---- criterion 10: convergence certificates --------------------------------

void criterion10() {
    std::string why;
    auto constant = [](const char* a) {
        bool cplx = std::string(a).find('i') != std::string::npos;
        return source_from_json(
            Json{{"b0", cplx ? "0.0" : "0"},
                 {"family", "constant"},
                 {"params", Json{{"a", a}, {"b", cplx ? "1.0" : "1"}}}},
            50);
    };
    for (const char* a : {"1/4", "-1/4", "0.25i"}) {
        ConvergenceCertificate cert = worpitzky_check(constant(a), 200);
        if (!cert.certified) {
            why = std::string("boundary a=") + a + " refused";
            break;
        }
        Scalar maxf = parse_scalar(cert.witness.at("max_abs_approximant").get<std::string>(), 50);
        if (cmp_abs(maxf, Rational(1, 2)) >= 0) {
            why = std::string("disc claim violated at a=") + a;
            break;
        }
    }
    if (why.empty() && worpitzky_check(constant("26/100"), 200).certified)
        why = "a=26/100 should be refused";

    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> num(1, 50), den(1, 20), quarters(-12, 12);
    for (int i = 0; i < 70 && why.empty(); ++i) {
        Rational a(num(rng), den(rng));
        LangeParams p = lange_find_params(Scalar(a));
        const Rational& al = p.alpha.rat();
        const Rational& rs = p.rho_sq.rat();
        if (!(al * al < rs && rs < (al + 1) * (al + 1)))
            why = "sandwich failed for a=" + a.str();
    }
    for (int i = 0; i < 30 && why.empty(); ++i) {
        long re = quarters(rng), im = quarters(rng);
        if (im == 0) im = 3;
        char buf[48];
        std::snprintf(buf, sizeof buf, "%g%+gi", re / 4.0, im / 4.0);
        LangeParams p = lange_find_params(parse_scalar(buf, 50));
        double al = mag(p.alpha);
        double ap1 = mag(p.alpha + one_like(p.alpha));
        double rs = mag(p.rho_sq);
        if (!(al * al < rs && rs < ap1 * ap1))
            why = std::string("sandwich failed for a=") + buf;
    }

    if (why.empty()) {
        LangeParams p1 = lange_find_params(rat("1"));
        if (p1.alpha != rat("1/2") || p1.rho_sq != rat("5/4") || p1.rho)
            why = "worked parameters at a=1 differ from (1/2, 5/4, irrational rho)";
        else if (!lange_check([](std::int64_t) { return S(1); }, p1.alpha, p1.rho_sq, 200)
                      .certified)
            why = "constant c=1 tail not certified by (1/2, 5/4)";
        LangeParams p2 = lange_find_params(rat("2"));
        if (why.empty() &&
            (p2.alpha != rat("1/4") || p2.rho_sq != rat("9/16") || !p2.rho || *p2.rho != rat("3/4")))
            why = "worked parameters at a=2 differ from (1/4, 9/16, 3/4)";
    }
    line(10, why.empty(),
         why.empty() ? "worpitzky boundary +-1/4 and i/4 certified with |f_N| < 1/2; witness "
                       "sandwich holds for 100 sampled a; worked pairs (1/2, 5/4) and "
                       "(1/4, (3/4)^2) reproduced exactly"
                     : why);
}

// ---- criterion 11: ratio asymptotics ---------------------------------------

void criterion11() {
    Scalar h122 = hill_ratio(S(1), S(2), S(2), 10000, 50);
    Scalar h112 = hill_ratio(S(1), S(1), S(2), 10000, 50);
    double d122 = gap_magnitude(h122, one_like(h122));
    double d112 = gap_magnitude(h112, one_like(h112));
    bool ok122 = d122 < 0.05;
    bool ok112 = d112 < 0.05;

    std::string why;
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> num(-4, 4), cnum(1, 5), den(1, 3), kk(1, 100);
    for (int i = 0; i < 50 && why.empty(); ++i) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(cnum(rng), den(rng));
        std::int64_t k = kk(rng);
        Rational fact(1), sum(0);
        Rational pa(1), pb(1), pc(1);
        for (std::int64_t j = 0; j <= k; ++j) {
            if (j > 0) {
                fact *= j;
                pa *= a + (j - 1);
                pb *= b + (j - 1);
                pc *= c + (j - 1);
            }
            sum += pa * pb / (pc * fact);
        }
        Scalar got = hyp2f1_partial_sum(Scalar(a), Scalar(b), Scalar(c), k);
        if (got != Scalar(sum))
            why = "partial sum differs from the direct oracle at trial " + std::to_string(i);
    }

    bool ok = ok122 && ok112 && why.empty();
    std::ostringstream msg;
    if (!why.empty()) {
        msg << why;
    } else {
        msg << "ratio-to-asymptote at k=1e4: (1,2,2) off by " << sci(d122)
            << (ok122 ? "" : " MISS") << "; (1,1,2) off by " << sci(d112);
        if (!ok112)
            msg << " misses 0.05: the log-asymptote regime approaches 1 like 1/log k, far "
                   "slower than k=1e4 allows";
        msg << "; 50 random partial sums match the direct oracle exactly";
    }
    line(11, ok, msg.str());
}

// ---- criterion 12: series-to-fraction transforms ---------------------------

void criterion12() {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    std::string why;
    auto rnd = [&](bool nz) {
        Rational r(num(rng), den(rng));
        while (nz && r == 0) r = Rational(num(rng), den(rng));
        return r;
    };
    for (int trial = 0; trial < 100 && why.empty(); ++trial) {
        std::vector<Scalar> K;
        Rational prev;
        for (int i = 0; i < 10; ++i) {
            Rational v = rnd(false);
            while (i > 0 && v == prev) v = rnd(false);
            K.push_back(Scalar(v));
            prev = v;
        }
        std::vector<Convergent> f = convergents(bernoulli_cf(K), 9);
        for (int i = 0; i <= 9; ++i)
            if (f[i].B.is_zero() || f[i].A / f[i].B != K[std::size_t(i)])
                why = "interpolant differs from its target sequence";

        std::vector<Scalar> a;
        a.push_back(Scalar(rnd(false)));
        for (int i = 1; i < 10; ++i) a.push_back(Scalar(rnd(true)));
        std::vector<Scalar> partial;
        Scalar s = zero_like(a[0]);
        for (const Scalar& ai : a) {
            s = s + ai;
            partial.push_back(s);
        }
        std::vector<Convergent> g = convergents(euler_cf(a), 9);
        std::vector<Convergent> h = convergents(bernoulli_cf(partial), 9);
        for (int i = 0; i <= 9; ++i) {
            if (g[i].B.is_zero() || g[i].A / g[i].B != partial[std::size_t(i)])
                why = "partial-sum fraction differs from the sums";
            if (!same_value({g[i].A, g[i].B}, {h[i].A, h[i].B}))
                why = "the two transforms disagree on a shared series";
        }
    }
    line(12, why.empty(),
         why.empty() ? "100 random series: value-interpolating and partial-sum fractions are "
                       "exact and agree with each other"
                     : why);
}

// ---- criterion 13: CLI determinism and exit-status matrix ------------------

struct Cmd {
    int rc;
    std::string out;
};

Cmd sh(const std::string& cmd) {
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) return {-1, ""};
    std::string o;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) o.append(buf, n);
    int st = pclose(p);
    return {st != -1 && WIFEXITED(st) ? WEXITSTATUS(st) : -1, o};
}

void criterion13(const char* bin_path) {
    if (!bin_path) {
        line(13, false, "cf binary path missing (pass as argv[1] or set CF_BIN)");
        return;
    }
    std::string B = std::string("\"") + bin_path + "\"";
    std::string why;

    std::string vcmd = B + " verify --id entry10 --param n=3 --depth 60 --tol 1e-40";
    Cmd v1 = sh(vcmd), v2 = sh(vcmd);
    if (v1.rc != 0) why = "passing verify exited " + std::to_string(v1.rc);
    else if (v1.out.empty() || v1.out != v2.out) why = "repeat runs are not byte-identical";

    if (why.empty()) {
        Cmd f = sh(B + " verify --id entry13 --param a=1 --param b=2 --param d=1 --depth 100");
        if (f.rc != 1) why = "failing verify exited " + std::to_string(f.rc) + " (want 1)";
    }
    if (why.empty()) {
        Cmd c = sh(B + " certify --criterion worpitzky --depth 50 --source "
                       R"('{"b0":"0","family":"constant","params":{"a":"1/3","b":"1"}}')");
        if (c.rc != 1) why = "refused certificate exited " + std::to_string(c.rc) + " (want 1)";
    }
    if (why.empty()) {
        Cmd e = sh(B + R"( verify --id entry10 --param n=3 --depth 1e4)");
        if (e.rc != 2) why = "malformed depth exited " + std::to_string(e.rc) + " (want 2)";
    }
    if (why.empty()) {
        Cmd e2 = sh(B + R"( eval --source '{"b0":"0","family":"golden"')");
        if (e2.rc != 2) why = "malformed source exited " + std::to_string(e2.rc) + " (want 2)";
    }
    if (why.empty()) {
        Cmd s = sh(B + " sweep --id entry10 --param n=1,2,3 --depth 50 --no-header");
        long lines = std::count(s.out.begin(), s.out.end(), '\n');
        if (s.rc != 0 || lines != 3)
            why = "sweep expected 3 records and exit 0, got " + std::to_string(lines) +
                  " records and exit " + std::to_string(s.rc);
    }
    line(13, why.empty(),
         why.empty() ? "cf runs are byte-deterministic; exit codes 0/1/2 cover pass, failed "
                       "verdict or refused certificate, and malformed input"
                     : why);
}

}  // namespace

int main(int argc, char** argv) {
    const char* bin = argc > 1 ? argv[1] : std::getenv("CF_BIN");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    criterion13(bin);
    std::printf("%d of 13 criteria passed\n", 13 - failures);
    return failures == 0 ? 0 : 1;
}
