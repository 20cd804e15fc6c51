#include "cf/identities.hpp"

#include "cf/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cf {

namespace {

Scalar n_like(std::int64_t n, const Scalar& like) {
    if (like.is_rational()) return Scalar(Rational(static_cast<long>(n)));
    return Scalar(BigComplex::from_long(static_cast<long>(n), like.digits()));
}

void check_keys(const Json& p, std::initializer_list<const char*> allowed, const char* who) {
    if (!p.is_object()) throw parse_error(std::string(who) + ": params must be a JSON object");
    for (const auto& item : p.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (item.key() == a) ok = true;
        if (!ok) throw parse_error(std::string(who) + ": unknown parameter \"" + item.key() + "\"");
    }
}

Scalar get_scalar(const Json& p, const char* key, const char* who, int digits) {
    auto it = p.find(key);
    if (it == p.end()) throw parse_error(std::string(who) + ": missing parameter \"" + key + "\"");
    if (!it->is_string())
        throw parse_error(std::string(who) + ": parameter \"" + key + "\" must be a Scalar text string");
    return parse_scalar(it->get<std::string>(), digits);
}

std::int64_t get_positive_int(const Json& p, const char* key, const char* who) {
    auto it = p.find(key);
    if (it == p.end()) throw parse_error(std::string(who) + ": missing parameter \"" + key + "\"");
    std::int64_t n = 0;
    if (it->is_number_integer()) {
        n = it->get<std::int64_t>();
    } else if (it->is_string()) {
        Scalar s = parse_scalar(it->get<std::string>(), 30);
        if (!s.is_rational() || denominator(s.rat()) != 1)
            throw parse_error(std::string(who) + ": parameter \"" + key + "\" must be an integer");
        n = numerator(s.rat()).convert_to<std::int64_t>();
    } else {
        throw parse_error(std::string(who) + ": parameter \"" + key + "\" must be an integer");
    }
    if (n < 1) throw error(std::string(who) + ": n must be a positive integer (n = " + std::to_string(n) + ")");
    return n;
}

void require_same_mode(const char* who, std::initializer_list<const Scalar*> xs) {
    bool any_rat = false, any_cplx = false;
    for (const Scalar* s : xs) (s->is_rational() ? any_rat : any_cplx) = true;
    if (any_rat && any_cplx)
        throw mode_error(std::string(who) +
                         ": parameters must share one arithmetic mode (mixed exact and decimal text forms)");
}

// value as an exact integer Rational when z is one
bool integer_value(const Scalar& z, Rational& out) {
    if (z.is_rational()) {
        if (denominator(z.rat()) != 1) return false;
        out = z.rat();
        return true;
    }
    const BigComplex& c = z.cplx();
    if (!c.is_real() || c.re().is_nan()) return false;
    if (mpfr_integer_p(c.re().get()) == 0) return false;
    Integer zi;
    mpfr_get_z(zi.backend().data(), c.re().get(), MPFR_RNDN);
    out = Rational(zi);
    return true;
}

bool abs_less(const Scalar& a, const Scalar& b) {
    if (a.is_rational()) return abs_rational(a.rat()) < abs_rational(b.rat());
    return cmp(abs(a.cplx()), abs(b.cplx())) < 0;
}

// ---- parameter parsing + hypothesis checks -------------------------------

struct P7 {
    Scalar x;
};

P7 parse7(const Json& p, int digits) {
    check_keys(p, {"x"}, "entry7");
    Scalar x = get_scalar(p, "x", "entry7", digits);
    Rational iv;
    if (integer_value(x, iv) && iv < 0)
        throw error("entry7: x must not be a negative integer (x = " + format_scalar(x) + ")");
    return {x};
}

struct P7a {
    std::function<Scalar(std::int64_t)> y;
    Json echo;
    std::int64_t condition_start;  // first index from which the 1/4 bound holds
};

P7a parse7a(const Json& p, int digits) {
    check_keys(p, {"y"}, "entry7a");
    auto it = p.find("y");
    if (it == p.end() || !it->is_object())
        throw parse_error("entry7a: parameter \"y\" must be a sequence spec object");
    const Json& spec = *it;
    if (sequence_length(spec))
        throw error("entry7a: needs an unbounded y-sequence (finite list given)");
    auto y = make_sequence(spec, digits);
    std::string kind = spec.at("kind").get<std::string>();

    // (ii) the products |1+y_1|...|1+y_n| must diverge; decidable per kind
    if (kind == "constant" || kind == "linear") {
        Scalar v = y(1);
        bool flat = kind == "constant";
        if (!flat) {
            Scalar step = parse_scalar(spec.at("step").get<std::string>(), digits);
            flat = step.is_zero();
        }
        if (flat && cmp_abs(v + one_like(v), Rational(1)) <= 0)
            throw error("entry7a: (ii) needs |1 + y| > 1 for a constant sequence so the products diverge");
    } else if (kind == "geometric") {
        Scalar r = parse_scalar(spec.at("ratio").get<std::string>(), digits);
        if (cmp_abs(r, Rational(1)) <= 0)
            throw error("entry7a: (ii) needs |ratio| > 1 for a geometric sequence so the products diverge");
    }

    // (i) and (iii) over a scan window
    const std::int64_t horizon = 200;
    std::int64_t last_bad = 0;
    Scalar prev;
    for (std::int64_t i = 1; i <= horizon; ++i) {
        Scalar yi = y(i);
        if ((yi + one_like(yi)).is_zero())
            throw error("entry7a: (i) y_i != -1 violated at i = " + std::to_string(i));
        if (i >= 2) {
            Scalar den = prev * yi;
            if (den.is_zero()) {
                last_bad = i;
            } else if (cmp_abs((yi + one_like(yi)) / den, Rational(1, 4)) > 0) {
                last_bad = i;
            }
        }
        prev = yi;
    }
    if (last_bad > horizon - 20)
        throw error("entry7a: (iii) |(y_i+1)/(y_{i-1} y_i)| <= 1/4 must hold from some index on; "
                    "still failing at i = " +
                    std::to_string(last_bad));
    return {y, spec, std::max<std::int64_t>(2, last_bad + 1)};
}

struct P9 {
    Scalar a, x;
    bool periodic;  // a == 0
};

P9 parse9(const Json& p, int digits) {
    check_keys(p, {"a", "x"}, "entry9");
    Scalar a = get_scalar(p, "a", "entry9", digits);
    Scalar x = get_scalar(p, "x", "entry9", digits);
    require_same_mode("entry9", {&a, &x});
    if (a.is_zero()) {
        if (cmp_abs(x, Rational(1)) <= 0)
            throw error("entry9: with a = 0, needs |x| > 1");
        return {a, x, true};
    }
    Rational k;
    if (integer_value(-(x / a), k) && k >= 1)
        throw error("entry9: x must avoid -k a for positive integers k (violated at k = " +
                    k.str() + ")");
    return {a, x, false};
}

struct P12 {
    Scalar a, x;
};

P12 parse12(const Json& p, int digits) {
    check_keys(p, {"a", "x"}, "entry12");
    Scalar a = get_scalar(p, "a", "entry12", digits);
    Scalar x = get_scalar(p, "x", "entry12", digits);
    require_same_mode("entry12", {&a, &x});
    if (a.is_zero()) throw error("entry12: needs a != 0");
    Rational k;
    if (integer_value(-(x / a), k) && k >= 1)
        throw error("entry12: x must avoid -k a for positive integers k (violated at k = " +
                    k.str() + ")");
    return {a, x};
}

struct P13 {
    Scalar a, b, d;
    bool footnote;
    enum class Case { sign_case, equal_ab, zero_d } cse;
};

P13 parse13(const Json& p, int digits) {
    check_keys(p, {"a", "b", "d", "footnote"}, "entry13");
    Scalar a = get_scalar(p, "a", "entry13", digits);
    Scalar b = get_scalar(p, "b", "entry13", digits);
    Scalar d = get_scalar(p, "d", "entry13", digits);
    require_same_mode("entry13", {&a, &b, &d});
    bool foot = false;
    if (auto it = p.find("footnote"); it != p.end()) {
        if (!it->is_boolean()) throw parse_error("entry13: parameter \"footnote\" must be boolean");
        foot = it->get<bool>();
    }
    if (a.is_zero()) throw error("entry13: needs a != 0 (the collapsed approximants divide by a)");

    if (d.is_zero()) {
        if (foot) throw error("entry13: footnote override applies only to the sign-condition case");
        if (!abs_less(a, b)) throw error("entry13: with d = 0, needs |a| < |b|");
        return {a, b, d, false, P13::Case::zero_d};
    }

    Rational k;
    if (integer_value(-(a / d), k) && k >= 0)
        throw error("entry13: needs a != -k d for non-negative integers k (violated at k = " +
                    k.str() + ")");
    if (a == b) {
        if (foot) throw error("entry13: footnote override applies only to the sign-condition case");
        return {a, b, d, false, P13::Case::equal_ab};
    }
    if (integer_value(-(b / d), k) && k >= 0)
        throw error("entry13: b must avoid -k d for non-negative integers k (violated at k = " +
                    k.str() + ")");
    Scalar ratio = (a - b) / d;
    bool neg = ratio.is_rational() ? ratio.rat() < 0 : ratio.cplx().re().sign() < 0;
    if (!neg && !foot)
        throw error("entry13: needs Re((a-b)/d) < 0 for the a != b, d != 0 case "
                    "(pass the footnote override to evaluate the counterexample)");
    if (neg && foot)
        throw error("entry13: footnote override applies only when Re((a-b)/d) >= 0");
    return {a, b, d, foot, P13::Case::sign_case};
}

struct Prr {
    Scalar q;
};

Prr parse_rr(const Json& p, int digits) {
    check_keys(p, {"q"}, "rr");
    Scalar q = get_scalar(p, "q", "rr", digits);
    if (cmp_abs(q, Rational(1)) >= 0) throw error("rr: needs |q| < 1");
    return {q};
}

struct Pbb {
    Scalar q, alpha;  // both complex-float
};

Pbb parse_bb(const Json& p, int digits, const char* who) {
    check_keys(p, {"q", "alpha"}, who);
    Scalar q = get_scalar(p, "q", who, digits);
    Scalar alpha = get_scalar(p, "alpha", who, digits);
    if (q.is_rational()) q = q.to_complex(digits);
    if (alpha.is_rational()) alpha = alpha.to_complex(digits);
    if (cmp_abs(q, Rational(1)) >= 0) throw error(std::string(who) + ": needs |q| < 1");
    if (q.is_zero() && alpha.cplx().re().sign() <= 0)
        throw error(std::string(who) + ": q = 0 needs Re(alpha) > 0 for q^alpha to be defined as 0");
    return {q, alpha};
}

// principal-branch power with the q = 0 convention used by the catalog
Scalar qpow(const Scalar& q, const Scalar& z, const char* who) {
    if (q.is_zero()) {
        if (z.is_zero()) return one_like(q);
        if (z.cplx().re().sign() > 0) return zero_like(q);
        throw error(std::string(who) + ": q = 0 needs exponents of positive real part");
    }
    return Scalar(pow(q.cplx(), z.cplx()));
}

// ---- sources -------------------------------------------------------------

CoefficientSource entry7_source(const Scalar& x) {
    Json d;
    d["b0"] = "0";
    d["family"] = "entry7";
    d["params"] = Json{{"x", format_scalar(x)}};
    auto term = [x](std::int64_t n) { return Term{x + n_like(n, x), x + n_like(n - 1, x)}; };
    return CoefficientSource(zero_like(x), term, std::nullopt, d);
}

CoefficientSource entry7a_source(const P7a& P) {
    Json d;
    d["b0"] = "0";
    d["family"] = "entry7a";
    d["params"] = Json{{"y", P.echo}};
    auto y = P.y;
    auto term = [y](std::int64_t n) {
        Scalar yn = y(n);
        if ((yn + one_like(yn)).is_zero())
            throw error("entry7a: (i) y_i != -1 violated at i = " + std::to_string(n));
        return Term{yn + one_like(yn), yn};
    };
    return CoefficientSource(zero_like(P.y(1)), term, std::nullopt, d);
}

CoefficientSource entry9_source(const Scalar& a, const Scalar& x) {
    Json d;
    d["b0"] = "0";
    d["family"] = "entry9";
    d["params"] = Json{{"a", format_scalar(a)}, {"x", format_scalar(x)}};
    Scalar one = one_like(x);
    auto term = [a, x, one](std::int64_t n) {
        return Term{x + n_like(n, x) * a, x + n_like(n - 1, x) * a - one};
    };
    return CoefficientSource(zero_like(x), term, std::nullopt, d);
}

CoefficientSource entry10_source(std::int64_t n) {
    Json d;
    d["b0"] = "0";
    d["family"] = "entry10";
    d["params"] = Json{{"n", n}};
    auto term = [n](std::int64_t k) {
        return Term{Scalar(Rational(static_cast<long>(k))), Scalar(Rational(static_cast<long>(k - n)))};
    };
    return CoefficientSource(Scalar(), term, std::nullopt, d);
}

CoefficientSource entry12_source(const Scalar& a, const Scalar& x) {
    Json d;
    d["b0"] = "0";
    d["family"] = "entry12";
    d["params"] = Json{{"a", format_scalar(a)}, {"x", format_scalar(x)}};
    auto term = [a, x](std::int64_t k) {
        if (k == 1) return Term{x + a, a};
        Scalar m = x + n_like(k - 1, a) * a;
        return Term{m * m - a * a, a};
    };
    return CoefficientSource(zero_like(a), term, std::nullopt, d);
}

CoefficientSource entry13_source(const P13& P) {
    Json d;
    d["b0"] = "0";
    d["family"] = "entry13";
    Json pj{{"a", format_scalar(P.a)}, {"b", format_scalar(P.b)}, {"d", format_scalar(P.d)}};
    if (P.footnote) pj["footnote"] = true;
    d["params"] = pj;
    Scalar a = P.a, b = P.b, dd = P.d;
    auto term = [a, b, dd](std::int64_t k) {
        if (k == 1) return Term{a * b, a + b + dd};
        Scalar s = n_like(k - 1, dd) * dd;
        return Term{-(a + s) * (b + s), a + b + n_like(2 * k - 1, dd) * dd};
    };
    return CoefficientSource(zero_like(a), term, std::nullopt, d);
}

CoefficientSource rr_source(const Scalar& q) {
    Json d;
    d["b0"] = format_scalar(one_like(q));
    d["family"] = "rr";
    d["params"] = Json{{"q", format_scalar(q)}};
    Scalar one = one_like(q);
    auto term = [q, one](std::int64_t n) { return Term{powi(q, n), one}; };
    return CoefficientSource(one, term, std::nullopt, d);
}

// c_1 = q^alpha, c_2k = q^(k-alpha), c_2k+1 = q^(k+alpha)
std::function<Scalar(std::int64_t)> bb_c_sequence(const Scalar& q, const Scalar& alpha, const char* who) {
    std::string w = who;
    return [q, alpha, w](std::int64_t j) {
        if (j == 1) return qpow(q, alpha, w.c_str());
        Scalar k = n_like(j / 2, q);
        return j % 2 == 0 ? qpow(q, k - alpha, w.c_str()) : qpow(q, k + alpha, w.c_str());
    };
}

CoefficientSource bb_source(const Pbb& P) {
    Json d;
    auto c = bb_c_sequence(P.q, P.alpha, "bb");
    Scalar one = one_like(P.q);
    d["b0"] = format_scalar(one - c(1));
    d["family"] = "bb";
    d["params"] = Json{{"q", format_scalar(P.q)}, {"alpha", format_scalar(P.alpha)}};
    auto term = [c, one](std::int64_t n) {
        if (n == 1) return Term{c(1), one};
        Scalar v = c(n / 2 + 1);
        return Term{n % 2 == 0 ? -v : v, one};
    };
    return CoefficientSource(one - c(1), term, std::nullopt, d);
}

CoefficientSource bb_even_source(const Pbb& P) {
    Json d;
    auto c = bb_c_sequence(P.q, P.alpha, "bb_even");
    Scalar one = one_like(P.q);
    d["b0"] = format_scalar(one - c(1));
    d["family"] = "bb_even";
    d["params"] = Json{{"q", format_scalar(P.q)}, {"alpha", format_scalar(P.alpha)}};
    auto term = [c, one](std::int64_t k) {
        if (k == 1) return Term{c(1), one - c(2)};
        Scalar ck = c(k);
        return Term{ck * ck, one + ck - c(k + 1)};
    };
    return CoefficientSource(one - c(1), term, std::nullopt, d);
}

// ---- sampling ------------------------------------------------------------

struct SampleSet {
    std::map<std::int64_t, ProjectiveValue> at;
    std::vector<std::pair<std::int64_t, Scalar>> head;  // finite approximants, N <= head_limit
    Scalar last;
    std::int64_t last_index = -1;
};

SampleSet collect_samples(const CoefficientSource& src, std::int64_t depth,
                          std::vector<std::int64_t> wanted, std::int64_t head_limit) {
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    SampleSet out;
    walk_convergents(src, depth, [&](const Convergent& cv) {
        if (cv.N == 0) return;
        if (!cv.B.is_zero()) {
            Scalar f = cv.A / cv.B;
            if (cv.N <= head_limit) out.head.emplace_back(cv.N, f);
            out.last = f;
            out.last_index = cv.N;
        }
        if (std::binary_search(wanted.begin(), wanted.end(), cv.N))
            out.at.emplace(cv.N, ProjectiveValue{cv.A, cv.B});
    });
    if (out.last_index < 0) throw error("all approximants at infinity");
    return out;
}

Scalar finite_at(const SampleSet& s, std::int64_t N, const char* who) {
    auto it = s.at.find(N);
    if (it == s.at.end() || it->second.is_infinite())
        throw error(std::string(who) + ": approximant at sampling index " + std::to_string(N) +
                    " is unavailable or at infinity");
    return it->second.A / it->second.B;
}

std::int64_t even_floor(std::int64_t n) { return n - (n & 1); }

Scalar abs_scalar(const Scalar& z, int digits) {
    if (z.is_rational()) return Scalar(abs_rational(z.rat()));
    BigFloat m = abs(z.cplx());
    return Scalar(BigComplex(m, BigFloat::from_long(0, m.prec()), digits));
}

}  // namespace

// ---- catalog plumbing ----------------------------------------------------

IdentityId identity_from_string(const std::string& name) {
    for (IdentityId id : identity_catalog())
        if (name == identity_name(id)) return id;
    throw parse_error("unknown identity \"" + name + "\"");
}

const char* identity_name(IdentityId id) {
    switch (id) {
        case IdentityId::entry7: return "entry7";
        case IdentityId::entry7a: return "entry7a";
        case IdentityId::entry9: return "entry9";
        case IdentityId::entry10: return "entry10";
        case IdentityId::entry12: return "entry12";
        case IdentityId::entry13: return "entry13";
        case IdentityId::rr: return "rr";
        case IdentityId::bb: return "bb";
        case IdentityId::bb_even: return "bb_even";
    }
    throw error("unreachable identity id");
}

const std::vector<IdentityId>& identity_catalog() {
    static const std::vector<IdentityId> all = {
        IdentityId::entry7,  IdentityId::entry7a, IdentityId::entry9,
        IdentityId::entry10, IdentityId::entry12, IdentityId::entry13,
        IdentityId::rr,      IdentityId::bb,      IdentityId::bb_even};
    return all;
}

Json entry13_footnote_params() {
    return Json{{"a", "2"}, {"b", "1"}, {"d", "1"}, {"footnote", true}};
}

std::optional<std::int64_t> sequence_length(const Json& spec) {
    if (spec.is_object() && spec.value("kind", std::string()) == "list") {
        auto it = spec.find("values");
        if (it != spec.end() && it->is_array()) return static_cast<std::int64_t>(it->size());
    }
    return std::nullopt;
}

std::function<Scalar(std::int64_t)> make_sequence(const Json& spec, int digits) {
    if (!spec.is_object()) throw parse_error("sequence spec must be a JSON object");
    auto kit = spec.find("kind");
    if (kit == spec.end() || !kit->is_string())
        throw parse_error("sequence spec needs a \"kind\" string");
    std::string kind = kit->get<std::string>();
    auto need = [&](const char* key) -> Scalar {
        auto it = spec.find(key);
        if (it == spec.end() || !it->is_string())
            throw parse_error("sequence kind \"" + kind + "\" needs a \"" + key + "\" Scalar string");
        return parse_scalar(it->get<std::string>(), digits);
    };
    auto only = [&](std::initializer_list<const char*> allowed) {
        for (const auto& item : spec.items()) {
            bool ok = false;
            for (const char* a : allowed)
                if (item.key() == a) ok = true;
            if (!ok) throw parse_error("sequence spec: unknown field \"" + item.key() + "\"");
        }
    };
    if (kind == "constant") {
        only({"kind", "value"});
        Scalar v = need("value");
        return [v](std::int64_t) { return v; };
    }
    if (kind == "linear") {
        only({"kind", "start", "step"});
        Scalar s = need("start"), t = need("step");
        require_same_mode("linear sequence", {&s, &t});
        return [s, t](std::int64_t i) { return s + n_like(i - 1, s) * t; };
    }
    if (kind == "geometric") {
        only({"kind", "scale", "ratio"});
        Scalar c = need("scale"), r = need("ratio");
        require_same_mode("geometric sequence", {&c, &r});
        return [c, r](std::int64_t i) { return c * powi(r, i - 1); };
    }
    if (kind == "list") {
        only({"kind", "values"});
        auto it = spec.find("values");
        if (it == spec.end() || !it->is_array())
            throw parse_error("sequence kind \"list\" needs a \"values\" array");
        std::vector<Scalar> vals;
        for (const auto& v : *it) {
            if (!v.is_string()) throw parse_error("list sequence values must be Scalar strings");
            vals.push_back(parse_scalar(v.get<std::string>(), digits));
        }
        return [vals](std::int64_t i) {
            if (i < 1 || i > static_cast<std::int64_t>(vals.size()))
                throw error("list sequence has no element at index " + std::to_string(i));
            return vals[static_cast<std::size_t>(i - 1)];
        };
    }
    throw parse_error("unknown sequence kind \"" + kind + "\"");
}

CoefficientSource cf_source(IdentityId id, const Json& params, int digits) {
    switch (id) {
        case IdentityId::entry7: return entry7_source(parse7(params, digits).x);
        case IdentityId::entry7a: return entry7a_source(parse7a(params, digits));
        case IdentityId::entry9: {
            P9 P = parse9(params, digits);
            return entry9_source(P.a, P.x);
        }
        case IdentityId::entry10: return entry10_source(get_positive_int(params, "n", "entry10"));
        case IdentityId::entry12: {
            P12 P = parse12(params, digits);
            return entry12_source(P.a, P.x);
        }
        case IdentityId::entry13: return entry13_source(parse13(params, digits));
        case IdentityId::rr: return rr_source(parse_rr(params, digits).q);
        case IdentityId::bb: return bb_source(parse_bb(params, digits, "bb"));
        case IdentityId::bb_even: return bb_even_source(parse_bb(params, digits, "bb_even"));
    }
    throw error("unreachable identity id");
}

ClosedForm closed_form(IdentityId id, const Json& params, int digits) {
    switch (id) {
        case IdentityId::entry7: {
            P7 P = parse7(params, digits);
            return {ClosedForm::Kind::finite, one_like(P.x)};
        }
        case IdentityId::entry7a: {
            P7a P = parse7a(params, digits);
            return {ClosedForm::Kind::finite, one_like(P.y(1))};
        }
        case IdentityId::entry9: {
            P9 P = parse9(params, digits);
            Scalar one = one_like(P.x);
            if ((P.x + one).is_zero()) return {ClosedForm::Kind::infinite, Scalar()};
            return {ClosedForm::Kind::finite, (P.x + P.a + one) / (P.x + one)};
        }
        case IdentityId::entry10: {
            std::int64_t n = get_positive_int(params, "n", "entry10");
            return {ClosedForm::Kind::finite, Scalar(Rational(static_cast<long>(n)))};
        }
        case IdentityId::entry12: {
            P12 P = parse12(params, digits);
            return {ClosedForm::Kind::finite, one_like(P.a)};
        }
        case IdentityId::entry13: {
            P13 P = parse13(params, digits);
            return {ClosedForm::Kind::finite, P.footnote ? P.b : P.a};
        }
        case IdentityId::rr:
        case IdentityId::bb:
        case IdentityId::bb_even: {
            // validate params even though the target is a cross-evaluation
            if (id == IdentityId::rr)
                parse_rr(params, digits);
            else
                parse_bb(params, digits, identity_name(id));
            return {ClosedForm::Kind::cross_check, Scalar()};
        }
    }
    throw error("unreachable identity id");
}

CoefficientSource proof_extension(IdentityId id, const Json& params, int digits) {
    switch (id) {
        case IdentityId::entry7:
        case IdentityId::entry7a:
        case IdentityId::entry9:
        case IdentityId::entry10:
            return extend(cf_source(id, params, digits), ExtensionScheme::cor2());
        case IdentityId::entry12: {
            P12 P = parse12(params, digits);
            Scalar a = P.a, x = P.x;
            auto aseq = [a, x](std::int64_t n) {
                if (n == 1) return x + a;
                if (n % 2 == 0) return -(x + n_like(n / 2 - 1, a) * a);
                return x + n_like(n / 2 + 1, a) * a;
            };
            Json sd{{"family", "entry12"}, {"params", Json{{"a", format_scalar(a)}, {"x", format_scalar(x)}}}};
            return extend(entry12_source(a, x), ExtensionScheme::cor3(aseq, x + a, sd));
        }
        case IdentityId::entry13: {
            P13 P = parse13(params, digits);
            Scalar a = P.a, b = P.b, dd = P.d;
            auto aseq = [a, b, dd](std::int64_t n) {
                if (n == 1) return a * b;
                Scalar s = n_like(n / 2, dd) * dd;
                return n % 2 == 0 ? a + s : b + s;
            };
            Json sd{{"family", "entry13"},
                    {"params", Json{{"a", format_scalar(a)}, {"b", format_scalar(b)}, {"d", format_scalar(dd)}}}};
            return extend(entry13_source(P), ExtensionScheme::cor3(aseq, b, sd));
        }
        case IdentityId::bb: return cf_source(IdentityId::bb, params, digits);
        case IdentityId::rr:
        case IdentityId::bb_even:
            throw error(std::string("no proof extension recorded for \"") + identity_name(id) + "\"");
    }
    throw error("unreachable identity id");
}

// ---- hypergeometric helpers ----------------------------------------------

Scalar hyp2f1_partial_sum(const Scalar& a, const Scalar& b, const Scalar& c, std::int64_t k) {
    if (k < 0) throw error("hyp2f1_partial_sum: needs k >= 0");
    require_same_mode("hyp2f1_partial_sum", {&a, &b, &c});
    Scalar term = one_like(a);
    Scalar sum = term;
    for (std::int64_t i = 1; i <= k; ++i) {
        Scalar cf = c + n_like(i - 1, c);
        if (cf.is_zero())
            throw error("hyp2f1_partial_sum: pole, c + j = 0 at j = " + std::to_string(i - 1));
        term = term * (a + n_like(i - 1, a)) * (b + n_like(i - 1, b)) / (cf * n_like(i, c));
        sum = sum + term;
    }
    return sum;
}

Scalar hill_ratio(const Scalar& a, const Scalar& b, const Scalar& c, std::int64_t k, int digits) {
    if (k < 2) throw error("hill_ratio: needs k >= 2");
    mpfr_prec_t prec = bits_for_digits(digits);
    auto realf = [&](const Scalar& z, const char* nm) {
        BigFloat out(prec);
        if (z.is_rational()) {
            out = BigFloat::from_rational(z.rat(), prec);
        } else {
            if (!z.cplx().is_real())
                throw error(std::string("hill_ratio: supports real parameters only (") + nm +
                            " has a nonzero imaginary part)");
            mpfr_set(out.get(), z.cplx().re().get(), MPFR_RNDN);
        }
        return out;
    };
    BigFloat fa = realf(a, "a"), fb = realf(b, "b"), fc = realf(c, "c");
    for (const auto* pr : {&fa, &fb, &fc}) {
        if (pr->sign() <= 0 && mpfr_integer_p(pr->get()))
            throw error("hill_ratio: gamma pole at a non-positive integer parameter");
    }
    BigFloat diff(prec);  // c - a - b decides the regime
    mpfr_sub(diff.get(), fc.get(), fa.get(), MPFR_RNDN);
    mpfr_sub(diff.get(), diff.get(), fb.get(), MPFR_RNDN);
    bool log_regime = diff.is_zero();
    if (!log_regime && diff.sign() > 0)
        throw error("hill_ratio: asymptotics cover Re(c-a-b) < 0 or c = a+b only");

    auto cplx = [&](const BigFloat& f) {
        BigFloat re(prec);
        mpfr_set(re.get(), f.get(), MPFR_RNDN);
        return Scalar(BigComplex(re, BigFloat::from_long(0, prec), digits));
    };
    Scalar sk = hyp2f1_partial_sum(cplx(fa), cplx(fb), cplx(fc), k);

    BigFloat ga(prec), gb(prec), gc(prec), growth(prec), asym(prec);
    mpfr_gamma(ga.get(), fa.get(), MPFR_RNDN);
    mpfr_gamma(gb.get(), fb.get(), MPFR_RNDN);
    mpfr_gamma(gc.get(), fc.get(), MPFR_RNDN);
    BigFloat lnk(prec);
    mpfr_set_si(lnk.get(), static_cast<long>(k), MPFR_RNDN);
    mpfr_log(lnk.get(), lnk.get(), MPFR_RNDN);
    if (log_regime) {
        mpfr_set(growth.get(), lnk.get(), MPFR_RNDN);
    } else {
        mpfr_neg(growth.get(), diff.get(), MPFR_RNDN);  // a + b - c
        mpfr_mul(growth.get(), growth.get(), lnk.get(), MPFR_RNDN);
        mpfr_exp(growth.get(), growth.get(), MPFR_RNDN);  // k^(a+b-c)
    }
    mpfr_mul(asym.get(), gc.get(), growth.get(), MPFR_RNDN);
    mpfr_div(asym.get(), asym.get(), ga.get(), MPFR_RNDN);
    mpfr_div(asym.get(), asym.get(), gb.get(), MPFR_RNDN);
    return sk / cplx(asym);
}

// ---- extrapolation -------------------------------------------------------

Scalar richardson_limit(const Scalar& f_depth, const Scalar& f_half_depth, const Scalar& p) {
    if (p.is_zero()) throw error("richardson_limit: decay exponent must be nonzero");
    Scalar two_p;
    if (p.is_rational() && denominator(p.rat()) == 1) {
        long e = numerator(p.rat()).convert_to<long>();
        two_p = powi(Scalar(Rational(2)), e);
        if (!f_depth.is_rational()) two_p = two_p.to_complex(f_depth.digits());
    } else {
        if (f_depth.is_rational())
            throw error("richardson_limit: a non-integer decay exponent needs complex-float values");
        int dg = f_depth.digits();
        Scalar pc = p.is_rational() ? p.to_complex(dg) : p;
        two_p = Scalar(pow(BigComplex::from_long(2, dg), pc.cplx()));
    }
    Scalar one = one_like(f_depth);
    return (two_p * f_depth - f_half_depth) / (two_p - one);
}

Scalar mobius_limit(const std::array<Scalar, 3>& h, const std::array<Scalar, 3>& f) {
    Scalar m12 = h[1] * h[2] * (f[1] - f[2]);
    Scalar m02 = h[0] * h[2] * (f[0] - f[2]);
    Scalar m01 = h[0] * h[1] * (f[0] - f[1]);
    Scalar det = m12 - m02 + m01;
    if (det.is_zero()) return f[2];
    Scalar det_a = f[0] * m12 - f[1] * m02 + f[2] * m01;
    return det_a / det;
}

Scalar mobius_limit_equispaced(const std::array<Scalar, 3>& g) {
    Scalar d0 = g[1] - g[0];
    Scalar d1 = g[2] - g[1];
    Scalar den = d1 - d0;
    if (den.is_zero()) return g[2];
    Scalar two = one_like(g[0]) + one_like(g[0]);
    return g[1] - two * d0 * d1 / den;
}

// ---- verification driver -------------------------------------------------

namespace {

// oracle for entry13: f_k = a S_k / (S_k + 1) with the per-case partial sum
Json entry13_oracle_check(const P13& P, const SampleSet& s, std::int64_t upto) {
    Json out;
    const char* form = "hypergeometric-partial-sum";
    if (P.cse == P13::Case::zero_d) form = "geometric-sum";
    else if (P.a == P.b) form = "equal-parameter-sum";
    out["form"] = form;

    Scalar one = one_like(P.a);
    Scalar S = zero_like(P.a), t = one;
    Scalar bd, ad1;
    if (P.cse != P13::Case::zero_d) {
        bd = P.b / P.d;
        ad1 = P.a / P.d + one;
    }
    double maxd = 0.0;
    bool exact = P.a.is_rational();
    std::size_t hi = 0;
    std::int64_t checked = 0;
    for (std::int64_t k = 1; k <= upto; ++k) {
        if (P.cse == P13::Case::zero_d)
            t = t * (P.b / P.a);
        else
            t = t * (bd + n_like(k - 1, P.a)) / (ad1 + n_like(k - 1, P.a));
        S = S + t;
        Scalar den = S + one;
        while (hi < s.head.size() && s.head[hi].first < k) ++hi;
        if (hi >= s.head.size()) break;
        if (s.head[hi].first != k) continue;  // recursed approximant at infinity
        if (den.is_zero()) continue;
        Scalar fo = P.a * S / den;
        const Scalar& fr = s.head[hi].second;
        double g = gap_magnitude(fr, fo);
        if (g > maxd) maxd = g;
        if (exact && fr != fo) exact = false;
        checked = k;
    }
    out["checked_upto"] = checked;
    out["max_abs_diff"] = maxd;
    out["exact"] = exact;
    return out;
}

}  // namespace

VerificationReport verify(IdentityId id, const Json& params, std::int64_t depth, int digits,
                          const Rational& tol) {
    if (depth < 16) throw error("verify: needs depth >= 16");
    VerificationReport rep;
    rep.id = identity_name(id);
    rep.depth = depth;
    rep.precision_digits = digits;

    CoefficientSource src = cf_source(id, params, digits);
    rep.params = src.descriptor().value("params", Json::object());
    rep.target = closed_form(id, params, digits);

    EmpiricalLimit emp = empirical_limit(src, depth, tol);
    Json diag;
    diag["empirical"] = emp.diagnostics;

    // sampling plan: decay probes (even indices) plus estimator-specific sets
    std::int64_t E2 = even_floor(depth), E1 = even_floor(E2 / 2), E0 = even_floor(E1 / 2);
    std::vector<std::int64_t> wanted = {E0, E1, E2};
    std::int64_t head_limit = 0;

    enum class Method { deepest, mobius, richardson, mobius_geometric } method = Method::deepest;
    std::optional<P13> p13;
    if (id == IdentityId::entry12) method = Method::mobius;
    if (id == IdentityId::entry13) {
        p13 = parse13(params, digits);
        head_limit = std::min<std::int64_t>(50, depth);
        if (p13->footnote) method = Method::mobius;
        else if (p13->cse == P13::Case::equal_ab) method = Method::mobius_geometric;
        else if (p13->cse == P13::Case::sign_case) method = Method::richardson;
    }

    std::int64_t gB1 = 0, gB0 = 0;
    if (method == Method::mobius) {
        wanted.insert(wanted.end(), {E2 - 2, E1 - 2, E0 - 2});
    } else if (method == Method::richardson) {
        wanted.insert(wanted.end(), {E2 / 2, E2 - 2, (E2 - 2) / 2});
    } else if (method == Method::mobius_geometric) {
        if (depth < 64) throw error("verify: the equal-parameter estimator needs depth >= 64");
        gB1 = even_floor(depth / 4);
        gB0 = even_floor(gB1 / 2);
        wanted.insert(wanted.end(), {gB1, 2 * gB1, 4 * gB1, gB0, 2 * gB0, 4 * gB0,
                                     gB1 - 2, 2 * (gB1 - 2), 4 * (gB1 - 2),
                                     gB0 - 2, 2 * (gB0 - 2), 4 * (gB0 - 2)});
    }

    SampleSet samples = collect_samples(src, depth, wanted, head_limit);

    Scalar estimate = samples.last;
    bool gate = emp.converged;
    Json est_diag;
    if (method == Method::deepest) {
        est_diag["method"] = "deepest-approximant";
        est_diag["index"] = samples.last_index;
    } else if (method == Method::mobius) {
        auto fit = [&](std::int64_t n2, std::int64_t n1, std::int64_t n0) {
            std::array<Scalar, 3> h, f;
            std::int64_t ns[3] = {n0, n1, n2};
            for (int i = 0; i < 3; ++i) {
                f[i] = finite_at(samples, ns[i], "verify");
                h[i] = one_like(f[i]) / n_like(ns[i], f[i]);
            }
            return mobius_limit(h, f);
        };
        estimate = fit(E2, E1, E0);
        Scalar shifted = fit(E2 - 2, E1 - 2, E0 - 2);
        gate = cmp_abs(estimate - shifted, tol) < 0;
        est_diag["method"] = "mobius";
        est_diag["samples"] = Json::array({E0, E1, E2});
        est_diag["consistency_delta"] = gap_magnitude(estimate, shifted);
    } else if (method == Method::richardson) {
        Scalar p = (p13->b - p13->a) / p13->d;
        auto fit = [&](std::int64_t n) {
            return richardson_limit(finite_at(samples, n, "verify"),
                                    finite_at(samples, n / 2, "verify"), p);
        };
        estimate = fit(E2);
        Scalar shifted = fit(E2 - 2);
        gate = cmp_abs(estimate - shifted, tol) < 0;
        est_diag["method"] = "richardson";
        est_diag["decay_exponent"] = format_scalar(p);
        est_diag["samples"] = Json::array({E2 / 2, E2});
        est_diag["consistency_delta"] = gap_magnitude(estimate, shifted);
    } else {  // mobius_geometric: equispaced fit at two scales + one sweep in 1/k
        auto fit = [&](std::int64_t base) {
            return mobius_limit_equispaced({finite_at(samples, base, "verify"),
                                            finite_at(samples, 2 * base, "verify"),
                                            finite_at(samples, 4 * base, "verify")});
        };
        Scalar one_p{Rational(1)};
        estimate = richardson_limit(fit(gB1), fit(gB0), one_p);
        Scalar shifted = richardson_limit(fit(gB1 - 2), fit(gB0 - 2), one_p);
        gate = cmp_abs(estimate - shifted, tol) < 0;
        est_diag["method"] = "mobius-geometric-sweep";
        est_diag["samples"] = Json::array({gB1, 2 * gB1, 4 * gB1});
        est_diag["consistency_delta"] = gap_magnitude(estimate, shifted);
    }
    diag["estimator"] = est_diag;

    // decay classification from the even-index probes
    {
        Json decay;
        bool have = samples.at.count(E0) && samples.at.count(E1) && samples.at.count(E2) &&
                    !samples.at.at(E0).is_infinite() && !samples.at.at(E1).is_infinite() &&
                    !samples.at.at(E2).is_infinite();
        if (!have) {
            decay["class"] = "unknown";
        } else {
            auto v = [&](std::int64_t n) { return samples.at.at(n).A / samples.at.at(n).B; };
            double g1 = gap_magnitude(v(E2), v(E1));
            double g0 = gap_magnitude(v(E1), v(E0));
            if (g1 == 0.0) {
                decay["class"] = "negligible";
            } else if (g0 == 0.0) {
                decay["class"] = "unknown";
            } else {
                double r = g1 / g0;
                decay["ratio"] = r;
                if (r < 0.2) {
                    decay["class"] = "geometric";
                } else if (r < 0.85) {
                    decay["class"] = "algebraic";
                    decay["exponent"] = -std::log2(r);
                } else {
                    decay["class"] = "logarithmic";
                }
            }
        }
        diag["decay"] = decay;
    }

    if (p13) diag["oracle"] = entry13_oracle_check(*p13, samples, head_limit);
    if (p13 && p13->footnote)
        diag["note"] = "sign condition Re((a-b)/d) < 0 violated by design; target overridden to b";
    if (id == IdentityId::entry9 && parse9(params, digits).periodic)
        diag["note"] = "a = 0 gives a periodic fraction; verified empirically only";
    if (id == IdentityId::entry7a)
        diag["condition_start_index"] = parse7a(params, digits).condition_start;

    // target comparison
    rep.estimate = estimate;
    if (rep.target.kind == ClosedForm::Kind::finite) {
        Scalar tv = rep.target.value;
        if (estimate.is_rational() && !tv.is_rational()) estimate = estimate.to_complex(digits);
        if (!estimate.is_rational() && tv.is_rational()) tv = tv.to_complex(digits);
        Scalar diffv = estimate - tv;
        rep.abs_diff = abs_scalar(diffv, digits);
        rep.verdict = cmp_abs(diffv, tol) < 0 && gate;
    } else if (rep.target.kind == ClosedForm::Kind::infinite) {
        diag["note"] = "target at the point at infinity; abs_diff is |1/estimate|";
        if (estimate.is_zero()) {
            rep.abs_diff = Scalar(Rational(1));
            rep.verdict = false;
        } else {
            Scalar inv = one_like(estimate) / estimate;
            rep.abs_diff = abs_scalar(inv, digits);
            rep.verdict = cmp_abs(inv, tol) < 0;
        }
    } else {  // cross-check against the partner identity
        CoefficientSource partner = [&]() {
            if (id == IdentityId::rr) {
                Prr P = parse_rr(params, digits);
                Scalar qc = P.q.is_rational() ? P.q.to_complex(digits) : P.q;
                return bb_source(Pbb{qc, Scalar(BigComplex::zero(digits))});
            }
            if (id == IdentityId::bb) {
                Pbb P = parse_bb(params, digits, "bb");
                return rr_source(P.q);
            }
            Pbb P = parse_bb(params, digits, "bb_even");
            return bb_source(P);
        }();
        EmpiricalLimit pemp = empirical_limit(partner, depth, tol);
        Scalar pv = pemp.estimate.A / pemp.estimate.B;
        rep.target.value = pv;
        Scalar self = estimate;
        if (self.is_rational()) self = self.to_complex(digits);
        Scalar diffv = self - pv;
        rep.abs_diff = abs_scalar(diffv, digits);
        rep.verdict = cmp_abs(diffv, tol) < 0 && gate && pemp.converged;
        diag["cross_check"] =
            Json{{"partner", partner.descriptor().value("family", std::string())},
                 {"partner_params", partner.descriptor().value("params", Json::object())},
                 {"partner_estimate", format_scalar(pv)},
                 {"partner_converged", pemp.converged}};
    }

    rep.diagnostics = diag;
    return rep;
}

}  // namespace cf
