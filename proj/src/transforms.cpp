#include "cf/transforms.hpp"

namespace cf {

namespace {

void require_nonzero(const Scalar& b, std::int64_t n, const char* what) {
    if (b.is_zero())
        throw error(std::string(what) + " does not exist: b_" + std::to_string(n) + " = 0");
}

bool terms_match(const Term& got, const Term& want) {
    if (got.a.is_rational() != want.a.is_rational()) return false;
    if (got.a.is_rational()) return got.a == want.a && got.b == want.b;
    return near(got.a, want.a) && near(got.b, want.b);
}

}  // namespace

CoefficientSource even_part(const CoefficientSource& src) {
    Json desc;
    desc["transform"] = "even";
    desc["of"] = src.descriptor();
    std::optional<std::int64_t> len;
    if (src.length()) len = *src.length() / 2;
    auto fn = [src](std::int64_t k) -> Term {
        if (k == 1) {
            Term t1 = src.term(1), t2 = src.term(2);
            require_nonzero(t2.b, 2, "even part");
            return Term{t2.b * t1.a, t2.b * t1.b + t2.a};
        }
        // uses source terms 2k-2 .. 2k; divides by b_(2k-2)
        Term u = src.term(2 * k - 2), v = src.term(2 * k - 1), w = src.term(2 * k);
        require_nonzero(u.b, 2 * k - 2, "even part");
        require_nonzero(w.b, 2 * k, "even part");
        Scalar ratio = v.a * w.b / u.b;
        return Term{-(u.a * ratio), w.a + v.b * w.b + ratio};
    };
    return CoefficientSource(src.b0(), std::move(fn), len, std::move(desc));
}

CoefficientSource odd_part(const CoefficientSource& src) {
    Term t1 = src.term(1);
    require_nonzero(t1.b, 1, "odd part");
    Scalar b0 = (src.b0() * t1.b + t1.a) / t1.b;
    Json desc;
    desc["transform"] = "odd";
    desc["of"] = src.descriptor();
    std::optional<std::int64_t> len;
    if (src.length()) len = (*src.length() - 1) / 2;
    auto fn = [src](std::int64_t k) -> Term {
        if (k == 1) {
            Term u1 = src.term(1), u2 = src.term(2), u3 = src.term(3);
            require_nonzero(u1.b, 1, "odd part");
            require_nonzero(u3.b, 3, "odd part");
            return Term{-(u1.a * u2.a * u3.b / u1.b), u1.b * (u3.a + u2.b * u3.b) + u2.a * u3.b};
        }
        if (k == 2) {
            // the second numerator keeps the stray b1 factor
            Term u1 = src.term(1), u3 = src.term(3), u4 = src.term(4), u5 = src.term(5);
            require_nonzero(u3.b, 3, "odd part");
            require_nonzero(u5.b, 5, "odd part");
            return Term{-(u3.a * u4.a * u5.b * u1.b / u3.b), u5.a + u4.b * u5.b + u4.a * u5.b / u3.b};
        }
        Term u = src.term(2 * k - 1), v = src.term(2 * k), w = src.term(2 * k + 1);
        require_nonzero(u.b, 2 * k - 1, "odd part");
        require_nonzero(w.b, 2 * k + 1, "odd part");
        Scalar ratio = v.a * w.b / u.b;
        return Term{-(u.a * ratio), w.a + v.b * w.b + ratio};
    };
    return CoefficientSource(std::move(b0), std::move(fn), len, std::move(desc));
}

// ---- extensions -------------------------------------------------------------

ExtensionScheme ExtensionScheme::cor1() {
    return {Kind::cor1, nullptr, std::nullopt, Json()};
}

ExtensionScheme ExtensionScheme::cor2() {
    return {Kind::cor2, nullptr, std::nullopt, Json()};
}

ExtensionScheme ExtensionScheme::cor3(std::function<Scalar(std::int64_t)> a_seq, Scalar b1,
                                      Json seq_descriptor) {
    return {Kind::cor3, std::move(a_seq), std::move(b1), std::move(seq_descriptor)};
}

ExtensionScheme ExtensionScheme::cor7(std::function<Scalar(std::int64_t)> c_seq,
                                      Json seq_descriptor) {
    return {Kind::cor7, std::move(c_seq), std::nullopt, std::move(seq_descriptor)};
}

const char* scheme_name(ExtensionScheme::Kind k) {
    switch (k) {
        case ExtensionScheme::Kind::cor1: return "cor1";
        case ExtensionScheme::Kind::cor2: return "cor2";
        case ExtensionScheme::Kind::cor3: return "cor3";
        case ExtensionScheme::Kind::cor7: return "cor7";
    }
    throw error("unknown extension scheme");
}

namespace {

Json extend_descriptor(const CoefficientSource& target, const ExtensionScheme& s) {
    Json desc;
    desc["transform"] = std::string("extend:") + scheme_name(s.kind);
    if (s.kind == ExtensionScheme::Kind::cor3) {
        desc["a_seq"] = s.seq_descriptor.is_null() ? Json("custom") : s.seq_descriptor;
        desc["b1"] = s.b1->str();
    } else if (s.kind == ExtensionScheme::Kind::cor7) {
        desc["c_seq"] = s.seq_descriptor.is_null() ? Json("custom") : s.seq_descriptor;
    }
    desc["of"] = target.descriptor();
    return desc;
}

CoefficientSource extend_cor1(const CoefficientSource& target, Json desc) {
    std::optional<std::int64_t> tlen = target.length();
    std::optional<std::int64_t> len;
    if (tlen) len = 2 * *tlen;
    Scalar one = one_like(target.b0());
    Scalar zero = zero_like(target.b0());
    // finite targets use the phantom c_(L+1) = 0 so the 2L-term extension
    // contracts back exactly
    auto c = [target, tlen, zero](std::int64_t j) -> Scalar {
        if (tlen && j == *tlen + 1) return zero;
        return target.term(j).a;
    };
    auto fn = [target, c, one](std::int64_t n) -> Term {
        if (n == 1) return Term{c(1), target.term(1).b - c(2)};
        if (n % 2 == 0) return Term{c(n / 2 + 1), one};
        std::int64_t k = n / 2;  // n = 2k+1
        return Term{-one, target.term(k + 1).b - c(k + 2) + one};
    };
    return CoefficientSource(target.b0(), std::move(fn), len, std::move(desc));
}

CoefficientSource extend_cor2(const CoefficientSource& target, Json desc) {
    std::optional<std::int64_t> len;
    if (target.length()) len = 2 * *target.length();
    Scalar one = one_like(target.b0());
    auto fn = [target, one](std::int64_t n) -> Term {
        if (n == 1) {
            Term t = target.term(1);
            return Term{t.a, t.b + one};
        }
        if (n % 2 == 0) return Term{-one, one};
        Term t = target.term(n / 2 + 1);
        return Term{t.a, t.b - t.a + one};
    };
    return CoefficientSource(target.b0(), std::move(fn), len, std::move(desc));
}

[[noreturn]] void bad_shape(const char* kind, std::int64_t k) {
    throw error(std::string("extension target does not have the ") + kind +
                " shape at term " + std::to_string(k));
}

CoefficientSource extend_cor3(const CoefficientSource& target, const ExtensionScheme& s,
                              Json desc) {
    if (!s.seq) throw error("cor3 extension needs an explicit a-sequence");
    const auto a = s.seq;
    Scalar b1 = *s.b1;
    std::optional<std::int64_t> tlen = target.length();
    std::optional<std::int64_t> len;
    if (tlen) len = 2 * *tlen;
    Scalar one = one_like(target.b0());
    Scalar zero = zero_like(target.b0());
    {
        Term t1 = target.term(1);
        if (!terms_match(t1, Term{a(1), b1 + a(2)})) bad_shape("cor3", 1);
    }
    auto fn = [target, a, b1, tlen, one, zero](std::int64_t n) -> Term {
        if (n >= 2) {
            std::int64_t j = n / 2 + 1;  // target term adjacent to this index
            if (!tlen || j <= *tlen) {
                Term t = target.term(j);
                Term want{-(a(2 * j - 2) * a(2 * j - 1)), a(2 * j) + a(2 * j - 1)};
                if (!terms_match(t, want)) bad_shape("cor3", j);
            }
        }
        if (n == 1) return Term{a(1), b1};
        if (n % 2 == 0) return Term{a(n), one};
        return Term{a(n), zero};
    };
    return CoefficientSource(target.b0(), std::move(fn), len, std::move(desc));
}

CoefficientSource extend_cor7(const CoefficientSource& target, const ExtensionScheme& s,
                              Json desc) {
    if (!s.seq) throw error("cor7 extension needs an explicit c-sequence");
    const auto c = s.seq;
    std::optional<std::int64_t> tlen = target.length();
    std::optional<std::int64_t> len;
    if (tlen) len = 2 * *tlen + 1;
    Scalar one = one_like(target.b0());
    Scalar zero = zero_like(target.b0());
    {
        Scalar c1 = c(1);
        bool ok = target.b0().is_rational() == c1.is_rational() &&
                  (target.b0().is_rational() ? target.b0() == c1 : near(target.b0(), c1));
        if (!ok) bad_shape("cor7", 0);
    }
    auto fn = [target, c, tlen, one](std::int64_t n) -> Term {
        if (n >= 2) {
            std::int64_t k = n / 2;
            if (!tlen || k <= *tlen) {
                Term t = target.term(k);
                if (!terms_match(t, Term{c(k) * c(k + 1), one})) bad_shape("cor7", k);
            }
        }
        if (n == 1) return Term{c(1), one};
        std::int64_t k = n / 2;
        if (n % 2 == 0) return Term{-c(k + 1), one};
        return Term{c(k + 1), one};
    };
    return CoefficientSource(std::move(zero), std::move(fn), len, std::move(desc));
}

}  // namespace

CoefficientSource extend(const CoefficientSource& target, const ExtensionScheme& scheme) {
    Json desc = extend_descriptor(target, scheme);
    switch (scheme.kind) {
        case ExtensionScheme::Kind::cor1: return extend_cor1(target, std::move(desc));
        case ExtensionScheme::Kind::cor2: return extend_cor2(target, std::move(desc));
        case ExtensionScheme::Kind::cor3: return extend_cor3(target, scheme, std::move(desc));
        case ExtensionScheme::Kind::cor7: return extend_cor7(target, scheme, std::move(desc));
    }
    throw error("unknown extension scheme");
}

// ---- series transforms ------------------------------------------------------

CoefficientSource bernoulli_cf(const std::vector<Scalar>& K) {
    if (K.empty()) throw error("bernoulli transform needs at least one value");
    for (size_t i = 1; i < K.size(); ++i)
        if (K[i] == K[i - 1])
            throw error("bernoulli transform needs K_i != K_(i-1) (i=" + std::to_string(i) + ")");
    Json seq = Json::array();
    for (const Scalar& k : K) seq.push_back(k.str());
    Json desc;
    desc["transform"] = "bernoulli";
    desc["of"] = Json{{"sequence", seq}};
    Scalar one = one_like(K[0]);
    auto fn = [K, one](std::int64_t n) -> Term {
        auto at = [&K](std::int64_t i) { return K[static_cast<size_t>(i)]; };
        if (n == 1) return Term{at(1) - at(0), one};
        if (n == 2) return Term{at(1) - at(2), at(2) - at(0)};
        return Term{(at(n - 2) - at(n - 3)) * (at(n - 1) - at(n)), at(n) - at(n - 2)};
    };
    return CoefficientSource(K[0], std::move(fn), static_cast<std::int64_t>(K.size()) - 1,
                             std::move(desc));
}

CoefficientSource euler_cf(const std::vector<Scalar>& a) {
    if (a.empty()) throw error("euler transform needs at least one value");
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i].is_zero())
            throw error("euler transform needs a_i != 0 (i=" + std::to_string(i) + ")");
    Json seq = Json::array();
    for (const Scalar& x : a) seq.push_back(x.str());
    Json desc;
    desc["transform"] = "euler";
    desc["of"] = Json{{"sequence", seq}};
    Scalar one = one_like(a[0]);
    auto fn = [a, one](std::int64_t n) -> Term {
        auto at = [&a](std::int64_t i) { return a[static_cast<size_t>(i)]; };
        if (n == 1) return Term{at(1), one};
        if (n == 2) return Term{-at(2), at(2) + at(1)};
        return Term{-(at(n - 2) * at(n)), at(n) + at(n - 1)};
    };
    return CoefficientSource(a[0], std::move(fn), static_cast<std::int64_t>(a.size()) - 1,
                             std::move(desc));
}

CoefficientSource collapse_zeros(const CoefficientSource& src) {
    if (!src.length()) throw error("collapse requires a finite source");
    const std::int64_t L = *src.length();
    Scalar one = one_like(src.b0());
    std::vector<Scalar> bs;
    bs.reserve(static_cast<size_t>(L));
    for (std::int64_t n = 1; n <= L; ++n) {
        Term t = src.term(n);
        if (!(t.a == one)) throw error("collapse requires unit partial numerators");
        bs.push_back(t.b);
    }
    for (;;) {
        size_t i = 0;
        while (i < bs.size() && !bs[i].is_zero()) ++i;
        if (i == bs.size()) break;
        if (i == 0) throw error("leading zero denominator cannot collapse");
        if (i + 1 == bs.size()) throw error("trailing zero denominator with no successor to merge");
        bs[i - 1] = bs[i - 1] + bs[i + 1];
        bs.erase(bs.begin() + static_cast<std::ptrdiff_t>(i),
                 bs.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    }
    Json desc;
    desc["transform"] = "collapse";
    desc["of"] = src.descriptor();
    auto n_terms = static_cast<std::int64_t>(bs.size());
    auto fn = [bs = std::move(bs), one](std::int64_t n) {
        return Term{one, bs[static_cast<size_t>(n - 1)]};
    };
    return CoefficientSource(src.b0(), std::move(fn), n_terms, std::move(desc));
}

}  // namespace cf
