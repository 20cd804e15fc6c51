#include "doctest.h"

#include "cf/eval.hpp"
#include "cf/serialize.hpp"
#include "test_util.hpp"

using cf::CoefficientSource;
using cf::IdentityId;
using cf::Json;
using cf::Scalar;
using cf::Term;
using cft::rat;

namespace {

bool same_terms_to(const CoefficientSource& x, const CoefficientSource& y, std::int64_t upto) {
    bool rational = x.b0().is_rational();
    if (rational != y.b0().is_rational()) return false;
    auto eq = [rational](const Scalar& p, const Scalar& q) {
        return rational ? p == q : near(p, q);
    };
    if (!eq(x.b0(), y.b0())) return false;
    for (std::int64_t n = 1; n <= upto; ++n) {
        Term tx = x.term(n), ty = y.term(n);
        if (!eq(tx.a, ty.a) || !eq(tx.b, ty.b)) return false;
    }
    return true;
}

CoefficientSource roundtrip(const CoefficientSource& src) {
    return cf::source_from_json(cf::source_json(src), 50);
}

}  // namespace

TEST_CASE("terms sources round-trip") {
    auto src = cft::mk("1/2", {{"1", "2"}, {"-3", "1/4"}, {"5", "0"}});
    auto back = roundtrip(src);
    CHECK(cf::source_json(back) == cf::source_json(src));
    CHECK(back.length() == 3);
    CHECK(same_terms_to(back, src, 3));
}

TEST_CASE("terms sources reject malformed JSON") {
    CHECK_THROWS_AS(cf::source_from_json(Json{{"terms", Json::array()}}, 50), cf::parse_error);
    CHECK_THROWS_AS(
        cf::source_from_json(Json{{"b0", "0"}, {"terms", Json::array({Json::array({"1"})})}}, 50),
        cf::parse_error);
    CHECK_THROWS_AS(cf::source_from_json(Json{{"b0", "0"}}, 50), cf::parse_error);
    CHECK_THROWS_AS(cf::source_from_json(Json::array(), 50), cf::parse_error);
    CHECK_THROWS_AS(
        cf::source_from_json(Json{{"b0", "0"}, {"terms", Json::array()}, {"x", 1}}, 50),
        cf::parse_error);
}

TEST_CASE("named families") {
    auto g = cf::source_from_json(Json{{"b0", "0"}, {"family", "golden"}}, 50);
    CHECK(g.b0().is_zero());
    CHECK(g.term(5).a == Scalar::from_long(1));
    CHECK(!g.length());
    CHECK(cf::source_json(roundtrip(g)) == cf::source_json(g));

    Json cj{{"b0", "1"},
            {"family", "constant"},
            {"params", Json{{"a", "3/10"}, {"b", "1"}}},
            {"length", 7}};
    auto c = cf::source_from_json(cj, 50);
    CHECK(c.length() == 7);
    CHECK(c.term(7).a == rat("3/10"));
    CHECK(cf::source_json(c) == cj);

    auto l = cf::source_from_json(
        Json{{"family", "linear"},
             {"params",
              Json{{"a_start", "2"}, {"a_step", "1"}, {"b_start", "1"}, {"b_step", "1"}}}},
        50);
    // matches the shifted-integer catalog fraction at x = 1
    auto e7 = cf::cf_source(IdentityId::entry7, Json{{"x", "1"}});
    CHECK(same_terms_to(l, e7, 25));
    CHECK(cf::source_json(roundtrip(l)) == cf::source_json(l));

    CHECK_THROWS_AS(cf::source_from_json(Json{{"family", "mystery"}}, 50), cf::parse_error);
    CHECK_THROWS_AS(
        cf::source_from_json(
            Json{{"family", "constant"}, {"params", Json{{"a", "1"}, {"b", "2.0"}}}}, 50),
        cf::mode_error);
    CHECK_THROWS_AS(
        cf::source_from_json(Json{{"family", "golden"}, {"params", Json{{"x", "1"}}}}, 50),
        cf::parse_error);
}

TEST_CASE("identity families round-trip with b0 validation") {
    Json e9{{"family", "entry9"}, {"params", Json{{"a", "1"}, {"x", "2"}}}};
    auto src = cf::source_from_json(e9, 50);
    CHECK(src.term(1).a == Scalar::from_long(3));
    auto again = roundtrip(src);
    CHECK(cf::source_json(again) == cf::source_json(src));

    Json with_b0 = e9;
    with_b0["b0"] = "0";
    CHECK_NOTHROW(cf::source_from_json(with_b0, 50));
    with_b0["b0"] = "1";
    CHECK_THROWS_AS(cf::source_from_json(with_b0, 50), cf::parse_error);

    // complex-mode family b0 text survives the round trip
    auto bb = cf::cf_source(IdentityId::bb, Json{{"q", "3/10"}, {"alpha", "1/2"}});
    CHECK(same_terms_to(roundtrip(bb), bb, 20));

    // hypothesis failures surface on parse
    CHECK_THROWS_AS(
        cf::source_from_json(Json{{"family", "entry7"}, {"params", Json{{"x", "-2"}}}}, 50),
        cf::error);
}

TEST_CASE("transform descriptors replay") {
    auto e7 = cf::cf_source(IdentityId::entry7, Json{{"x", "1/2"}});

    auto ev = even_part(e7);
    CHECK(same_terms_to(roundtrip(ev), ev, 15));
    auto od = odd_part(e7);
    CHECK(same_terms_to(roundtrip(od), od, 15));
    auto tl = cf::tail(e7, 3);
    CHECK(same_terms_to(roundtrip(tl), tl, 15));
    auto ud = to_unit_denominators(e7);
    CHECK(same_terms_to(roundtrip(ud), ud, 15));
    auto un = to_unit_numerators(e7);
    CHECK(same_terms_to(roundtrip(un), un, 15));

    Json rdesc{{"kind", "constant"}, {"value", "2"}};
    auto eq = cf::equivalence_transform(e7, cf::make_sequence(rdesc, 50), rdesc);
    CHECK(same_terms_to(roundtrip(eq), eq, 15));
    // opaque callables cannot be replayed
    auto opaque = cf::equivalence_transform(e7, [](std::int64_t) { return Scalar::from_long(2); });
    CHECK_THROWS_AS(roundtrip(opaque), cf::parse_error);

    auto ex2 = extend(e7, cf::ExtensionScheme::cor2());
    CHECK(same_terms_to(roundtrip(ex2), ex2, 15));
    auto ex1 = extend(even_part(e7), cf::ExtensionScheme::cor1());
    CHECK(same_terms_to(roundtrip(ex1), ex1, 15));
}

TEST_CASE("proof extensions and explicit-sequence extensions replay") {
    auto ex12 = cf::proof_extension(IdentityId::entry12, Json{{"a", "1"}, {"x", "1"}});
    auto back = roundtrip(ex12);
    CHECK(cf::source_json(back) == cf::source_json(ex12));
    CHECK(same_terms_to(back, ex12, 20));

    auto ex13 = cf::proof_extension(IdentityId::entry13, Json{{"a", "1"}, {"b", "2"}, {"d", "1"}});
    CHECK(same_terms_to(roundtrip(ex13), ex13, 20));

    // c1 + c1c2/(1 + c2c3/(1 + c3c4/1)) with c = 2,3,4,5
    Json cdesc{{"kind", "list"}, {"values", Json::array({"2", "3", "4", "5"})}};
    auto target = cft::mk("2", {{"6", "1"}, {"12", "1"}, {"20", "1"}});
    auto ex7 = extend(target, cf::ExtensionScheme::cor7(cf::make_sequence(cdesc, 50), cdesc));
    auto b7 = roundtrip(ex7);
    REQUIRE(b7.length() == 7);
    CHECK(same_terms_to(b7, ex7, 7));
}

TEST_CASE("value-sequence fractions replay") {
    std::vector<Scalar> K{Scalar::from_long(1), rat("3/2"), rat("9/5")};
    auto bn = cf::bernoulli_cf(K);
    auto bb = roundtrip(bn);
    CHECK(cf::source_json(bb) == cf::source_json(bn));
    CHECK(same_terms_to(bb, bn, 2));

    auto eu = cf::euler_cf({rat("1"), rat("1/2"), rat("1/6")});
    CHECK(same_terms_to(roundtrip(eu), eu, 2));

    auto cz = collapse_zeros(cft::mk("0", {{"1", "2"}, {"1", "0"}, {"1", "3"}}));
    auto cb = roundtrip(cz);
    REQUIRE(cb.length() == 1);
    CHECK(cb.term(1).b == Scalar::from_long(5));
}

TEST_CASE("certificates serialize") {
    auto cert = cf::wall_empirical_certificate(cft::golden(), 40, cf::parse_tolerance("1e-6"));
    Json j = cf::certificate_json(cert);
    CHECK(j.at("criterion") == "wall-empirical");
    CHECK(j.at("certified") == true);
    CHECK(j.at("depth") == 40);
    CHECK(j.at("witness").is_object());
    CHECK(!j.contains("refusal"));

    cf::ConvergenceCertificate refused;
    refused.criterion = "worpitzky";
    refused.refusal = "term 1 outside the disc";
    Json r = cf::certificate_json(refused);
    CHECK(r.at("certified") == false);
    CHECK(r.at("refusal") == "term 1 outside the disc");
}

TEST_CASE("verification reports serialize to JSON and CSV") {
    auto rep = cf::verify(IdentityId::entry10, Json{{"n", 3}}, 60, 50,
                          cf::parse_tolerance("1e-20"));
    Json j = cf::report_json(rep);
    CHECK(j.at("id") == "entry10");
    CHECK(j.at("target") == "3");
    CHECK(j.at("verdict") == true);
    CHECK(j.at("depth") == 60);
    CHECK(j.at("diagnostics").contains("decay"));

    std::string row = cf::report_csv_row(rep);
    CHECK(row.substr(0, 8) == "entry10,");
    CHECK(row.find(",pass") != std::string::npos);
    CHECK(cf::report_csv_header() ==
          "id,params,depth,digits,target,estimate,abs_diff,verdict");
    // params JSON is quoted, inner quotes doubled
    CHECK(row.find("\"{\"\"n\"\":3}\"") != std::string::npos);

    auto inf = cf::verify(IdentityId::entry9, Json{{"a", "2"}, {"x", "-1"}}, 60, 50,
                          cf::parse_tolerance("1e-30"));
    CHECK(cf::report_json(inf).at("target") == "inf");
}
