#include "cf/serialize.hpp"

namespace cf {

namespace {

Scalar field_scalar(const Json& j, const char* key, int digits) {
    auto it = j.find(key);
    if (it == j.end()) throw parse_error(std::string("source JSON: missing \"") + key + "\"");
    if (!it->is_string())
        throw parse_error(std::string("source JSON: \"") + key + "\" must be a scalar string");
    return parse_scalar(it->get<std::string>(), digits);
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (item.key() == a) ok = true;
        if (!ok) throw parse_error("source JSON: unknown field \"" + item.key() + "\"");
    }
}

void check_one_mode(std::initializer_list<const Scalar*> xs) {
    bool any_rat = false, any_cplx = false;
    for (const Scalar* s : xs) (s->is_rational() ? any_rat : any_cplx) = true;
    if (any_rat && any_cplx)
        throw mode_error("source JSON: scalar fields must share one arithmetic mode");
}

std::optional<std::int64_t> opt_length(const Json& j) {
    auto it = j.find("length");
    if (it == j.end()) return std::nullopt;
    if (!it->is_number_integer() || it->get<std::int64_t>() < 1)
        throw parse_error("source JSON: \"length\" must be a positive integer");
    return it->get<std::int64_t>();
}

CoefficientSource from_terms(const Json& j, int digits) {
    reject_unknown(j, {"b0", "terms"});
    Scalar b0 = field_scalar(j, "b0", digits);
    const Json& arr = j.at("terms");
    if (!arr.is_array()) throw parse_error("source JSON: \"terms\" must be an array");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const Json& t = arr[i];
        if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_string())
            throw parse_error("source JSON: terms[" + std::to_string(i) +
                              "] must be a pair of scalar strings");
        terms.push_back({parse_scalar(t[0].get<std::string>(), digits),
                         parse_scalar(t[1].get<std::string>(), digits)});
    }
    return make_terms_source(b0, std::move(terms));
}

CoefficientSource from_family(const Json& j, int digits) {
    const std::string fam = j.at("family").get<std::string>();

    bool is_identity = false;
    IdentityId id{};
    try {
        id = identity_from_string(fam);
        is_identity = true;
    } catch (const parse_error&) {
    }
    if (is_identity) {
        reject_unknown(j, {"b0", "family", "params"});
        CoefficientSource src = cf_source(id, j.value("params", Json::object()), digits);
        if (j.contains("b0")) {
            Scalar given = field_scalar(j, "b0", digits);
            const Scalar& own = src.b0();
            bool ok = given.is_rational() == own.is_rational() &&
                      (own.is_rational() ? given == own : near(given, own));
            if (!ok)
                throw parse_error("source JSON: \"b0\" does not match family \"" + fam + "\"");
        }
        return src;
    }

    if (fam == "golden") {
        reject_unknown(j, {"b0", "family", "params"});
        if (j.contains("params") && !j.at("params").empty())
            throw parse_error("source JSON: family \"golden\" takes no params");
        Scalar b0 = j.contains("b0") ? field_scalar(j, "b0", digits) : Scalar();
        Json d;
        d["b0"] = format_scalar(b0);
        d["family"] = "golden";
        Scalar one = one_like(b0);
        return CoefficientSource(
            b0, [one](std::int64_t) { return Term{one, one}; }, std::nullopt, d);
    }
    if (fam == "constant") {
        reject_unknown(j, {"b0", "family", "params", "length"});
        const Json& p = j.value("params", Json::object());
        Scalar a = field_scalar(p, "a", digits);
        Scalar b = field_scalar(p, "b", digits);
        Scalar b0 = j.contains("b0") ? field_scalar(j, "b0", digits) : zero_like(a);
        check_one_mode({&a, &b, &b0});
        auto len = opt_length(j);
        Json d;
        d["b0"] = format_scalar(b0);
        d["family"] = "constant";
        d["params"] = Json{{"a", format_scalar(a)}, {"b", format_scalar(b)}};
        if (len) d["length"] = *len;
        return CoefficientSource(
            b0, [a, b](std::int64_t) { return Term{a, b}; }, len, d);
    }
    if (fam == "linear") {
        reject_unknown(j, {"b0", "family", "params", "length"});
        const Json& p = j.value("params", Json::object());
        Scalar as = field_scalar(p, "a_start", digits);
        Scalar ad = field_scalar(p, "a_step", digits);
        Scalar bs = field_scalar(p, "b_start", digits);
        Scalar bd = field_scalar(p, "b_step", digits);
        Scalar b0 = j.contains("b0") ? field_scalar(j, "b0", digits) : zero_like(as);
        check_one_mode({&as, &ad, &bs, &bd, &b0});
        auto len = opt_length(j);
        Json d;
        d["b0"] = format_scalar(b0);
        d["family"] = "linear";
        d["params"] = Json{{"a_start", format_scalar(as)},
                           {"a_step", format_scalar(ad)},
                           {"b_start", format_scalar(bs)},
                           {"b_step", format_scalar(bd)}};
        if (len) d["length"] = *len;
        auto step = [](const Scalar& s, const Scalar& t, std::int64_t n) {
            Scalar k = s.is_rational() ? Scalar(Rational(static_cast<long>(n - 1)))
                                       : Scalar(BigComplex::from_long(static_cast<long>(n - 1),
                                                                      s.digits()));
            return s + k * t;
        };
        return CoefficientSource(
            b0,
            [as, ad, bs, bd, step](std::int64_t n) {
                return Term{step(as, ad, n), step(bs, bd, n)};
            },
            len, d);
    }
    throw parse_error("source JSON: unknown family \"" + fam + "\"");
}

std::vector<Scalar> scalar_list(const Json& of, int digits) {
    if (!of.is_object() || !of.contains("sequence") || !of.at("sequence").is_array())
        throw parse_error("source JSON: this transform needs {\"sequence\": [...]}");
    std::vector<Scalar> out;
    for (const Json& v : of.at("sequence")) {
        if (!v.is_string())
            throw parse_error("source JSON: sequence entries must be scalar strings");
        out.push_back(parse_scalar(v.get<std::string>(), digits));
    }
    return out;
}

// sequence specs written by make_sequence users are reconstructible; the
// "custom" marker (an opaque callable was used) is not
std::function<Scalar(std::int64_t)> seq_or_reject(const Json& spec, const char* what,
                                                  int digits) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw parse_error(std::string("source JSON: ") + what +
                          " was recorded without a reconstructible spec");
    return make_sequence(spec, digits);
}

CoefficientSource from_transform(const Json& j, int digits) {
    const std::string t = j.at("transform").get<std::string>();
    if (t == "bernoulli") return bernoulli_cf(scalar_list(j.at("of"), digits));
    if (t == "euler") return euler_cf(scalar_list(j.at("of"), digits));

    if (t == "extend:cor3") {
        const Json& spec = j.at("a_seq");
        // identity proof extensions record the owning family; replay those
        if (spec.is_object() && spec.contains("family")) {
            IdentityId id = identity_from_string(spec.at("family").get<std::string>());
            return proof_extension(id, spec.value("params", Json::object()), digits);
        }
        auto of = source_from_json(j.at("of"), digits);
        Scalar b1 = field_scalar(j, "b1", digits);
        return extend(of, ExtensionScheme::cor3(seq_or_reject(spec, "a_seq", digits), b1, spec));
    }

    auto of = [&]() { return source_from_json(j.at("of"), digits); };
    if (t == "even") return even_part(of());
    if (t == "odd") return odd_part(of());
    if (t == "collapse") return collapse_zeros(of());
    if (t == "unit-denominators") return to_unit_denominators(of());
    if (t == "unit-numerators") return to_unit_numerators(of());
    if (t == "tail") {
        auto it = j.find("m");
        if (it == j.end() || !it->is_number_integer() || it->get<std::int64_t>() < 1)
            throw parse_error("source JSON: tail needs a positive integer \"m\"");
        return tail(of(), it->get<std::int64_t>());
    }
    if (t == "equivalence") {
        const Json& spec = j.at("r");
        auto r = seq_or_reject(spec, "r", digits);
        return equivalence_transform(of(), r, spec);
    }
    if (t == "extend:cor1") return extend(of(), ExtensionScheme::cor1());
    if (t == "extend:cor2") return extend(of(), ExtensionScheme::cor2());
    if (t == "extend:cor7") {
        const Json& spec = j.at("c_seq");
        return extend(of(), ExtensionScheme::cor7(seq_or_reject(spec, "c_seq", digits), spec));
    }
    throw parse_error("source JSON: unknown transform \"" + t + "\"");
}

}  // namespace

Json source_json(const CoefficientSource& src) {
    return src.descriptor();
}

CoefficientSource source_from_json(const Json& j, int digits) {
    if (!j.is_object()) throw parse_error("source JSON must be an object");
    if (j.contains("transform")) return from_transform(j, digits);
    if (j.contains("terms")) return from_terms(j, digits);
    if (j.contains("family")) return from_family(j, digits);
    throw parse_error("source JSON needs \"terms\", \"family\", or \"transform\"");
}

Json certificate_json(const ConvergenceCertificate& c) {
    Json out;
    out["criterion"] = c.criterion;
    out["certified"] = c.certified;
    out["exhaustive"] = c.exhaustive;
    out["depth"] = c.depth;
    out["witness"] = c.witness.is_null() ? Json::object() : c.witness;
    if (!c.refusal.empty()) out["refusal"] = c.refusal;
    return out;
}

Json report_json(const VerificationReport& r) {
    Json out;
    out["id"] = r.id;
    out["params"] = r.params;
    out["depth"] = r.depth;
    out["digits"] = r.precision_digits;
    out["target"] =
        r.target.kind == ClosedForm::Kind::infinite ? "inf" : format_scalar(r.target.value);
    out["estimate"] = format_scalar(r.estimate);
    out["abs_diff"] = format_scalar(r.abs_diff);
    out["verdict"] = r.verdict;
    out["diagnostics"] = r.diagnostics;
    return out;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string report_csv_header() {
    return "id,params,depth,digits,target,estimate,abs_diff,verdict";
}

std::string report_csv_row(const VerificationReport& r) {
    std::string target =
        r.target.kind == ClosedForm::Kind::infinite ? "inf" : format_scalar(r.target.value);
    std::string row = csv_quote(r.id);
    row += ',';
    row += csv_quote(r.params.dump());
    row += ',';
    row += std::to_string(r.depth);
    row += ',';
    row += std::to_string(r.precision_digits);
    row += ',';
    row += csv_quote(target);
    row += ',';
    row += csv_quote(format_scalar(r.estimate));
    row += ',';
    row += csv_quote(format_scalar(r.abs_diff));
    row += ',';
    row += r.verdict ? "pass" : "fail";
    return row;
}

}  // namespace cf
