#include "cf/jobs.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace cf {

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) {
    throw parse_error(ptr + ": " + msg);
}

const std::set<std::string>& keys_for(const std::string& action) {
    static const std::map<std::string, std::set<std::string>> table = {
        {"eval", {"source"}},
        {"contract", {"source", "kind"}},
        {"extend", {"source", "scheme", "a_seq", "b1", "c_seq"}},
        {"certify", {"source", "criterion", "c_seq", "alpha", "rho_sq"}},
        {"verify", {"id", "params"}},
        {"sweep", {"id", "params"}},
    };
    return table.at(action);
}

std::string str_field(const Json& j, const std::string& key) {
    const Json& v = j.at(key);
    if (!v.is_string()) fail("/" + key, "must be a string");
    return v.get<std::string>();
}

void require_field(const Json& j, const std::string& key) {
    if (!j.contains(key)) fail("/" + key, "required for this job");
}

void forbid_field(const Json& j, const std::string& key, const std::string& why) {
    if (j.contains(key)) fail("/" + key, "not used " + why);
}

std::int64_t int_field(const Json& j, const std::string& key, std::int64_t lo, std::int64_t hi,
                       std::int64_t dflt) {
    if (!j.contains(key)) return dflt;
    const Json& v = j.at(key);
    if (v.is_string()) fail("/" + key, "must be an integer, not a string");
    if (!v.is_number_integer()) fail("/" + key, "must be an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > std::uint64_t(hi))
        fail("/" + key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    std::int64_t n = v.get<std::int64_t>();
    if (n < lo || n > hi)
        fail("/" + key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return n;
}

// sequence specs double as validation: building the callable checks the shape
void check_sequence_spec(const Json& j, const std::string& key, int digits) {
    require_field(j, key);
    if (!j.at(key).is_object()) fail("/" + key, "must be a sequence spec object");
    try {
        make_sequence(j.at(key), digits);
    } catch (const error& e) {
        fail("/" + key, e.what());
    }
}

void check_scalar_text(const Json& j, const std::string& key, int digits) {
    require_field(j, key);
    std::string s = str_field(j, key);
    try {
        parse_scalar(s, digits);
    } catch (const error& e) {
        fail("/" + key, e.what());
    }
}

void check_param_value(const std::string& ptr, const Json& v, bool grid) {
    if (v.is_string() || v.is_boolean() || v.is_number_integer() || v.is_object()) return;
    if (v.is_number_float())
        fail(ptr, "scalars cross the interface as text; write the value as a string");
    if (v.is_array()) {
        if (!grid) fail(ptr, "arrays mark sweep axes and are not valid here");
        if (v.empty()) fail(ptr, "sweep axis must list at least one value");
        for (std::size_t i = 0; i < v.size(); ++i)
            check_param_value(ptr + "/" + std::to_string(i), v[i], false);
        return;
    }
    fail(ptr, "must be a string, integer, boolean, or sequence spec");
}

void check_params(const JobSpec& spec, const Json& j, bool grid) {
    if (!j.contains("params")) return;
    const Json& p = j.at("params");
    if (!p.is_object()) fail("/params", "must be an object");
    if (spec.id == "entry13_footnote" && !p.empty())
        fail("/params", "entry13_footnote fixes all parameters");
    for (auto it = p.begin(); it != p.end(); ++it)
        check_param_value("/params/" + it.key(), it.value(), grid);
}

std::pair<IdentityId, Json> resolve_identity(const std::string& name, const Json& params) {
    if (name == "entry13_footnote") return {IdentityId::entry13, entry13_footnote_params()};
    return {identity_from_string(name), params};
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void emit_header(const JobSpec& job, std::ostream& out) {
    if (!job.header) return;
    Json spec = job.resolved();
    if (job.format == "json")
        out << Json{{"spec", spec}}.dump() << "\n";
    else if (job.format == "csv")
        out << "# spec " << spec.dump() << "\n";
    else
        out << "spec " << spec.dump() << "\n\n";
}

Json materialized(const std::string& action, const std::string& label_key,
                  const std::string& label, const CoefficientSource& src, std::int64_t depth) {
    std::int64_t L = depth;
    if (src.length()) L = std::min(L, *src.length());
    Json terms = Json::array();
    for (std::int64_t n = 1; n <= L; ++n) {
        Term t = src.term(n);
        terms.push_back(Json::array({format_scalar(t.a), format_scalar(t.b)}));
    }
    Json rec;
    rec["action"] = action;
    rec[label_key] = label;
    rec["b0"] = format_scalar(src.b0());
    rec["terms"] = std::move(terms);
    rec["descriptor"] = source_json(src);
    return rec;
}

int run_eval(const JobSpec& job, std::ostream& out) {
    CoefficientSource src = source_from_json(job.source, job.digits);
    std::int64_t N = job.depth;
    if (src.length()) N = std::min(N, *src.length());
    ProjectiveValue v = value_at(src, N);
    Json rec;
    rec["action"] = "eval";
    rec["depth"] = N;
    rec["value"] = v.is_infinite() ? "inf" : format_scalar(v.A / v.B);
    out << rec.dump() << "\n";
    return 0;
}

int run_contract(const JobSpec& job, std::ostream& out) {
    CoefficientSource src = source_from_json(job.source, job.digits);
    CoefficientSource part = job.kind == "even" ? even_part(src) : odd_part(src);
    out << materialized("contract", "kind", job.kind, part, job.depth).dump() << "\n";
    return 0;
}

int run_extend(const JobSpec& job, std::ostream& out) {
    CoefficientSource src = source_from_json(job.source, job.digits);
    ExtensionScheme scheme = ExtensionScheme::cor2();
    if (job.scheme == "cor1") scheme = ExtensionScheme::cor1();
    if (job.scheme == "cor3")
        scheme = ExtensionScheme::cor3(make_sequence(job.a_seq, job.digits),
                                       parse_scalar(job.b1, job.digits), job.a_seq);
    if (job.scheme == "cor7")
        scheme = ExtensionScheme::cor7(make_sequence(job.c_seq, job.digits), job.c_seq);
    out << materialized("extend", "scheme", job.scheme, extend(src, scheme), job.depth).dump()
        << "\n";
    return 0;
}

int run_certify(const JobSpec& job, std::ostream& out) {
    ConvergenceCertificate cert;
    if (job.criterion == "worpitzky") {
        cert = worpitzky_check(source_from_json(job.source, job.digits), job.depth);
    } else if (job.criterion == "lange") {
        cert = lange_check(make_sequence(job.c_seq, job.digits),
                           parse_scalar(job.alpha, job.digits),
                           parse_scalar(job.rho_sq, job.digits), job.depth);
    } else {
        cert = wall_empirical_certificate(source_from_json(job.source, job.digits), job.depth,
                                          parse_tolerance(job.tol));
    }
    Json rec = certificate_json(cert);
    out << rec.dump() << "\n";
    return cert.certified ? 0 : 1;
}

std::string table_block(const VerificationReport& rep) {
    Json jr = report_json(rep);
    std::ostringstream os;
    for (const char* key : {"id", "params", "depth", "digits", "target", "estimate", "abs_diff"}) {
        const Json& v = jr.at(key);
        os << key << std::string(10 - std::string(key).size(), ' ')
           << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    os << "verdict   " << (rep.verdict ? "pass" : "fail") << "\n";
    return os.str();
}

std::string record_text(const JobSpec& job, const VerificationReport& rep) {
    if (job.format == "csv") return report_csv_row(rep) + "\n";
    if (job.format == "table") return table_block(rep);
    return report_json(rep).dump() + "\n";
}

std::string error_text(const JobSpec& job, const Json& cell, const std::string& msg) {
    if (job.format == "csv")
        return csv_quote(job.id) + "," + csv_quote(cell.dump()) + "," +
               std::to_string(job.depth) + "," + std::to_string(job.digits) + ",,,,error\n";
    if (job.format == "table")
        return "id        " + job.id + "\nparams    " + cell.dump() + "\nerror     " + msg + "\n";
    Json rec;
    rec["id"] = job.id;
    rec["params"] = cell;
    rec["error"] = msg;
    return rec.dump() + "\n";
}

int run_verify(const JobSpec& job, std::ostream& out) {
    auto [id, params] = resolve_identity(job.id, job.params);
    VerificationReport rep = verify(id, params, job.depth, job.digits, parse_tolerance(job.tol));
    if (job.format == "csv") out << report_csv_header() << "\n";
    out << record_text(job, rep);
    return rep.verdict ? 0 : 1;
}

// grid order: keys in spec order, the last axis varying fastest
std::vector<Json> expand_grid(const Json& params) {
    std::vector<std::string> keys;
    std::vector<Json> options;  // each entry an array of candidate values
    for (auto it = params.begin(); it != params.end(); ++it) {
        keys.push_back(it.key());
        options.push_back(it.value().is_array() ? it.value() : Json::array({it.value()}));
    }
    std::int64_t total = 1;
    for (const Json& o : options) total *= std::int64_t(o.size());
    std::vector<Json> cells;
    cells.reserve(std::size_t(total));
    for (std::int64_t idx = 0; idx < total; ++idx) {
        Json cell = Json::object();
        std::int64_t rem = idx;
        for (std::size_t k = keys.size(); k-- > 0;) {
            std::int64_t count = std::int64_t(options[k].size());
            cell[keys[k]] = options[k][std::size_t(rem % count)];
            rem /= count;
        }
        // restore spec key order clobbered by the reverse fill
        Json ordered = Json::object();
        for (const std::string& k : keys) ordered[k] = cell[k];
        cells.push_back(std::move(ordered));
    }
    return cells;
}

int run_sweep(const JobSpec& job, std::ostream& out, std::ostream& err) {
    std::vector<Json> cells = expand_grid(job.id == "entry13_footnote" ? Json::object()
                                                                       : job.params);
    struct Cell {
        std::string record;
        std::string errline;
        int status = 0;
    };
    std::vector<Cell> results(cells.size());
    Rational tol = parse_tolerance(job.tol);
    auto run_cell = [&](std::size_t i) {
        try {
            auto [id, params] = resolve_identity(job.id, cells[i]);
            VerificationReport rep = verify(id, params, job.depth, job.digits, tol);
            results[i].record = record_text(job, rep);
            results[i].status = rep.verdict ? 0 : 1;
        } catch (const std::exception& e) {
            results[i].record = error_text(job, cells[i], e.what());
            results[i].errline =
                "error: sweep cell " + std::to_string(i) + " " + cells[i].dump() + ": " + e.what();
            results[i].status = 2;
        }
    };
    std::size_t nthreads = std::size_t(std::max(1, job.jobs));
    nthreads = std::min(nthreads, cells.size());
    if (nthreads > 1) {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= results.size()) return;
                    run_cell(i);
                }
            });
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t i = 0; i < results.size(); ++i) run_cell(i);
    }
    if (job.format == "csv") out << report_csv_header() << "\n";
    int exit = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (job.format == "table" && i > 0) out << "\n";
        out << results[i].record;
        if (!results[i].errline.empty()) err << results[i].errline << "\n";
        exit = std::max(exit, results[i].status);
    }
    return exit;
}

}  // namespace

Json JobSpec::resolved() const {
    Json r;
    r["action"] = action;
    if (action == "eval" || action == "contract" || action == "extend") r["source"] = source;
    if (action == "contract") r["kind"] = kind;
    if (action == "extend") {
        r["scheme"] = scheme;
        if (scheme == "cor3") {
            r["a_seq"] = a_seq;
            r["b1"] = b1;
        }
        if (scheme == "cor7") r["c_seq"] = c_seq;
    }
    if (action == "certify") {
        r["criterion"] = criterion;
        if (criterion == "lange") {
            r["c_seq"] = c_seq;
            r["alpha"] = alpha;
            r["rho_sq"] = rho_sq;
        } else {
            r["source"] = source;
        }
    }
    if (action == "verify" || action == "sweep") {
        r["id"] = id;
        r["params"] = params;
    }
    r["depth"] = depth;
    r["digits"] = digits;
    r["tol"] = tol;
    r["format"] = format;
    if (action == "sweep") r["jobs"] = jobs;
    return r;
}

JobSpec parse_spec(const Json& j) {
    if (!j.is_object()) fail("/", "job spec must be a JSON object");
    JobSpec spec;
    if (!j.contains("action")) fail("/action", "required");
    if (!j.at("action").is_string()) fail("/action", "must be a string");
    spec.action = j.at("action").get<std::string>();
    static const std::set<std::string> actions = {"eval",    "contract", "extend",
                                                 "certify", "verify",   "sweep"};
    if (!actions.count(spec.action))
        fail("/action", "must be one of eval|contract|extend|certify|verify|sweep");

    static const std::set<std::string> global_keys = {"action", "depth",  "digits",
                                                      "tol",    "format", "jobs"};
    const std::set<std::string>& local_keys = keys_for(spec.action);
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!global_keys.count(it.key()) && !local_keys.count(it.key()))
            fail("/" + it.key(), "unknown field for action '" + spec.action + "'");
    }

    spec.depth = int_field(j, "depth", 1, 100000000, 200);
    spec.digits = int(int_field(j, "digits", 1, 20000, 50));
    spec.jobs = int(int_field(j, "jobs", 1, 256, 1));
    if (j.contains("tol")) {
        spec.tol = str_field(j, "tol");
        try {
            if (parse_tolerance(spec.tol) <= 0) fail("/tol", "must be positive");
        } catch (const parse_error& e) {
            std::string msg = e.what();
            if (msg.substr(0, 5) == "/tol:") throw;
            fail("/tol", msg);
        }
    }
    if (j.contains("format")) {
        spec.format = str_field(j, "format");
        if (spec.format != "json" && spec.format != "csv" && spec.format != "table")
            fail("/format", "must be json, csv, or table");
    }
    if (spec.format != "json" && spec.action != "verify" && spec.action != "sweep")
        fail("/format", "csv and table formats apply to verify and sweep");

    auto take_source = [&]() {
        require_field(j, "source");
        if (!j.at("source").is_object()) fail("/source", "must be a source object");
        try {
            source_from_json(j.at("source"), spec.digits);
        } catch (const error& e) {
            fail("/source", e.what());
        }
        spec.source = j.at("source");
    };

    if (spec.action == "eval") {
        take_source();
    } else if (spec.action == "contract") {
        take_source();
        require_field(j, "kind");
        spec.kind = str_field(j, "kind");
        if (spec.kind != "even" && spec.kind != "odd") fail("/kind", "must be even or odd");
    } else if (spec.action == "extend") {
        take_source();
        require_field(j, "scheme");
        spec.scheme = str_field(j, "scheme");
        static const std::set<std::string> schemes = {"cor1", "cor2", "cor3", "cor7"};
        if (!schemes.count(spec.scheme)) fail("/scheme", "must be one of cor1|cor2|cor3|cor7");
        if (spec.scheme == "cor3") {
            check_sequence_spec(j, "a_seq", spec.digits);
            check_scalar_text(j, "b1", spec.digits);
            forbid_field(j, "c_seq", "by scheme 'cor3'");
            spec.a_seq = j.at("a_seq");
            spec.b1 = j.at("b1").get<std::string>();
        } else if (spec.scheme == "cor7") {
            check_sequence_spec(j, "c_seq", spec.digits);
            forbid_field(j, "a_seq", "by scheme 'cor7'");
            forbid_field(j, "b1", "by scheme 'cor7'");
            spec.c_seq = j.at("c_seq");
        } else {
            forbid_field(j, "a_seq", "by scheme '" + spec.scheme + "'");
            forbid_field(j, "b1", "by scheme '" + spec.scheme + "'");
            forbid_field(j, "c_seq", "by scheme '" + spec.scheme + "'");
        }
    } else if (spec.action == "certify") {
        require_field(j, "criterion");
        spec.criterion = str_field(j, "criterion");
        static const std::set<std::string> criteria = {"worpitzky", "lange", "wall-empirical"};
        if (!criteria.count(spec.criterion))
            fail("/criterion", "must be one of worpitzky|lange|wall-empirical");
        if (spec.criterion == "lange") {
            forbid_field(j, "source", "by criterion 'lange'");
            check_sequence_spec(j, "c_seq", spec.digits);
            check_scalar_text(j, "alpha", spec.digits);
            check_scalar_text(j, "rho_sq", spec.digits);
            spec.c_seq = j.at("c_seq");
            spec.alpha = j.at("alpha").get<std::string>();
            spec.rho_sq = j.at("rho_sq").get<std::string>();
        } else {
            forbid_field(j, "c_seq", "by criterion '" + spec.criterion + "'");
            forbid_field(j, "alpha", "by criterion '" + spec.criterion + "'");
            forbid_field(j, "rho_sq", "by criterion '" + spec.criterion + "'");
            take_source();
        }
    } else {
        require_field(j, "id");
        spec.id = str_field(j, "id");
        if (spec.id != "entry13_footnote") {
            try {
                identity_from_string(spec.id);
            } catch (const error&) {
                fail("/id", "unknown identity '" + spec.id + "'");
            }
        }
        spec.params = Json::object();
        check_params(spec, j, spec.action == "sweep");
        if (j.contains("params")) spec.params = j.at("params");
    }
    return spec;
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
    try {
        emit_header(job, out);
        if (job.action == "eval") return run_eval(job, out);
        if (job.action == "contract") return run_contract(job, out);
        if (job.action == "extend") return run_extend(job, out);
        if (job.action == "certify") return run_certify(job, out);
        if (job.action == "verify") return run_verify(job, out);
        return run_sweep(job, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cf
