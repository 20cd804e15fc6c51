#include "cf/jobs.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

struct Flags {
    std::string spec_file, source_txt, a_seq_txt, c_seq_txt;
    std::string id, kind, scheme, criterion, b1, alpha, rho_sq;
    std::string tol, format;
    std::vector<std::string> params_kv;
    std::int64_t depth = 0;
    int digits = 0, jobs = 0;
    bool no_header = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--spec", f.spec_file, "read the job spec from a JSON file");
    sub->add_option("--depth", f.depth, "approximant depth (default 200)");
    sub->add_option("--digits", f.digits, "working precision in decimal digits (default 50)");
    sub->add_option("--tol", f.tol, "comparison tolerance as text (default 1e-30)");
    sub->add_option("--format", f.format, "output format: json, csv, or table");
    sub->add_option("--jobs", f.jobs, "sweep worker threads (default 1)");
    sub->add_flag("--no-header", f.no_header, "omit the resolved-spec header line");
}

void add_source(CLI::App* sub, Flags& f) {
    sub->add_option("--source", f.source_txt, "source JSON (terms, family, or transform)");
}

cf::Json parse_json_arg(const std::string& flag, const std::string& text) {
    try {
        return cf::Json::parse(text);
    } catch (const std::exception& e) {
        throw cf::parse_error(flag + ": " + e.what());
    }
}

// --param values: {...}/[...] parse as JSON, true/false as booleans, a
// comma-separated list as a sweep axis of strings, anything else as a string
cf::Json interp_param(const std::string& v) {
    if (!v.empty() && (v[0] == '{' || v[0] == '[')) return cf::Json::parse(v);
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.find(',') != std::string::npos) {
        cf::Json arr = cf::Json::array();
        std::size_t start = 0;
        while (true) {
            std::size_t pos = v.find(',', start);
            arr.push_back(v.substr(start, pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return arr;
    }
    return v;
}

bool passed(const CLI::App* sub, const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

cf::Json build_job(const CLI::App* sub, const Flags& f) {
    cf::Json job = cf::Json::object();
    if (passed(sub, "--spec")) {
        std::ifstream in(f.spec_file);
        if (!in) throw cf::parse_error("--spec: cannot read " + f.spec_file);
        try {
            job = cf::Json::parse(in);
        } catch (const std::exception& e) {
            throw cf::parse_error("--spec: " + std::string(e.what()));
        }
        if (!job.is_object()) throw cf::parse_error("--spec: job spec must be a JSON object");
    }
    if (job.contains("action") && job["action"] != sub->get_name())
        throw cf::parse_error("/action: spec file says '" + job["action"].dump() +
                              "' but the subcommand is '" + sub->get_name() + "'");
    job["action"] = sub->get_name();
    if (passed(sub, "--depth")) job["depth"] = f.depth;
    if (passed(sub, "--digits")) job["digits"] = f.digits;
    if (passed(sub, "--tol")) job["tol"] = f.tol;
    if (passed(sub, "--format")) job["format"] = f.format;
    if (passed(sub, "--jobs")) job["jobs"] = f.jobs;
    if (passed(sub, "--source")) job["source"] = parse_json_arg("--source", f.source_txt);
    if (passed(sub, "--id")) job["id"] = f.id;
    if (passed(sub, "--kind")) job["kind"] = f.kind;
    if (passed(sub, "--scheme")) job["scheme"] = f.scheme;
    if (passed(sub, "--criterion")) job["criterion"] = f.criterion;
    if (passed(sub, "--b1")) job["b1"] = f.b1;
    if (passed(sub, "--alpha")) job["alpha"] = f.alpha;
    if (passed(sub, "--rho-sq")) job["rho_sq"] = f.rho_sq;
    if (passed(sub, "--a-seq")) job["a_seq"] = parse_json_arg("--a-seq", f.a_seq_txt);
    if (passed(sub, "--c-seq")) job["c_seq"] = parse_json_arg("--c-seq", f.c_seq_txt);
    if (!f.params_kv.empty()) {
        cf::Json p = job.contains("params") ? job["params"] : cf::Json::object();
        for (const std::string& kv : f.params_kv) {
            std::size_t eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw cf::parse_error("--param expects key=value, got '" + kv + "'");
            p[kv.substr(0, eq)] = interp_param(kv.substr(eq + 1));
        }
        job["params"] = p;
    }
    return job;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continued fraction contraction/extension calculus"};
    app.require_subcommand(1);
    Flags f;

    CLI::App* eval = app.add_subcommand("eval", "evaluate a source at a depth");
    add_common(eval, f);
    add_source(eval, f);

    CLI::App* contract = app.add_subcommand("contract", "even or odd part of a source");
    add_common(contract, f);
    add_source(contract, f);
    contract->add_option("--kind", f.kind, "even or odd");

    CLI::App* extend = app.add_subcommand("extend", "apply an extension scheme");
    add_common(extend, f);
    add_source(extend, f);
    extend->add_option("--scheme", f.scheme, "cor1, cor2, cor3, or cor7");
    extend->add_option("--a-seq", f.a_seq_txt, "cor3 a-sequence spec (JSON)");
    extend->add_option("--b1", f.b1, "cor3 b1 coefficient");
    extend->add_option("--c-seq", f.c_seq_txt, "cor7 c-sequence spec (JSON)");

    CLI::App* certify = app.add_subcommand("certify", "run a convergence criterion");
    add_common(certify, f);
    add_source(certify, f);
    certify->add_option("--criterion", f.criterion, "worpitzky, lange, or wall-empirical");
    certify->add_option("--c-seq", f.c_seq_txt, "lange c-sequence spec (JSON)");
    certify->add_option("--alpha", f.alpha, "lange twin-region alpha");
    certify->add_option("--rho-sq", f.rho_sq, "lange twin-region rho^2");

    CLI::App* verify = app.add_subcommand("verify", "verify a catalog identity");
    CLI::App* sweep = app.add_subcommand("sweep", "verify over a parameter grid");
    for (CLI::App* sub : {verify, sweep}) {
        add_common(sub, f);
        sub->add_option("--id", f.id,
                        "identity id: entry7, entry7a, entry9, entry10, entry12, entry13, "
                        "entry13_footnote, rr, bb, bb_even");
        sub->add_option("--param", f.params_kv,
                        "key=value parameter; comma-separated values form a sweep axis");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        cf::JobSpec spec = cf::parse_spec(build_job(sub, f));
        spec.header = !f.no_header;
        return cf::run(spec, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
