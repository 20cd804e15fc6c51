#include "cf/jobs.hpp"

#include <pybind11/pybind11.h>

#include <sstream>

namespace py = pybind11;
using cf::Json;

namespace {

Json to_json(const py::handle& h) {
    if (h.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
    if (py::isinstance<py::int_>(h)) return h.cast<long long>();
    if (py::isinstance<py::float_>(h)) return h.cast<double>();
    if (py::isinstance<py::str>(h)) return h.cast<std::string>();
    if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
        Json a = Json::array();
        for (const py::handle& item : h) a.push_back(to_json(item));
        return a;
    }
    if (py::isinstance<py::dict>(h)) {
        Json o = Json::object();
        for (const auto& kv : h.cast<py::dict>()) {
            if (!py::isinstance<py::str>(kv.first))
                throw py::type_error("JSON object keys must be strings");
            o[kv.first.cast<std::string>()] = to_json(kv.second);
        }
        return o;
    }
    throw py::type_error("unsupported value type; pass scalars as strings");
}

py::object to_py(const Json& j) {
    if (j.is_null()) return py::none();
    if (j.is_boolean()) return py::bool_(j.get<bool>());
    if (j.is_number_unsigned()) return py::int_(j.get<unsigned long long>());
    if (j.is_number_integer()) return py::int_(j.get<long long>());
    if (j.is_number_float()) return py::float_(j.get<double>());
    if (j.is_string()) return py::str(j.get<std::string>());
    if (j.is_array()) {
        py::list l;
        for (const Json& e : j) l.append(to_py(e));
        return l;
    }
    py::dict d;
    for (const auto& el : j.items()) d[py::str(el.key())] = to_py(el.value());
    return d;
}

cf::CoefficientSource load(const py::dict& source, int digits) {
    return cf::source_from_json(to_json(source), digits);
}

std::string projective_text(const cf::ProjectiveValue& v) {
    return v.is_infinite() ? "inf" : cf::format_scalar(v.A / v.B);
}

py::dict materialize(const cf::CoefficientSource& src, std::int64_t count) {
    std::int64_t L = count;
    if (src.length()) L = std::min(L, *src.length());
    Json terms = Json::array();
    for (std::int64_t n = 1; n <= L; ++n) {
        cf::Term t = src.term(n);
        terms.push_back(Json::array({cf::format_scalar(t.a), cf::format_scalar(t.b)}));
    }
    Json out;
    out["b0"] = cf::format_scalar(src.b0());
    out["terms"] = std::move(terms);
    return to_py(out).cast<py::dict>();
}

std::vector<cf::Scalar> scalar_list(const py::sequence& values, int digits) {
    std::vector<cf::Scalar> xs;
    for (const py::handle& v : values) xs.push_back(cf::parse_scalar(v.cast<std::string>(), digits));
    return xs;
}

std::pair<cf::IdentityId, Json> resolve_id(const std::string& name, const py::dict& params) {
    if (name == "entry13_footnote") {
        if (py::len(params) > 0)
            throw cf::parse_error("entry13_footnote fixes all parameters");
        return {cf::IdentityId::entry13, cf::entry13_footnote_params()};
    }
    return {cf::identity_from_string(name), to_json(params)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "continued fraction contraction/extension calculus";

    auto base = py::register_exception<cf::error>(m, "Error");
    py::register_exception<cf::mode_error>(m, "ModeError", base.ptr());
    py::register_exception<cf::parse_error>(m, "ParseError", base.ptr());

    m.def(
        "evaluate",
        [](const py::dict& source, std::int64_t depth, int digits) {
            cf::CoefficientSource src = load(source, digits);
            std::int64_t N = depth;
            if (src.length()) N = std::min(N, *src.length());
            return projective_text(cf::value_at(src, N));
        },
        py::arg("source"), py::arg("depth") = 200, py::arg("digits") = 50,
        "Approximant of a source descriptor at the given depth; 'inf' when the "
        "denominator vanishes. Depth clamps to a finite source's length.");

    m.def(
        "approximants",
        [](const py::dict& source, std::int64_t depth, int digits) {
            cf::CoefficientSource src = load(source, digits);
            std::int64_t N = depth;
            if (src.length()) N = std::min(N, *src.length());
            py::list out;
            cf::walk_convergents(src, N, [&](const cf::Convergent& c) {
                out.append(py::str(projective_text({c.A, c.B})));
            });
            return out;
        },
        py::arg("source"), py::arg("depth"), py::arg("digits") = 50,
        "Texts of f_0 .. f_depth ('inf' at indices where B_N = 0).");

    m.def(
        "terms",
        [](const py::dict& source, std::int64_t count, int digits) {
            return materialize(load(source, digits), count);
        },
        py::arg("source"), py::arg("count"), py::arg("digits") = 50,
        "Materialize b0 and the first `count` coefficient pairs of a descriptor.");

    m.def(
        "even_part",
        [](const py::dict& source, int digits) {
            return to_py(cf::source_json(cf::even_part(load(source, digits))));
        },
        py::arg("source"), py::arg("digits") = 50,
        "Descriptor of the contraction keeping the even-indexed approximants.");

    m.def(
        "odd_part",
        [](const py::dict& source, int digits) {
            return to_py(cf::source_json(cf::odd_part(load(source, digits))));
        },
        py::arg("source"), py::arg("digits") = 50,
        "Descriptor of the contraction keeping the odd-indexed approximants.");

    m.def(
        "extend",
        [](const py::dict& source, const std::string& scheme, const py::object& a_seq,
           const py::object& b1, const py::object& c_seq, int digits) {
            cf::CoefficientSource src = load(source, digits);
            cf::ExtensionScheme s = cf::ExtensionScheme::cor2();
            if (scheme == "cor1") {
                s = cf::ExtensionScheme::cor1();
            } else if (scheme == "cor3") {
                if (a_seq.is_none() || b1.is_none())
                    throw cf::parse_error("cor3 needs a_seq and b1");
                Json spec = to_json(a_seq);
                s = cf::ExtensionScheme::cor3(cf::make_sequence(spec, digits),
                                              cf::parse_scalar(b1.cast<std::string>(), digits),
                                              spec);
            } else if (scheme == "cor7") {
                if (c_seq.is_none()) throw cf::parse_error("cor7 needs c_seq");
                Json spec = to_json(c_seq);
                s = cf::ExtensionScheme::cor7(cf::make_sequence(spec, digits), spec);
            } else if (scheme != "cor2") {
                throw cf::parse_error("scheme must be one of cor1|cor2|cor3|cor7");
            }
            return to_py(cf::source_json(cf::extend(src, s)));
        },
        py::arg("source"), py::arg("scheme"), py::arg("a_seq") = py::none(),
        py::arg("b1") = py::none(), py::arg("c_seq") = py::none(), py::arg("digits") = 50,
        "Descriptor of the extension of a source under cor1/cor2/cor3/cor7. "
        "cor3 takes a_seq (sequence spec) and b1; cor7 takes c_seq.");

    m.def(
        "bernoulli",
        [](const py::sequence& values, int digits) {
            return to_py(cf::source_json(cf::bernoulli_cf(scalar_list(values, digits))));
        },
        py::arg("values"), py::arg("digits") = 50,
        "CF descriptor whose N-th approximant equals values[N]; consecutive "
        "values must differ.");

    m.def(
        "euler",
        [](const py::sequence& values, int digits) {
            return to_py(cf::source_json(cf::euler_cf(scalar_list(values, digits))));
        },
        py::arg("values"), py::arg("digits") = 50,
        "CF descriptor whose N-th approximant equals values[0] + ... + values[N]; "
        "values after the first must be nonzero.");

    m.def(
        "worpitzky",
        [](const py::dict& source, std::int64_t depth, int digits) {
            return to_py(cf::certificate_json(cf::worpitzky_check(load(source, digits), depth)));
        },
        py::arg("source"), py::arg("depth"), py::arg("digits") = 50,
        "Uniform |a_n| <= 1/4 certificate; the source must have unit denominators.");

    m.def(
        "lange",
        [](const py::dict& c_seq, const std::string& alpha, const std::string& rho_sq,
           std::int64_t depth, int digits) {
            return to_py(cf::certificate_json(
                cf::lange_check(cf::make_sequence(to_json(c_seq), digits),
                                cf::parse_scalar(alpha, digits),
                                cf::parse_scalar(rho_sq, digits), depth)));
        },
        py::arg("c_seq"), py::arg("alpha"), py::arg("rho_sq"), py::arg("depth"),
        py::arg("digits") = 50,
        "Twin-region certificate for K(c_n^2/1) with witness pair (alpha, rho^2).");

    m.def(
        "lange_params",
        [](const std::string& a, int digits) {
            cf::LangeParams p = cf::lange_find_params(cf::parse_scalar(a, digits));
            py::dict out;
            out["alpha"] = cf::format_scalar(p.alpha);
            out["rho_sq"] = cf::format_scalar(p.rho_sq);
            out["rho"] = p.rho ? py::object(py::str(cf::format_scalar(*p.rho))) : py::none();
            return out;
        },
        py::arg("a"), py::arg("digits") = 50,
        "Witness pair certifying the tail with constant odd-index terms 1/a.");

    m.def(
        "wall_empirical",
        [](const py::dict& source, std::int64_t depth, const std::string& tol, int digits) {
            return to_py(cf::certificate_json(cf::wall_empirical_certificate(
                load(source, digits), depth, cf::parse_tolerance(tol))));
        },
        py::arg("source"), py::arg("depth"), py::arg("tol") = "1e-30", py::arg("digits") = 50,
        "Even/odd subsequence agreement certificate at finite depth.");

    m.def(
        "verify",
        [](const std::string& id, const py::dict& params, std::int64_t depth, int digits,
           const std::string& tol) {
            auto [iid, p] = resolve_id(id, params);
            return to_py(cf::report_json(
                cf::verify(iid, p, depth, digits, cf::parse_tolerance(tol))));
        },
        py::arg("id"), py::arg("params") = py::dict(), py::arg("depth") = 200,
        py::arg("digits") = 50, py::arg("tol") = "1e-30",
        "Verification report for a catalog identity; 'entry13_footnote' names "
        "the recorded counterexample fixture.");

    m.def("identities", [] {
        py::list out;
        for (cf::IdentityId id : cf::identity_catalog()) out.append(py::str(cf::identity_name(id)));
        return out;
    });

    m.def(
        "run_job",
        [](const py::dict& spec, bool header) {
            std::ostringstream out, err;
            int rc;
            try {
                cf::JobSpec job = cf::parse_spec(to_json(spec));
                job.header = header;
                rc = cf::run(job, out, err);
            } catch (const cf::error& e) {
                err << "error: " << e.what() << "\n";
                rc = 2;
            }
            py::dict res;
            res["exit_code"] = rc;
            res["stdout"] = out.str();
            res["stderr"] = err.str();
            return res;
        },
        py::arg("spec"), py::arg("header") = true,
        "Run a CLI job spec in-process; returns exit_code, stdout, stderr.");
}
