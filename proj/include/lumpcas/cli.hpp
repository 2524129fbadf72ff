#pragma once

/**
 * @file cli.hpp
 * @brief Subcommand implementations behind the lumpcas executable.
 *
 * Each cmd_* takes a plain argument struct and returns a RunReport; the
 * executable only parses flags and prints. Exit codes: 0 success, 1 a check
 * failed, 2 bad usage or input.
 */

#include "lumpcas/catalog.hpp"
#include "lumpcas/classifier.hpp"
#include "lumpcas/cm_locus.hpp"
#include "lumpcas/lax.hpp"
#include "lumpcas/poly_io.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lumpcas::cli {

using nlohmann::json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunReport {
    std::string command;
    json inputs = json::object();
    json results = json::object();
    double wall_ms = 0.0;
    bool exact = true;
    int exit_code = 0;

    json to_json(bool with_timing = true) const {
        json j{{"command", command}, {"inputs", inputs}, {"results", results}, {"exact", exact}, {"exit_code", exit_code}};
        if (with_timing) j["timing"] = {{"wall_ms", wall_ms}};
        return j;
    }

    static RunReport from_json(const json& j) {
        RunReport r;
        r.command = j.at("command").get<std::string>();
        r.inputs = j.at("inputs");
        r.results = j.at("results");
        r.exact = j.at("exact").get<bool>();
        r.exit_code = j.at("exit_code").get<int>();
        if (j.contains("timing")) r.wall_ms = j.at("timing").at("wall_ms").get<double>();
        return r;
    }
};

namespace detail {

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(to_string(r));
    return a;
}

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json terms_json(const ExactPoly& f, std::size_t limit) {
    json a = json::array();
    std::size_t k = 0;
    for (auto it = f.terms().rbegin(); it != f.terms().rend() && k < limit; ++it, ++k)
        a.push_back(json::array({it->first.i, it->first.j, coeff_to_json(it->second)}));
    return a;
}

inline Bindings parse_bindings(const std::vector<std::string>& items) {
    Bindings b;
    for (const auto& s : items) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + s + "'");
        try {
            b[s.substr(0, eq)] = parse_rational(s.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw UsageError("--param " + s + ": " + e.what());
        }
    }
    return b;
}

struct ResolvedTau {
    std::string id;
    ExactPoly tau{Basis::XY};
    std::optional<TauRecord> record;
};

// A catalog id, or a path to a polynomial file.
inline ResolvedTau resolve_tau(const std::string& what, const Bindings& bindings) {
    ResolvedTau r;
    r.id = what;
    for (const auto& rec : catalog()) {
        if (rec.id == what) {
            r.record = rec;
            try {
                r.tau = rec.bind(bindings);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            return r;
        }
    }
    if (!std::filesystem::exists(what)) throw UsageError("unknown tau id '" + what + "' and no such file");
    if (!bindings.empty()) throw UsageError("--param applies only to catalog records");
    try {
        r.tau = read_poly_file(what);
    } catch (const PolyFormatError& e) {
        throw UsageError(e.what());
    }
    return r;
}

inline BilinearForm resolve_form(const std::string& name) {
    try {
        return form_preset(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline std::vector<double> parse_doubles(const std::string& list, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string tau;
    std::vector<std::string> params;
    std::string form;  // empty: the record's own form, or standard for files
    std::size_t max_terms = 10;
};

inline RunReport cmd_verify(const VerifyArgs& a) {
    detail::Stopwatch sw;
    RunReport rep;
    rep.command = "verify";
    rep.inputs = {{"tau", a.tau}, {"params", a.params}, {"form", a.form}};
    const auto t = detail::resolve_tau(a.tau, detail::parse_bindings(a.params));
    const std::string form_name = !a.form.empty() ? a.form : (t.record ? t.record->form : "standard");
    const auto form = detail::resolve_form(form_name);
    const auto v = verify_tau(t.tau, form);
    rep.results = {{"id", t.id},
                   {"form", form.describe()},
                   {"degree", t.tau.degree()},
                   {"is_solution", v.is_solution},
                   {"residual_term_count", v.residual.term_count()},
                   {"residual_degree", v.residual.degree()},
                   {"residual_terms", detail::terms_json(v.residual, a.max_terms)}};
    if (t.record) rep.results["scale_c"] = to_string(t.record->scale_c);
    rep.exit_code = v.is_solution ? 0 : 1;
    rep.wall_ms = sw.ms();
    return rep;
}

struct ScanArgs {
    int max_n = 10;
    std::string routes = "J";
    int jobs = 1;
    std::string pairs = "ordered";
};

/// n, J_n, sigma_obstruction, is_zero, is_triangular, gamma_all_nonzero (+ error).
inline std::string scan_csv(const std::vector<ObstructionTable>& rows) {
    std::ostringstream os;
    os << "n,J_n,sigma_obstruction,is_zero,is_triangular,gamma_all_nonzero,error\n";
    for (const auto& r : rows) {
        const bool zero = r.J ? *r.J == 0 : (r.sigma_obstruction && *r.sigma_obstruction == 0);
        os << r.n << ',' << (r.J ? to_string(*r.J) : "") << ','
           << (r.sigma_obstruction ? to_string(*r.sigma_obstruction) : "") << ',' << (zero ? "true" : "false") << ','
           << (r.triangular ? "true" : "false") << ','
           << (r.unique_even ? (*r.unique_even ? "true" : "false") : "") << ',';
        std::string err = r.error;
        for (auto& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        os << err << '\n';
    }
    return os.str();
}

inline RunReport cmd_scan_jn(const ScanArgs& a, std::vector<ObstructionTable>* rows_out = nullptr) {
    detail::Stopwatch sw;
    RunReport rep;
    rep.command = "scan-jn";
    rep.inputs = {{"max_n", a.max_n}, {"routes", a.routes}, {"jobs", a.jobs}, {"pairs", a.pairs}};
    if (a.max_n < 1) throw UsageError("--max-n must be >= 1");
    Routes routes;
    PairConvention conv;
    try {
        routes = parse_routes(a.routes);
        conv = parse_pair_convention(a.pairs);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    auto rows = scan(a.max_n, routes, a.jobs, conv);
    std::vector<int> j_zeros, s_zeros, triangular, disagree, errors, not_unique;
    for (const auto& r : rows) {
        if (r.triangular) triangular.push_back(r.n);
        if (r.J && *r.J == 0) j_zeros.push_back(r.n);
        if (r.sigma_obstruction && *r.sigma_obstruction == 0) s_zeros.push_back(r.n);
        if (!r.routes_agree()) disagree.push_back(r.n);
        if (!r.error.empty()) errors.push_back(r.n);
        if (r.unique_even && !*r.unique_even) not_unique.push_back(r.n);
    }
    rep.results = {{"rows", rows.size()},      {"triangular", triangular}, {"route_disagreements", disagree},
                   {"error_rows", errors},     {"uniqueness_failures", not_unique}};
    if (routes.J) {
        rep.results["J_zero_set"] = j_zeros;
        rep.results["J_matches_triangular"] = j_zeros == triangular;
    }
    if (routes.sigma) {
        rep.results["sigma_zero_set"] = s_zeros;
        rep.results["sigma_matches_triangular"] = s_zeros == triangular;
    }
    rep.exit_code = (disagree.empty() && errors.empty() && not_unique.empty()) ? 0 : 1;
    if (rows_out) *rows_out = std::move(rows);
    rep.wall_ms = sw.ms();
    return rep;
}

struct CertifyArgs {
    int n = 1;
};

inline RunReport cmd_certify(const CertifyArgs& a) {
    detail::Stopwatch sw;
    RunReport rep;
    rep.command = "certify";
    rep.inputs = {{"n", a.n}};
    if (a.n < 1 || !is_triangular(a.n)) throw UsageError("--n must be a triangular number k(k+1)/2");
    const auto c = uniqueness_certificate(a.n);
    json g = json::array();
    for (std::size_t q = 0; q < c.gammas.size(); ++q) g.push_back({{"q", q + 1}, {"gamma", to_string(c.gammas[q])}});
    rep.results = {{"n", a.n}, {"gammas", g}, {"all_nonzero", c.all_nonzero}, {"unique_even", c.all_nonzero}};
    rep.exit_code = c.all_nonzero ? 0 : 1;
    rep.wall_ms = sw.ms();
    return rep;
}

struct CmArgs {
    std::string tau;
    std::vector<std::string> params;
    std::string ys = "0,0.5,1,2";
    double tol = 1e-9;
    std::optional<std::string> rescale;  // "sx2,sy2", overrides the record's
};

inline RunReport cmd_cm_check(const CmArgs& a) {
    detail::Stopwatch sw;
    RunReport rep;
    rep.command = "cm-check";
    rep.exact = false;
    rep.inputs = {{"tau", a.tau}, {"params", a.params}, {"y", a.ys}, {"tol", a.tol}};
    const auto t = detail::resolve_tau(a.tau, detail::parse_bindings(a.params));
    double sx2 = t.record ? t.record->sx2.get_d() : 1.0;
    double sy2 = t.record ? t.record->sy2.get_d() : 1.0;
    if (a.rescale) {
        const auto s = detail::parse_doubles(*a.rescale, "--rescale");
        if (s.size() != 2 || s[0] <= 0 || s[1] <= 0) throw UsageError("--rescale expects two positive numbers sx2,sy2");
        sx2 = s[0];
        sy2 = s[1];
    }
    rep.inputs["rescale_squares"] = {sx2, sy2};
    json rows = json::array();
    bool ok = true;
    for (double y : detail::parse_doubles(a.ys, "--y")) {
        const auto r = cm_check_at(t.tau, std::sqrt(sx2), std::sqrt(sy2), y);
        json row{{"y", y},
                 {"n_poles", r.n_poles},
                 {"max_locus_residual", r.max_locus_residual},
                 {"max_tangent_residual_of_flow", r.max_tangent_residual},
                 {"min_pole_gap", r.min_gap}};
        if (!r.error.empty()) row["error"] = r.error;
        ok = ok && r.error.empty() && r.max_locus_residual <= a.tol && r.max_tangent_residual <= a.tol;
        rows.push_back(row);
    }
    rep.results = {{"rows", rows}, {"on_locus", ok}};
    rep.exit_code = ok ? 0 : 1;
    rep.wall_ms = sw.ms();
    return rep;
}

inline RunReport cmd_lax_table() {
    detail::Stopwatch sw;
    RunReport rep;
    rep.command = "lax-table";
    const auto computed = phase_table();
    const auto printed = printed_phase_table();
    json entries = json::array();
    int mismatches = 0;
    for (std::size_t k = 0; k < computed.size(); ++k) {
        const bool match = computed[k] == printed[k];
        mismatches += match ? 0 : 1;
        entries.push_back({{"j", computed[k].j},
                           {"point", computed[k].point},
                           {"x_coefficient", computed[k].lambda.str()},
                           {"y_coefficient", computed[k].sigma.str()},
                           {"printed", printed[k].str()},
                           {"matches_printed", match}});
    }
    json points = json::array();
    for (const auto& p : distinguished_points()) points.push_back({{"label", p.label}, {"k", p.k.str()}});
    rep.results = {{"points", points}, {"entries", entries}, {"mismatches", mismatches}};
    rep.exit_code = mismatches == 0 ? 0 : 1;
    rep.wall_ms = sw.ms();
    return rep;
}

struct ProbeArgs {
    std::string point = "k1+";
    double x = 1.0;
    std::string eps = "1e-2,1e-3,1e-4";
};

inline RunReport cmd_lax_probe(const ProbeArgs& a) {
    detail::Stopwatch sw;
    RunReport rep;
    rep.command = "lax-probe";
    rep.exact = false;
    rep.inputs = {{"point", a.point}, {"x", a.x}, {"eps", a.eps}};
    DistinguishedPoint pt;
    try {
        pt = find_point(a.point);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto rows = probe(pt, a.x, detail::parse_doubles(a.eps, "--eps"));
    json out = json::array();
    bool shrinking = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        out.push_back({{"eps", rows[k].eps},
                       {"phi12", detail::complex_json(rows[k].value.phi12)},
                       {"phi22", detail::complex_json(rows[k].value.phi22)},
                       {"step", rows[k].step}});
        if (k >= 2 && !(rows[k].step < rows[k - 1].step)) shrinking = false;
        if (!std::isfinite(std::abs(rows[k].value.phi12)) || !std::isfinite(std::abs(rows[k].value.phi22)))
            shrinking = false;
    }
    rep.results = {{"point", pt.label}, {"k", pt.k.str()}, {"rows", out}, {"converging", shrinking}};
    rep.exit_code = shrinking ? 0 : 1;
    rep.wall_ms = sw.ms();
    return rep;
}

struct EnergyArgs {
    std::string tau;
    std::vector<std::string> params;
    double R = 200.0;
    double h = 0.05;
    int jobs = 1;
};

inline RunReport cmd_energy(const EnergyArgs& a) {
    detail::Stopwatch sw;
    RunReport rep;
    rep.command = "energy";
    rep.exact = false;
    rep.inputs = {{"tau", a.tau}, {"params", a.params}, {"R", a.R}, {"h", a.h}, {"jobs", a.jobs}};
    if (!(a.R > 0) || !(a.h > 0)) throw UsageError("--R and --h must be positive");
    const auto t = detail::resolve_tau(a.tau, detail::parse_bindings(a.params));
    const double sx = t.record ? std::sqrt(t.record->sx2.get_d()) : 1.0;
    const double sy = t.record ? std::sqrt(t.record->sy2.get_d()) : 1.0;
    const auto e = energy(t.tau, sx, sy, a.R, a.h, a.jobs);
    rep.results = {{"H", e.value}, {"quadrature", e.quadrature}, {"tail_estimate", e.tail},
                   {"grid_step", e.h}, {"points", e.points}};
    rep.wall_ms = sw.ms();
    return rep;
}

struct DegreeArgs {
    long k = 1;
};

inline RunReport cmd_degree(const DegreeArgs& a) {
    detail::Stopwatch sw;
    RunReport rep;
    rep.command = "degree";
    rep.inputs = {{"k", a.k}};
    if (a.k < 0) throw UsageError("--k must be >= 0");
    const Rational m = solve_degree(a.k);
    const long j = 2 * a.k;
    const auto h = hierarchy_degree(j, m);
    rep.results = {{"m", to_string(m)},
                   {"j", j},
                   {"b", to_string(h.b)},
                   {"B", to_string(h.B)},
                   {"quarter_difference", to_string(Rational(h.b / 4 - h.B / 4))},
                   {"balanced_m", to_string(balanced_m(j))},
                   {"balanced", h.balanced},
                   {"tau_degree", a.k * (a.k + 1)}};
    rep.exit_code = h.balanced && m == balanced_m(j) ? 0 : 1;
    rep.wall_ms = sw.ms();
    return rep;
}

struct ExportArgs {
    std::string dir = "data/catalog";
};

inline RunReport cmd_export_catalog(const ExportArgs& a) {
    detail::Stopwatch sw;
    RunReport rep;
    rep.command = "export-catalog";
    rep.inputs = {{"dir", a.dir}};
    export_catalog(a.dir);
    json ids = json::array();
    for (const auto& r : catalog()) ids.push_back(r.id);
    rep.results = {{"written", ids}, {"manifest", (std::filesystem::path(a.dir) / "manifest.json").string()}};
    rep.wall_ms = sw.ms();
    return rep;
}

}  // namespace lumpcas::cli
