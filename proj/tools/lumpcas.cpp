// lumpcas: exact checks for lump-type tau-functions of the Boussinesq equation.

#include "lumpcas/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace cl = lumpcas::cli;

namespace {

int emit(const cl::RunReport& rep, bool timing) {
    std::cout << rep.to_json(timing).dump(2) << '\n';
    return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification and classification of lump tau-functions"};
    app.require_subcommand(1);
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "Omit wall-clock timing from the report");

    cl::VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check a tau-function against a bilinear form");
    verify->add_option("--tau", va.tau, "Catalog id or polynomial file")->required();
    verify->add_option("--param", va.params, "Parameter binding name=p/q (repeatable)");
    verify->add_option("--form", va.form, "standard | even-section | yang | w:a:b,...");
    verify->add_option("--max-terms", va.max_terms, "Residual terms listed in the report");

    cl::ScanArgs sa;
    std::string scan_out;
    auto* scanc = app.add_subcommand("scan-jn", "Scan the degree obstructions for n = 1..N");
    scanc->add_option("--max-n", sa.max_n, "Largest n")->required();
    scanc->add_option("--routes", sa.routes, "Comma list of J, sigma, gamma");
    scanc->add_option("--jobs", sa.jobs, "Worker threads (0 = all cores)");
    scanc->add_option("--pairs", sa.pairs, "ordered | unordered pair counting in the J route");
    scanc->add_option("--out", scan_out, "CSV destination (default: stdout, no report)");

    cl::CertifyArgs ca;
    auto* certify = app.add_subcommand("certify", "Uniqueness certificate for triangular n");
    certify->add_option("--n", ca.n, "Half-degree n")->required();

    cl::CmArgs cma;
    std::string rescale;
    auto* cm = app.add_subcommand("cm-check", "Pole locus and flow-tangency residuals");
    cm->add_option("--tau", cma.tau, "Catalog id or polynomial file")->required();
    cm->add_option("--param", cma.params, "Parameter binding name=p/q (repeatable)");
    cm->add_option("--y", cma.ys, "Comma list of y values");
    cm->add_option("--tol", cma.tol, "Residual tolerance");
    cm->add_option("--rescale", rescale, "sx2,sy2 override for tau(sx x, sy y)");

    auto* laxt = app.add_subcommand("lax-table", "Exact phase table at the distinguished points");

    cl::ProbeArgs pa;
    auto* laxp = app.add_subcommand("lax-probe", "Phi_12, Phi_22 approaching a distinguished point");
    laxp->add_option("--point", pa.point, "k1+ | k1- | k2+ | k2-");
    laxp->add_option("--x", pa.x, "x value");
    laxp->add_option("--eps", pa.eps, "Comma list of relative offsets");

    cl::EnergyArgs ea;
    auto* en = app.add_subcommand("energy", "Quadrature of the conserved energy");
    en->add_option("--tau", ea.tau, "Catalog id or polynomial file")->required();
    en->add_option("--param", ea.params, "Parameter binding name=p/q (repeatable)");
    en->add_option("--R", ea.R, "Half width of the square");
    en->add_option("--step", ea.h, "Grid step h");
    en->add_option("--jobs", ea.jobs, "Worker threads (0 = all cores)");

    cl::DegreeArgs da;
    auto* deg = app.add_subcommand("degree", "Balanced hierarchy degree for k");
    deg->add_option("--k", da.k, "k")->required();

    cl::ExportArgs xa;
    auto* exp = app.add_subcommand("export-catalog", "Write the built-in catalog as interchange files");
    exp->add_option("--dir", xa.dir, "Destination directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const bool timing = !no_timing;
    try {
        if (*verify) return emit(cl::cmd_verify(va), timing);
        if (*scanc) {
            std::vector<lumpcas::ObstructionTable> rows;
            const auto rep = cl::cmd_scan_jn(sa, &rows);
            const auto csv = cl::scan_csv(rows);
            if (scan_out.empty()) {
                std::cout << csv;
                return rep.exit_code;
            }
            std::ofstream out(scan_out);
            if (!out) throw cl::UsageError("cannot write '" + scan_out + "'");
            out << csv;
            return emit(rep, timing);
        }
        if (*certify) return emit(cl::cmd_certify(ca), timing);
        if (*cm) {
            if (!rescale.empty()) cma.rescale = rescale;
            return emit(cl::cmd_cm_check(cma), timing);
        }
        if (*laxt) return emit(cl::cmd_lax_table(), timing);
        if (*laxp) return emit(cl::cmd_lax_probe(pa), timing);
        if (*en) return emit(cl::cmd_energy(ea), timing);
        if (*deg) return emit(cl::cmd_degree(da), timing);
        if (*exp) return emit(cl::cmd_export_catalog(xa), timing);
    } catch (const cl::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
