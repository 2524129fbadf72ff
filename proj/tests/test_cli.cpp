#include "lumpcas/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace lumpcas;
using namespace lumpcas::cli;

namespace {

struct Run {
    int rc = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(LUMPCAS_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(CliCommands, Verify) {
    const auto ok = cmd_verify({"lump2", {}, "", 10});
    EXPECT_EQ(ok.exit_code, 0);
    EXPECT_TRUE(ok.results.at("is_solution").get<bool>());
    const auto bad = cmd_verify({"pelin12", {}, "", 5});
    EXPECT_EQ(bad.exit_code, 1);
    EXPECT_EQ(bad.results.at("residual_term_count").get<int>(), 27);
    EXPECT_EQ(bad.results.at("residual_terms").size(), 5u);
    EXPECT_THROW(cmd_verify({"yang6", {}, "", 10}), UsageError);
    EXPECT_EQ(cmd_verify({"yang6", {"a=1/2", "b=-3"}, "", 10}).exit_code, 0);
    EXPECT_THROW(cmd_verify({"yang6", {"a"}, "", 10}), UsageError);
    EXPECT_THROW(cmd_verify({"no_such_tau", {}, "", 10}), UsageError);
}

TEST(CliCommands, ScanAndCsv) {
    std::vector<ObstructionTable> rows;
    const auto rep = cmd_scan_jn({10, "J,sigma", 2, "ordered"}, &rows);
    EXPECT_EQ(rep.exit_code, 0);
    EXPECT_EQ(rep.results.at("J_zero_set"), json({1, 3, 6, 10}));
    EXPECT_TRUE(rep.results.at("sigma_matches_triangular").get<bool>());
    const auto csv = scan_csv(rows);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "n,J_n,sigma_obstruction,is_zero,is_triangular,gamma_all_nonzero,error");
    std::getline(is, line);
    EXPECT_EQ(line.rfind("1,0,0,true,true,", 0), 0u) << line;
    std::getline(is, line);
    EXPECT_EQ(line.rfind("2,-384,", 0), 0u) << line;
    int count = 0;
    while (std::getline(is, line)) ++count;
    EXPECT_EQ(count, 8);
    EXPECT_THROW(cmd_scan_jn({0, "J", 1, "ordered"}), UsageError);
    EXPECT_THROW(cmd_scan_jn({5, "K", 1, "ordered"}), UsageError);
    const auto un = cmd_scan_jn({10, "J", 1, "unordered"});
    EXPECT_FALSE(un.results.at("J_matches_triangular").get<bool>());
}

TEST(CliCommands, CertifyDegreeLax) {
    const auto c = cmd_certify({15});
    EXPECT_EQ(c.exit_code, 0);
    EXPECT_EQ(c.results.at("gammas").at(6).at("gamma"), "-5460/17");
    EXPECT_THROW(cmd_certify({4}), UsageError);

    const auto d = cmd_degree({2});
    EXPECT_EQ(d.results.at("m"), "-9");
    EXPECT_EQ(d.exit_code, 0);
    EXPECT_THROW(cmd_degree({-1}), UsageError);

    const auto t = cmd_lax_table();
    EXPECT_EQ(t.results.at("mismatches").get<int>(), 2);
    EXPECT_EQ(t.exit_code, 1);

    const auto p = cmd_lax_probe({"k2-", 0.5, "1e-2,1e-3,1e-4,1e-5"});
    EXPECT_EQ(p.exit_code, 0);
    EXPECT_FALSE(p.exact);
    EXPECT_THROW(cmd_lax_probe({"k9", 0.5, "1e-2"}), UsageError);
}

TEST(CliCommands, CmAndEnergy) {
    const auto cm = cmd_cm_check({"lump2", {}, "0,1", 1e-9, std::nullopt});
    EXPECT_EQ(cm.exit_code, 0);
    EXPECT_EQ(cm.results.at("rows").size(), 2u);
    const auto off = cmd_cm_check({"pelin12", {}, "0", 1e-9, std::nullopt});
    EXPECT_EQ(off.exit_code, 1);
    // lump2 without the rescale is off the normalized locus
    const auto raw = cmd_cm_check({"lump2", {}, "1", 1e-9, std::string("1,1")});
    EXPECT_EQ(raw.exit_code, 1);
    EXPECT_THROW(cmd_cm_check({"lump2", {}, "1,x", 1e-9, std::nullopt}), UsageError);

    const auto e = cmd_energy({"lump2", {}, 30.0, 0.2, 1});
    EXPECT_GT(e.results.at("H").get<double>(), 1.0);
    EXPECT_THROW(cmd_energy({"lump2", {}, -1.0, 0.2, 1}), UsageError);
}

TEST(CliReport, JsonRoundTrip) {
    const auto rep = cmd_degree({3});
    const auto back = RunReport::from_json(json::parse(rep.to_json().dump()));
    EXPECT_EQ(back.command, rep.command);
    EXPECT_EQ(back.inputs, rep.inputs);
    EXPECT_EQ(back.results, rep.results);
    EXPECT_EQ(back.exit_code, rep.exit_code);
    EXPECT_EQ(back.exact, rep.exact);
    EXPECT_DOUBLE_EQ(back.wall_ms, rep.wall_ms);
    EXPECT_FALSE(rep.to_json(false).contains("timing"));
}

TEST(CliReport, ExportAndFileInput) {
    const auto dir = std::filesystem::temp_directory_path() / "lumpcas_cli_export";
    std::filesystem::remove_all(dir);
    const auto rep = cmd_export_catalog({dir.string()});
    EXPECT_EQ(rep.results.at("written").size(), catalog().size());
    EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
    EXPECT_TRUE(std::filesystem::exists(dir / "lump2.json"));
    const auto v = cmd_verify({(dir / "pelin6.json").string(), {}, "", 10});
    EXPECT_EQ(v.exit_code, 0);
    std::filesystem::remove_all(dir);
}

TEST(CliBinary, ExitCodes) {
    auto r = run_cli("--no-timing verify --tau lump2");
    EXPECT_EQ(r.rc, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("command"), "verify");
    EXPECT_FALSE(j.contains("timing"));
    EXPECT_EQ(run_cli("verify --tau pelin12").rc, 1);
    EXPECT_EQ(run_cli("verify --tau nope").rc, 2);
    EXPECT_EQ(run_cli("verify --tau yang6").rc, 2);
    EXPECT_EQ(run_cli("verify --tau yang6 --param a=0 --param b=0").rc, 0);
    EXPECT_EQ(run_cli("certify --n 4").rc, 2);
    EXPECT_EQ(run_cli("frobnicate").rc, 2);
    EXPECT_EQ(run_cli("lax-table").rc, 1);
    EXPECT_EQ(run_cli("degree --k 4").rc, 0);
}

TEST(CliBinary, ScanCsvOnStdout) {
    const auto r = run_cli("scan-jn --max-n 6 --routes J,sigma");
    EXPECT_EQ(r.rc, 0);
    EXPECT_EQ(r.out.rfind("n,J_n,", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
}
