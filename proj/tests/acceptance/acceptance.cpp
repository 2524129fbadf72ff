// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "lumpcas/catalog.hpp"
#include "lumpcas/classifier.hpp"
#include "lumpcas/cli.hpp"
#include "lumpcas/cm_locus.hpp"
#include "lumpcas/hirota.hpp"
#include "lumpcas/lax.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

using namespace lumpcas;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail << " (" << s << " s)" << std::endl;
}

std::vector<int> triangulars_upto(int n) {
    std::vector<int> out;
    for (int k = 1; k * (k + 1) / 2 <= n; ++k) out.push_back(k * (k + 1) / 2);
    return out;
}

int cores() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    criterion("C1 triangular degree law, n <= 300, J and sigma routes", [] {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<ObstructionTable> rows;
        const auto rep = cli::cmd_scan_jn({300, "J,sigma", cores(), "ordered"}, &rows);
        const double s = seconds_since(t0);
        const auto want = triangulars_upto(300);
        std::vector<int> jz, sz;
        for (const auto& r : rows) {
            if (r.J && *r.J == 0) jz.push_back(r.n);
            if (r.sigma_obstruction && *r.sigma_obstruction == 0) sz.push_back(r.n);
        }
        std::ostringstream d;
        d << "J zeros " << jz.size() << ", sigma zeros " << sz.size() << ", triangulars " << want.size() << ", "
          << s << " s";
        return Outcome{jz == want && sz == want && rep.exit_code == 0 && s <= 600.0, d.str()};
    });

    criterion("C2 gamma table for n = 15", [] {
        const std::vector<std::string> printed{"3219950475/374", "-800391375/416", "24045525/4", "34505100/187",
                                               "-74025/52",      "55335/2",        "-5460/17"};
        const auto rep = cli::cmd_certify({15});
        std::vector<std::string> got;
        for (const auto& g : rep.results.at("gammas")) got.push_back(g.at("gamma").get<std::string>());
        int same = 0;
        for (std::size_t q = 0; q < std::min(got.size(), printed.size()); ++q) same += got[q] == printed[q];
        return Outcome{got == printed, std::to_string(same) + "/7 string-equal"};
    });

    criterion("C3 uniqueness certificates, triangular n <= 105", [] {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<int> bad;
        std::size_t total = 0;
        for (int n : triangulars_upto(105)) {
            const auto c = uniqueness_certificate(n);
            total += c.gammas.size();
            if (!c.all_nonzero) bad.push_back(n);
        }
        const double s = seconds_since(t0);
        std::ostringstream d;
        d << total << " gammas, " << bad.size() << " certificates with a zero, " << s << " s";
        return Outcome{bad.empty() && s <= 600.0, d.str()};
    });

    criterion("C4 tau verification", [] {
        std::ostringstream d;
        bool ok = true;
        ok &= verify_tau(find_tau("lump2").bind(), BilinearForm::standard()).residual.is_zero();
        ok &= verify_tau(find_tau("pelin6").bind(), BilinearForm::standard()).residual.is_zero();
        const auto& yang = find_tau("yang6");
        for (auto [a, b] : std::vector<std::pair<long, long>>{{0, 0}, {1, 0}, {0, 1}, {2, -3}})
            ok &= verify_tau(yang.bind({{"a", a}, {"b", b}}), BilinearForm::yang()).residual.is_zero();
        d << "lump2, pelin6, yang6 x4 " << (ok ? "exact zero" : "NONZERO");
        const auto rep = cli::cmd_verify({"pelin12", {}, "standard", 1000});
        const auto count = rep.results.at("residual_term_count").get<std::size_t>();
        if (count == 0) {
            d << "; pelin12 exact zero";
        } else {
            // printed coefficient erratum: the report lists every offending monomial, and the
            // one-coefficient correction is an exact solution
            const bool listed = rep.results.at("residual_terms").size() == count;
            const bool corrected = verify_tau(find_tau("pelin12c").bind(), BilinearForm::standard()).residual.is_zero();
            d << "; pelin12 as printed leaves " << count << " monomials (all listed: " << (listed ? "yes" : "no")
              << "), corrected record exact zero: " << (corrected ? "yes" : "no") << " -> erratum documented";
            ok &= listed && corrected;
        }
        return Outcome{ok, d.str()};
    });

    criterion("C5 phase table, twelve entries", [] {
        const auto got = phase_table();
        const auto printed = printed_phase_table();
        std::ostringstream d;
        int match = 0;
        for (std::size_t q = 0; q < got.size(); ++q) {
            if (got[q] == printed[q]) {
                ++match;
            } else {
                d << " [" << got[q].point << " j=" << got[q].j << ": computed " << got[q].str() << ", printed "
                  << printed[q].str() << "]";
            }
        }
        return Outcome{match == 12, std::to_string(match) + "/12 match" + d.str()};
    });

    criterion("C6 CM locus for the rescaled lump", [] {
        const auto& rec = find_tau("lump2");
        const auto tau = rec.bind();
        const double sx = std::sqrt(rec.sx2.get_d());
        const double sy = std::sqrt(rec.sy2.get_d());
        double worst_locus = 0, worst_tangent = 0, worst_eta = 0;
        bool ok = true;
        for (double y : {0.0, 0.5, 1.0, 2.0}) {
            const auto row = cm_check_at(tau, sx, sy, y);
            ok &= row.error.empty() && row.n_poles == 2;
            worst_locus = std::max(worst_locus, row.max_locus_residual);
            worst_tangent = std::max(worst_tangent, row.max_tangent_residual);
            const auto cfg = poles_from_tau(tau, sx, sy, y);
            const double s = std::sqrt(3.0 * y * y + 3.0);
            for (const auto& e : cfg.eta) {
                const cplx want(0.0, e.imag() > 0 ? s : -s);
                worst_eta = std::max(worst_eta, std::abs(e - want));
            }
        }
        std::ostringstream d;
        d << "locus " << worst_locus << ", tangent " << worst_tangent << ", eta error " << worst_eta;
        return Outcome{ok && worst_locus <= 1e-9 && worst_tangent <= 1e-9 && worst_eta <= 1e-10, d.str()};
    });

    criterion("C7 energy quantization", [] {
        const int j = cores();
        const double h2 = energy(find_tau("lump2"), 200.0, 0.05, j).value;
        const double h6 = energy(find_tau("pelin6"), 200.0, 0.05, j).value;
        const double h2f = energy(find_tau("lump2"), 400.0, 0.025, j).value;
        const double h6f = energy(find_tau("pelin6"), 400.0, 0.025, j).value;
        const double ratio = h6 / h2;
        const double drift = std::max(std::abs(h2f / h2 - 1.0), std::abs(h6f / h6 - 1.0));
        std::ostringstream d;
        d.precision(8);
        d << "H2 " << h2 << ", H6 " << h6 << ", ratio " << ratio << ", refinement drift " << drift;
        return Outcome{std::abs(ratio - 3.0) <= 0.15 && drift <= 0.01, d.str()};
    });

    criterion("C8 property suites", [] {
        std::mt19937_64 rng(20260101);
        int hirota = 0;
        for (int t = 0; t < 200; ++t) {
            const auto basis = t % 3 == 0 ? Basis::ZZbar : Basis::XY;
            const auto f = testsupport::random_poly(rng, basis, 4, 4);
            const auto g = testsupport::random_poly(rng, basis, 4, 4);
            const int a = std::uniform_int_distribution<int>(0, 4)(rng);
            const int b = std::uniform_int_distribution<int>(0, 4 - a)(rng);
            hirota += hirota_d(a, b, f, g) == testsupport::hirota_oracle(a, b, f, g);
        }
        int dp = 0, dp_total = 0;
        for (int n : {6, 10, 15})
            for (int i = 0; i <= 5; ++i)
                for (int k = 0; k <= 5; ++k) {
                    if (3 * i > n || 3 * k > n) continue;
                    if (2 * n - 3 * i - 3 * k - 1 >= 0) {
                        ++dp_total;
                        dp += d_ij_definitional(n, i, k) == Rational(d_ij(i, k));
                    }
                    if (2 * n - 3 * i - 3 * k - 4 >= 0) {
                        ++dp_total;
                        dp += p_ij_definitional(n, i, k) == Rational(p_ij(n, i, k));
                    }
                }
        int round = 0;
        for (int t = 0; t < 500; ++t) {
            const auto f = testsupport::random_poly(rng, Basis::XY, 6, 6);
            round += to_xy(to_zzbar(f)) == f;
        }
        int sig = 0;
        for (int n = 1; n <= 50; ++n) sig += sigma_seq(n)[1] == make_rational(n - n * n, 2);
        int deg = 0;
        for (long k = 0; k <= 10; ++k) {
            const auto m = solve_degree(k);
            deg += m == make_rational(-3 * k * (k + 1), 2) && hierarchy_degree(2 * k, m).balanced;
        }
        std::ostringstream d;
        d << "hirota " << hirota << "/200, d/p " << dp << "/" << dp_total << ", round trip " << round
          << "/500, sigma1 " << sig << "/50, degree " << deg << "/11";
        return Outcome{hirota == 200 && dp == dp_total && dp_total > 0 && round == 500 && sig == 50 && deg == 11,
                       d.str()};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
