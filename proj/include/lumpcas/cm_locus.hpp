#pragma once

/**
 * @file cm_locus.hpp
 * @brief Pole dynamics of q = -(3/2) sum 1/(x - eta_j(y))^2.
 *
 * With beta_j = d eta_j / dy the poles of a solution in the normalization
 * q_yy = 3 (q_xx + 4q^2 - q)_xx lie on the locus
 *
 *   sum_{k!=j} (beta_j + beta_k) / (eta_j - eta_k)^3 = 0
 *   beta_j^2 + sum_{k!=j} 36 / (eta_j - eta_k)^2 + 3 = 0
 *
 * and move by the Calogero-Moser flow
 *   d eta_j / dy = beta_j,  d beta_j / dy = sum_{k!=j} 72 / (eta_j - eta_k)^3.
 *
 * Numeric throughout. Catalog records are rescaled to this normalization
 * with their (sx^2, sy^2) before pole extraction.
 */

#include "lumpcas/catalog.hpp"
#include "lumpcas/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lumpcas {

class CoincidentPoles : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct PoleConfig {
    std::vector<cplx> eta;
    std::vector<cplx> beta;

    std::size_t n() const { return eta.size(); }

    void validate(double min_distance = 1e-8) const {
        if (eta.size() != beta.size()) throw std::invalid_argument("PoleConfig: eta and beta lengths differ");
        const double g = min_gap(eta);
        if (g <= min_distance)
            throw CoincidentPoles("PoleConfig: poles closer than " + std::to_string(min_distance) + " (gap " +
                                  std::to_string(g) + ")");
    }
};

struct TangentVector {
    std::vector<cplx> a;
    std::vector<cplx> b;
};

struct PairResidual {
    std::vector<cplx> first;
    std::vector<cplx> second;

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : first) m = std::max(m, std::abs(v));
        for (const auto& v : second) m = std::max(m, std::abs(v));
        return m;
    }
};

inline PairResidual locus_residual(const PoleConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n();
    PairResidual r{std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        cplx s1 = 0.0;
        cplx s2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const cplx d = cfg.eta[j] - cfg.eta[k];
            s1 += (cfg.beta[j] + cfg.beta[k]) / (d * d * d);
            s2 += 36.0 / (d * d);
        }
        r.first[j] = s1;
        r.second[j] = cfg.beta[j] * cfg.beta[j] + s2 + 3.0;
    }
    return r;
}

inline PairResidual tangent_residual(const PoleConfig& cfg, const TangentVector& v) {
    cfg.validate();
    const std::size_t n = cfg.n();
    if (v.a.size() != n || v.b.size() != n) throw std::invalid_argument("tangent_residual: length mismatch");
    PairResidual r{std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        cplx s1 = 0.0;
        cplx s2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const cplx d = cfg.eta[j] - cfg.eta[k];
            const cplx d3 = d * d * d;
            s1 += (v.b[j] + v.b[k]) / d3 - 3.0 * (cfg.beta[j] + cfg.beta[k]) * (v.a[j] - v.a[k]) / (d3 * d);
            s2 += 36.0 * (v.a[j] - v.a[k]) / d3;
        }
        r.first[j] = s1;
        r.second[j] = cfg.beta[j] * v.b[j] - s2;
    }
    return r;
}

/// The y-flow direction: a = beta, b_j = sum_{k!=j} 72 / (eta_j - eta_k)^3.
inline TangentVector cm_rhs(const PoleConfig& cfg) {
    cfg.validate();
    TangentVector v{cfg.beta, std::vector<cplx>(cfg.n())};
    for (std::size_t j = 0; j < cfg.n(); ++j)
        for (std::size_t k = 0; k < cfg.n(); ++k)
            if (k != j) {
                const cplx d = cfg.eta[j] - cfg.eta[k];
                v.b[j] += 72.0 / (d * d * d);
            }
    return v;
}

// ---------------------------------------------------------------------------
// Poles of a tau-function

struct PoleOptions {
    RootOptions roots;
    double min_distance = 1e-8;
};

namespace detail {

// Coefficients in x of f(sx x, sy y) at fixed y.
inline std::vector<cplx> x_coefficients(const ExactPoly& f, double sx, double sy, double y) {
    std::vector<cplx> c(std::max(0, f.degree_in(Axis::First)) + 1, 0.0);
    for (const auto& [m, v] : f.terms())
        c[m.i] += v.to_complex() * std::pow(sx, m.i) * std::pow(sy * y, m.j);
    return c;
}

inline cplx eval_scaled(const ExactPoly& f, double sx, double sy, cplx x, double y) {
    return evaluate(f, sx * x, cplx(sy * y));
}

}  // namespace detail

/**
 * Poles eta_j(y) = x-roots of tau~(., y), tau~(x, y) = tau(sx x, sy y), with
 * beta_j = -tau~_y / tau~_x at eta_j.
 */
inline PoleConfig poles_from_tau(const ExactPoly& tau, double sx, double sy, double y, const PoleOptions& opt = {}) {
    if (tau.basis() != Basis::XY) throw std::invalid_argument("poles_from_tau: tau must be in the xy basis");
    const auto rr = find_roots(detail::x_coefficients(tau, sx, sy, y), opt.roots);
    const auto tx = diff(tau, Axis::First, 1);
    const auto ty = diff(tau, Axis::Second, 1);
    PoleConfig cfg;
    cfg.eta = rr.roots;
    for (const auto& e : cfg.eta) {
        const cplx dx = detail::eval_scaled(tx, sx, sy, e, y) * sx;
        const cplx dy = detail::eval_scaled(ty, sx, sy, e, y) * sy;
        cfg.beta.push_back(-dy / dx);
    }
    cfg.validate(opt.min_distance);
    return cfg;
}

inline PoleConfig poles_from_tau(const TauRecord& rec, double y, const Bindings& bindings = {},
                                 const PoleOptions& opt = {}) {
    return poles_from_tau(rec.bind(bindings), std::sqrt(rec.sx2.get_d()), std::sqrt(rec.sy2.get_d()), y, opt);
}

/// max_j |beta_j - (eta_j(y+eps) - eta_j(y-eps)) / (2 eps)| after nearest-neighbour pairing.
inline double beta_finite_difference_error(const ExactPoly& tau, double sx, double sy, double y, double eps = 1e-5) {
    const auto mid = poles_from_tau(tau, sx, sy, y);
    const auto up = poles_from_tau(tau, sx, sy, y + eps);
    const auto dn = poles_from_tau(tau, sx, sy, y - eps);
    const auto pu = pair_roots(mid.eta, up.eta);
    const auto pd = pair_roots(mid.eta, dn.eta);
    double err = 0.0;
    for (std::size_t j = 0; j < mid.n(); ++j) {
        const cplx fd = (up.eta[pu[j]] - dn.eta[pd[j]]) / (2.0 * eps);
        err = std::max(err, std::abs(fd - mid.beta[j]));
    }
    return err;
}

/// Largest distance from a root to its nearest conjugate partner.
inline double conjugate_closure_error(const std::vector<cplx>& eta) {
    double worst = 0.0;
    for (const auto& e : eta) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : eta) best = std::min(best, std::abs(std::conj(e) - f));
        worst = std::max(worst, best);
    }
    return worst;
}

struct CmRow {
    double y = 0.0;
    std::size_t n_poles = 0;
    double max_locus_residual = 0.0;
    double max_tangent_residual = 0.0;
    double min_gap = 0.0;
    std::string error;
};

inline CmRow cm_check_at(const ExactPoly& tau, double sx, double sy, double y, const PoleOptions& opt = {}) {
    CmRow row;
    row.y = y;
    try {
        const auto cfg = poles_from_tau(tau, sx, sy, y, opt);
        row.n_poles = cfg.n();
        row.min_gap = min_gap(cfg.eta);
        row.max_locus_residual = locus_residual(cfg).max_abs();
        row.max_tangent_residual = tangent_residual(cfg, cm_rhs(cfg)).max_abs();
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace lumpcas
