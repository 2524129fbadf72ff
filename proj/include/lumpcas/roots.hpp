#pragma once

/**
 * @file roots.hpp
 * @brief All complex roots of a univariate polynomial.
 *
 * Aberth-Ehrlich simultaneous iteration with a Newton polish; if it fails to
 * converge the companion matrix eigenvalues are used instead.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace lumpcas {

using cplx = std::complex<double>;

class RootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// coeffs[k] multiplies x^k.
inline cplx horner(const std::vector<cplx>& coeffs, cplx x) {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline std::vector<cplx> derivative(const std::vector<cplx>& coeffs) {
    std::vector<cplx> d;
    for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(coeffs[k] * static_cast<double>(k));
    return d;
}

/// |p(x)| / (sum |c_k| |x|^k), the backward error of a root.
inline double relative_residual(const std::vector<cplx>& coeffs, cplx x) {
    double scale = 0.0;
    const double ax = std::abs(x);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) scale = scale * ax + std::abs(*it);
    return scale == 0.0 ? 0.0 : std::abs(horner(coeffs, x)) / scale;
}

struct RootOptions {
    int max_iter = 500;
    double tol = 1e-12;  // on relative_residual
};

struct RootResult {
    std::vector<cplx> roots;
    int iterations = 0;
    bool used_fallback = false;
    double max_residual = 0.0;
};

namespace detail {

inline std::vector<cplx> trim(std::vector<cplx> c) {
    while (!c.empty() && c.back() == cplx(0.0)) c.pop_back();
    return c;
}

inline std::vector<cplx> companion_roots(const std::vector<cplx>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) M(k, k - 1) = 1.0;
    for (int k = 0; k < n; ++k) M(k, n - 1) = -c[k] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    if (es.info() != Eigen::Success) throw RootError("companion eigenvalue solver failed");
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return r;
}

inline void polish(const std::vector<cplx>& c, const std::vector<cplx>& dc, std::vector<cplx>& roots) {
    for (auto& z : roots) {
        for (int it = 0; it < 3; ++it) {
            const cplx d = horner(dc, z);
            if (d == cplx(0.0)) break;
            const cplx next = z - horner(c, z) / d;
            if (relative_residual(c, next) > relative_residual(c, z)) break;
            z = next;
        }
    }
}

}  // namespace detail

inline RootResult find_roots(const std::vector<cplx>& coeffs_in, const RootOptions& opt = {}) {
    const auto c = detail::trim(coeffs_in);
    if (c.size() < 2) throw RootError("polynomial has no roots (degree < 1)");
    const int n = static_cast<int>(c.size()) - 1;
    const auto dc = derivative(c);

    // initial points on a circle whose radius bounds the root moduli
    double rad = 0.0;
    for (int k = 0; k < n; ++k) rad = std::max(rad, std::pow(std::abs(c[k] / c[n]), 1.0 / (n - k)));
    rad = std::max(rad, 1e-3);
    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) z[k] = std::polar(rad, 2.0 * std::numbers::pi * (k + 0.25) / n + 0.4);

    RootResult res;
    bool done = false;
    for (int it = 0; it < opt.max_iter && !done; ++it) {
        res.iterations = it + 1;
        done = true;
        for (int k = 0; k < n; ++k) {
            if (relative_residual(c, z[k]) <= opt.tol * 1e-2) continue;
            const cplx ratio = horner(c, z[k]) / horner(dc, z[k]);
            cplx s = 0.0;
            for (int m = 0; m < n; ++m)
                if (m != k) s += 1.0 / (z[k] - z[m]);
            const cplx w = ratio / (1.0 - ratio * s);
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) z[k] -= w;
            if (std::abs(w) > 1e-15 * std::max(1.0, std::abs(z[k]))) done = false;
        }
    }
    detail::polish(c, dc, z);
    auto worst = [&](const std::vector<cplx>& r) {
        double m = 0.0;
        for (const auto& x : r) m = std::max(m, relative_residual(c, x));
        return m;
    };
    res.max_residual = worst(z);
    if (!(res.max_residual <= opt.tol)) {
        auto alt = detail::companion_roots(c);
        detail::polish(c, dc, alt);
        const double w = worst(alt);
        if (w < res.max_residual) {
            z = std::move(alt);
            res.max_residual = w;
            res.used_fallback = true;
        }
    }
    if (!(res.max_residual <= opt.tol))
        throw RootError("root iteration did not converge (max relative residual " + std::to_string(res.max_residual) + ")");
    res.roots = std::move(z);
    return res;
}

/// Smallest pairwise distance; +inf for fewer than two points.
inline double min_gap(const std::vector<cplx>& pts) {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) g = std::min(g, std::abs(pts[a] - pts[b]));
    return g;
}

/**
 * perm[k] = index in `to` nearest to from[k]. Throws when the match is not a
 * bijection or the nearest and second-nearest candidates are within `ambiguity`
 * of each other relative to their distance.
 */
inline std::vector<std::size_t> pair_roots(const std::vector<cplx>& from, const std::vector<cplx>& to,
                                           double ambiguity = 0.5) {
    if (from.size() != to.size()) throw RootError("pair_roots: size mismatch");
    std::vector<std::size_t> perm(from.size());
    std::vector<bool> used(to.size(), false);
    for (std::size_t k = 0; k < from.size(); ++k) {
        double best = std::numeric_limits<double>::infinity();
        double second = best;
        std::size_t arg = 0;
        for (std::size_t m = 0; m < to.size(); ++m) {
            const double d = std::abs(from[k] - to[m]);
            if (d < best) {
                second = best;
                best = d;
                arg = m;
            } else if (d < second) {
                second = d;
            }
        }
        if (to.size() > 1 && best > ambiguity * second)
            throw RootError("pair_roots: ambiguous match for root " + std::to_string(k));
        if (used[arg]) throw RootError("pair_roots: two roots matched the same target");
        used[arg] = true;
        perm[k] = arg;
    }
    return perm;
}

}  // namespace lumpcas
