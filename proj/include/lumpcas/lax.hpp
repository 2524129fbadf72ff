#pragma once

/**
 * @file lax.hpp
 * @brief Spectral data of the constant-coefficient Lax matrix
 *
 *        [ 0            1  0 ]
 *   T =  [ 0            0  1 ]
 *        [ -i(k^3+2k)   2  0 ]
 *
 * Eigenvalues lambda_1 = ik, lambda_{2,3} = (-ik +- sqrt(3k^2+8))/2 with the
 * principal square root, y-frequencies sigma_j = i(3 lambda_j^2 - 4), and the
 * phases Lambda_j = lambda_j x + sigma_j y.
 *
 * At the four points k = +-(sqrt6/3)i, +-(2sqrt6/3)i every quantity lies in
 * Q(sqrt6, i); the phase table is computed there exactly with Q6i.
 */

#include "lumpcas/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lumpcas {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Q(sqrt6)[i]

/// (a + b sqrt6) + i (c + d sqrt6), exact.
struct Q6i {
    Rational a, b, c, d;

    static Q6i rational(const Rational& r) { return {r, 0, 0, 0}; }
    static Q6i i() { return {0, 0, 1, 0}; }
    static Q6i sqrt6() { return {0, 1, 0, 0}; }

    friend Q6i operator+(const Q6i& x, const Q6i& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
    friend Q6i operator-(const Q6i& x, const Q6i& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
    friend Q6i operator-(const Q6i& x) { return {-x.a, -x.b, -x.c, -x.d}; }
    friend Q6i operator*(const Q6i& x, const Q6i& y) {
        // (p + iq)(r + is) with p, q, r, s in Q(sqrt6)
        auto mul = [](const Rational& u0, const Rational& u1, const Rational& v0, const Rational& v1) {
            return std::pair<Rational, Rational>(u0 * v0 + 6 * u1 * v1, u0 * v1 + u1 * v0);
        };
        const auto pr = mul(x.a, x.b, y.a, y.b);
        const auto qs = mul(x.c, x.d, y.c, y.d);
        const auto ps = mul(x.a, x.b, y.c, y.d);
        const auto qr = mul(x.c, x.d, y.a, y.b);
        return {pr.first - qs.first, pr.second - qs.second, ps.first + qr.first, ps.second + qr.second};
    }
    friend Q6i operator*(const Rational& s, const Q6i& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
    friend bool operator==(const Q6i& x, const Q6i& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }

    bool is_rational() const { return b == 0 && c == 0 && d == 0; }

    cplx to_complex() const {
        const double r6 = std::sqrt(6.0);
        return {a.get_d() + b.get_d() * r6, c.get_d() + d.get_d() * r6};
    }

    std::string str() const {
        auto part = [](const Rational& p, const Rational& q) {
            std::string s;
            if (p != 0) s = to_string(p);
            if (q != 0) {
                if (!s.empty() && q > 0) s += "+";
                s += (q == 1 ? "" : q == -1 ? "-" : to_string(q) + "*") + std::string("sqrt6");
            }
            return s;
        };
        const std::string re = part(a, b);
        const std::string im = part(c, d);
        if (im.empty()) return re.empty() ? "0" : re;
        const std::string imt = (c != 0 && d != 0) ? "(" + im + ")*i" : im + "*i";
        if (re.empty()) return imt;
        return re + (imt.front() == '-' ? "" : "+") + imt;
    }
};

namespace detail {

inline bool rational_sqrt(const Rational& r, Rational& out) {
    if (r < 0) return false;
    if (mpz_perfect_square_p(r.get_num_mpz_t()) == 0 || mpz_perfect_square_p(r.get_den_mpz_t()) == 0) return false;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    out = Rational(n, d);
    out.canonicalize();
    return true;
}

}  // namespace detail

/// Principal square root of a non-negative rational of the form r^2 or 6 r^2.
inline Q6i sqrt_q6(const Q6i& v) {
    if (!v.is_rational() || v.a < 0) throw std::domain_error("sqrt_q6: argument " + v.str() + " is not a non-negative rational");
    Rational r;
    if (detail::rational_sqrt(v.a, r)) return Q6i::rational(r);
    if (detail::rational_sqrt(Rational(v.a / 6), r)) return {0, r, 0, 0};
    throw std::domain_error("sqrt_q6: sqrt(" + v.str() + ") is not in Q(sqrt6)");
}

// ---------------------------------------------------------------------------
// Distinguished points and the phase table

struct DistinguishedPoint {
    std::string label;  // k1+, k1-, k2+, k2-
    Q6i k;
};

/// k1,+- = +-(sqrt6/3) i, k2,+- = +-(2 sqrt6/3) i.
inline std::vector<DistinguishedPoint> distinguished_points() {
    return {{"k1+", {0, 0, 0, make_rational(1, 3)}},
            {"k1-", {0, 0, 0, make_rational(-1, 3)}},
            {"k2+", {0, 0, 0, make_rational(2, 3)}},
            {"k2-", {0, 0, 0, make_rational(-2, 3)}}};
}

inline const DistinguishedPoint& find_point(const std::string& label) {
    static const auto pts = distinguished_points();
    for (const auto& p : pts)
        if (p.label == label) return p;
    throw std::invalid_argument("unknown spectral point '" + label + "' (k1+, k1-, k2+, k2-)");
}

/// Lambda_j = lambda x + sigma y, stored as its two coefficients.
struct PhaseEntry {
    int j = 0;
    std::string point;
    Q6i lambda;
    Q6i sigma;

    friend bool operator==(const PhaseEntry& p, const PhaseEntry& q) {
        return p.j == q.j && p.point == q.point && p.lambda == q.lambda && p.sigma == q.sigma;
    }
    std::string str() const { return "(" + lambda.str() + ")x + (" + sigma.str() + ")y"; }
};

inline std::array<Q6i, 3> eigenvalues_exact(const Q6i& k) {
    const Q6i ik = Q6i::i() * k;
    const Q6i s = sqrt_q6(Rational(3) * (k * k) + Q6i::rational(8));
    const Rational half(1, 2);
    return {ik, half * (s - ik), half * (-ik - s)};
}

inline Q6i sigma_exact(const Q6i& lambda) {
    return Q6i::i() * (Rational(3) * (lambda * lambda) - Q6i::rational(4));
}

/// The twelve entries, ordered by point (k1+, k1-, k2+, k2-) then j.
inline std::vector<PhaseEntry> phase_table() {
    std::vector<PhaseEntry> out;
    for (const auto& p : distinguished_points()) {
        const auto lam = eigenvalues_exact(p.k);
        for (int j = 0; j < 3; ++j) out.push_back({j + 1, p.label, lam[j], sigma_exact(lam[j])});
    }
    return out;
}

/**
 * The published table, in phase_table() order. The
 * second printed block labels Lambda_2, Lambda_3 with k1+-; they sit next to
 * Lambda_1(k2+-) and are read as k2+-.
 */
inline std::vector<PhaseEntry> printed_phase_table() {
    const Rational t(1, 3);
    const Rational tt(2, 3);
    auto e = [](int j, const char* pt, Rational lx, long iy) {
        return PhaseEntry{j, pt, Q6i{0, std::move(lx), 0, 0}, Q6i{0, 0, Rational(iy), 0}};
    };
    return {e(1, "k1+", -t, -2), e(2, "k1+", tt, 4),  e(3, "k1+", -t, -2),
            e(1, "k1-", t, -2),  e(2, "k1-", t, 4),   e(3, "k1-", -tt, -2),
            e(1, "k2+", -tt, 4), e(2, "k2+", t, -2),  e(3, "k2+", t, -2),
            e(1, "k2-", tt, 4),  e(2, "k2-", -t, -2), e(3, "k2-", -t, -2)};
}

// ---------------------------------------------------------------------------
// Numeric spectral data

struct SpectralPoint {
    cplx k;
    std::array<cplx, 3> lambdas;
    std::array<cplx, 3> sigmas;
};

inline std::array<cplx, 3> eigenvalues(cplx k) {
    const cplx I(0.0, 1.0);
    const cplx s = std::sqrt(3.0 * k * k + 8.0);
    return {I * k, 0.5 * (-I * k + s), 0.5 * (-I * k - s)};
}

inline SpectralPoint spectral_point(cplx k) {
    const cplx I(0.0, 1.0);
    SpectralPoint sp{k, eigenvalues(k), {}};
    for (int j = 0; j < 3; ++j) sp.sigmas[j] = I * (3.0 * sp.lambdas[j] * sp.lambdas[j] - 4.0);
    return sp;
}

inline Eigen::Matrix3cd t_matrix(cplx k) {
    const cplx I(0.0, 1.0);
    Eigen::Matrix3cd T;
    T << 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, -I * (k * k * k + 2.0 * k), 2.0, 0.0;
    return T;
}

/// Vandermonde matrix of the eigenvalues; its columns are eigenvectors of T.
inline Eigen::Matrix3cd p_matrix(cplx k) {
    const auto lam = eigenvalues(k);
    Eigen::Matrix3cd P;
    for (int j = 0; j < 3; ++j) {
        P(0, j) = 1.0;
        P(1, j) = lam[j];
        P(2, j) = lam[j] * lam[j];
    }
    return P;
}

struct EMatrix {
    Eigen::Matrix3cd E;
    cplx n;      // ((3k^2+2) sqrt(3k^2+8))^-1
    cplx det_p;
    cplx det_e;
};

class SingularSpectralPoint : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline EMatrix e_matrix(cplx k, double tol = 1e-12) {
    const cplx a = 3.0 * k * k + 2.0;
    const cplx b = 3.0 * k * k + 8.0;
    if (std::abs(a) < tol) throw SingularSpectralPoint("e_matrix: 3k^2+2 = 0 at this k; n(k) blows up");
    if (std::abs(b) < tol) throw SingularSpectralPoint("e_matrix: 3k^2+8 = 0 at this k; n(k) blows up");
    EMatrix m;
    m.n = 1.0 / (a * std::sqrt(b));
    const auto P = p_matrix(k);
    m.E = m.n * P;
    m.det_p = P.determinant();
    m.det_e = m.E.determinant();
    return m;
}

// ---------------------------------------------------------------------------
// Phi = E e^{Mx} E^{-1} = e^{Tx}

/// sinh(u)/u, entire; series below |u| < 1e-4.
inline cplx sinhc(cplx u) {
    if (std::abs(u) < 1e-4) {
        const cplx u2 = u * u;
        return 1.0 + u2 / 6.0 + u2 * u2 / 120.0;
    }
    return std::sinh(u) / u;
}

struct PhiEntries {
    cplx phi12;
    cplx phi22;
};

/// Phi_12, Phi_22 with u = (x/2) sqrt(3k^2+8); cosh and sinhc are even in u, so the branch is immaterial.
inline PhiEntries phi_entries(cplx k, double x) {
    const cplx I(0.0, 1.0);
    const cplx u = 0.5 * x * std::sqrt(3.0 * k * k + 8.0);
    const cplx a = 3.0 * k * k + 2.0;
    const cplx damp = std::exp(-0.5 * k * x * I);
    const cplx grow = std::exp(I * k * x);
    const cplx ch = std::cosh(u);
    const cplx sc = x * sinhc(u);
    PhiEntries p;
    p.phi12 = (k * I / a) * damp * ch + ((3.0 * k * k + 4.0) / (6.0 * k * k + 4.0)) * damp * sc - (k * I / a) * grow;
    p.phi22 = ((2.0 * k * k + 2.0) / a) * damp * ch + (k * I / a) * damp * sc + (k * k / a) * grow;
    return p;
}

struct ProbeRow {
    double eps = 0.0;
    PhiEntries value;
    double step = 0.0;  // max |Phi(eps) - Phi(previous eps)|; 0 for the first row
};

/// Phi at k*(1+eps) for each eps; `step` shrinking like eps shows the limit exists.
inline std::vector<ProbeRow> probe(const DistinguishedPoint& pt, double x, const std::vector<double>& eps) {
    const cplx k0 = pt.k.to_complex();
    std::vector<ProbeRow> rows;
    for (double e : eps) {
        ProbeRow r{e, phi_entries(k0 * (1.0 + e), x), 0.0};
        if (!rows.empty())
            r.step = std::max(std::abs(r.value.phi12 - rows.back().value.phi12),
                              std::abs(r.value.phi22 - rows.back().value.phi22));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace lumpcas
