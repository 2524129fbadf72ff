#pragma once

/**
 * @file poly.hpp
 * @brief Sparse bivariate polynomials with Gaussian-rational coefficients.
 *
 * A polynomial lives in one of two bases: (x, y) or (z, zbar) with
 * z = x + iy. The basis is a tag carried by every value and checked by every
 * binary operation; mixing bases throws BasisMismatch. Conversion between
 * the bases is exact.
 *
 * Terms are stored in an ordered map keyed by the exponent pair. Zero
 * coefficients are never stored.
 */

#include "lumpcas/rational.hpp"

#include <algorithm>
#include <compare>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lumpcas {

enum class Basis { XY, ZZbar };

inline const char* basis_name(Basis b) { return b == Basis::XY ? "xy" : "zzbar"; }

inline Basis parse_basis(const std::string& s) {
    if (s == "xy") return Basis::XY;
    if (s == "zzbar") return Basis::ZZbar;
    throw std::invalid_argument("unknown basis '" + s + "' (expected \"xy\" or \"zzbar\")");
}

/// First axis is x (resp. z), second is y (resp. zbar).
enum class Axis { First, Second };

struct Monomial {
    int i = 0;
    int j = 0;
    int degree() const { return i + j; }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

class BasisMismatch : public std::invalid_argument {
public:
    BasisMismatch(Basis a, Basis b, const std::string& op)
        : std::invalid_argument(op + ": basis mismatch (" + basis_name(a) + " vs " + basis_name(b) +
                                "); convert with to_zzbar/to_xy first") {}
};

class ExactPoly;

/// Thrown by divide_exact when the divisor does not divide the dividend.
class NonExactDivision : public std::domain_error {
public:
    NonExactDivision(const std::string& what, std::vector<std::pair<Monomial, GaussianRational>> rem)
        : std::domain_error(what), remainder_(std::move(rem)) {}
    const std::vector<std::pair<Monomial, GaussianRational>>& remainder() const { return remainder_; }

private:
    std::vector<std::pair<Monomial, GaussianRational>> remainder_;
};

class ExactPoly {
public:
    using TermMap = std::map<Monomial, GaussianRational>;

    explicit ExactPoly(Basis basis = Basis::XY) : basis_(basis) {}

    static ExactPoly constant(Basis basis, const GaussianRational& c) { return monomial(basis, 0, 0, c); }

    static ExactPoly monomial(Basis basis, int i, int j, const GaussianRational& c = GaussianRational(1)) {
        if (i < 0 || j < 0) throw std::invalid_argument("negative exponent in monomial");
        ExactPoly p(basis);
        p.add_term(i, j, c);
        return p;
    }

    /// The first (x or z) and second (y or zbar) coordinate functions.
    static ExactPoly var1(Basis basis) { return monomial(basis, 1, 0); }
    static ExactPoly var2(Basis basis) { return monomial(basis, 0, 1); }

    Basis basis() const { return basis_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    int degree_in(Axis axis) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, axis == Axis::First ? m.i : m.j);
        return d;
    }

    GaussianRational coeff(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    /// Accumulates c into the (i, j) coefficient, pruning an exact zero.
    void add_term(int i, int j, const GaussianRational& c) {
        if (c.is_zero()) return;
        if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
        auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Homogeneous component of the given total degree.
    ExactPoly homogeneous_part(int deg) const {
        ExactPoly out(basis_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == deg) out.terms_.emplace(m, c);
        return out;
    }

    bool has_real_coefficients() const {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
    }

    ExactPoly& operator+=(const ExactPoly& o) {
        check_basis(o, "add");
        for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, c);
        return *this;
    }
    ExactPoly& operator-=(const ExactPoly& o) {
        check_basis(o, "sub");
        for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, -c);
        return *this;
    }
    ExactPoly& operator*=(const GaussianRational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
    friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
    friend ExactPoly operator-(ExactPoly a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend ExactPoly operator*(ExactPoly a, const GaussianRational& s) { return a *= s; }
    friend ExactPoly operator*(const GaussianRational& s, ExactPoly a) { return a *= s; }

    friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
        a.check_basis(b, "mul");
        ExactPoly out(a.basis_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
        return out;
    }
    ExactPoly& operator*=(const ExactPoly& o) { return *this = *this * o; }

    /// Adds or subtracts a scalar constant (shorthand for catalog construction).
    friend ExactPoly operator+(ExactPoly a, const GaussianRational& s) {
        a.add_term(0, 0, s);
        return a;
    }
    friend ExactPoly operator-(ExactPoly a, const GaussianRational& s) {
        a.add_term(0, 0, -s);
        return a;
    }

    friend bool operator==(const ExactPoly& a, const ExactPoly& b) {
        return a.basis_ == b.basis_ && a.terms_ == b.terms_;
    }

    void check_basis(const ExactPoly& o, const char* op) const {
        if (basis_ != o.basis_) throw BasisMismatch(basis_, o.basis_, op);
    }

private:
    Basis basis_;
    TermMap terms_;
};

inline ExactPoly add(const ExactPoly& f, const ExactPoly& g) { return f + g; }
inline ExactPoly mul(const ExactPoly& f, const ExactPoly& g) { return f * g; }

inline ExactPoly pow(const ExactPoly& base, unsigned e) {
    ExactPoly acc = ExactPoly::constant(base.basis(), 1);
    ExactPoly b = base;
    while (e) {
        if (e & 1u) acc = acc * b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return acc;
}

/// Partial derivative of the given order along one of the basis's own axes.
inline ExactPoly diff(const ExactPoly& f, Axis axis, int order = 1) {
    if (order < 0) throw std::invalid_argument("negative derivative order");
    if (order == 0) return f;
    ExactPoly out(f.basis());
    for (const auto& [m, c] : f.terms()) {
        const int e = axis == Axis::First ? m.i : m.j;
        if (e < order) continue;
        Integer ff = 1;
        for (int t = 0; t < order; ++t) ff *= e - t;
        if (axis == Axis::First)
            out.add_term(m.i - order, m.j, c * GaussianRational(Rational(ff)));
        else
            out.add_term(m.i, m.j - order, c * GaussianRational(Rational(ff)));
    }
    return out;
}

/// Mixed partial derivative d1^a d2^b.
inline ExactPoly diff(const ExactPoly& f, int a, int b) { return diff(diff(f, Axis::First, a), Axis::Second, b); }

namespace detail {

// Expands sum c_{ij} u^i v^j where u, v are given polynomials in the target basis.
inline ExactPoly substitute_linear(const ExactPoly& f, Basis target, const ExactPoly& u, const ExactPoly& v) {
    std::vector<ExactPoly> upow{ExactPoly::constant(target, 1)};
    std::vector<ExactPoly> vpow{ExactPoly::constant(target, 1)};
    ExactPoly out(target);
    for (const auto& [m, c] : f.terms()) {
        while (static_cast<int>(upow.size()) <= m.i) upow.push_back(upow.back() * u);
        while (static_cast<int>(vpow.size()) <= m.j) vpow.push_back(vpow.back() * v);
        out += (upow[m.i] * vpow[m.j]) * c;
    }
    return out;
}

}  // namespace detail

/// x = (z + zbar)/2, y = (z - zbar)/(2i).
inline ExactPoly to_zzbar(const ExactPoly& f) {
    if (f.basis() == Basis::ZZbar) throw std::invalid_argument("to_zzbar: input already in zzbar basis");
    const Rational half(1, 2);
    const auto z = ExactPoly::var1(Basis::ZZbar);
    const auto zb = ExactPoly::var2(Basis::ZZbar);
    const auto x = (z + zb) * GaussianRational(half);
    const auto y = (z - zb) * GaussianRational(Rational(0), Rational(-half));  // 1/(2i) = -i/2
    return detail::substitute_linear(f, Basis::ZZbar, x, y);
}

/// z = x + iy, zbar = x - iy.
inline ExactPoly to_xy(const ExactPoly& g) {
    if (g.basis() == Basis::XY) throw std::invalid_argument("to_xy: input already in xy basis");
    const auto x = ExactPoly::var1(Basis::XY);
    const auto y = ExactPoly::var2(Basis::XY);
    const auto z = x + y * GaussianRational::i();
    const auto zb = x - y * GaussianRational::i();
    return detail::substitute_linear(g, Basis::XY, z, zb);
}

/// Exact quotient f / g. Throws NonExactDivision (carrying the remainder) if g does not divide f.
inline ExactPoly divide_exact(const ExactPoly& f, const ExactPoly& g) {
    f.check_basis(g, "divide_exact");
    if (g.is_zero()) throw std::domain_error("divide_exact: division by the zero polynomial");
    // Lexicographic order, first axis dominant: the map's last entry leads.
    const auto& [lead_m, lead_c] = *g.terms().rbegin();
    ExactPoly work = f;
    ExactPoly quotient(f.basis());
    std::vector<std::pair<Monomial, GaussianRational>> remainder;
    while (!work.is_zero()) {
        const auto [m, c] = *work.terms().rbegin();
        if (m.i >= lead_m.i && m.j >= lead_m.j) {
            const int di = m.i - lead_m.i;
            const int dj = m.j - lead_m.j;
            const GaussianRational t = c / lead_c;
            quotient.add_term(di, dj, t);
            for (const auto& [gm, gc] : g.terms()) work.add_term(gm.i + di, gm.j + dj, -(t * gc));
        } else {
            remainder.emplace_back(m, c);
            work.add_term(m.i, m.j, -c);
        }
    }
    if (!remainder.empty()) {
        std::string msg = "divide_exact: divisor does not divide dividend; remainder has " +
                          std::to_string(remainder.size()) + " term(s), leading " + remainder.front().second.str() +
                          "*[" + std::to_string(remainder.front().first.i) + "," +
                          std::to_string(remainder.front().first.j) + "]";
        throw NonExactDivision(msg, std::move(remainder));
    }
    return quotient;
}

/// Value of f after replacing x^2 -> x2 and y^2 -> y2. Every exponent must be even.
inline GaussianRational substitute_squares(const ExactPoly& f, const GaussianRational& x2, const GaussianRational& y2) {
    if (f.basis() != Basis::XY) throw std::invalid_argument("substitute_squares: requires xy basis");
    GaussianRational sum;
    for (const auto& [m, c] : f.terms()) {
        if (m.i % 2 != 0 || m.j % 2 != 0)
            throw std::domain_error("substitute_squares: odd exponent at x^" + std::to_string(m.i) + " y^" +
                                    std::to_string(m.j));
        sum += c * pow(x2, static_cast<unsigned>(m.i / 2)) * pow(y2, static_cast<unsigned>(m.j / 2));
    }
    return sum;
}

/// True when the zzbar coefficients satisfy c(a,b) = conj(c(b,a)).
inline bool is_conjugation_symmetric(const ExactPoly& g) {
    for (const auto& [m, c] : g.terms())
        if (!(g.coeff(m.j, m.i) == c.conj())) return false;
    return true;
}

/// Floating-point evaluation at (u, v) in the polynomial's own coordinates.
inline std::complex<double> evaluate(const ExactPoly& f, std::complex<double> u, std::complex<double> v) {
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [m, c] : f.terms()) sum += c.to_complex() * std::pow(u, m.i) * std::pow(v, m.j);
    return sum;
}

inline std::string to_string(const ExactPoly& f) {
    if (f.is_zero()) return "0";
    const bool xy = f.basis() == Basis::XY;
    const char* v1 = xy ? "x" : "z";
    const char* v2 = xy ? "y" : "zb";
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.is_real() ? c.str() : "(" + c.str() + ")";
        if (!out.empty()) out += (cs.front() == '-') ? " " : " +";
        out += cs;
        if (m.i) out += std::string("*") + v1 + (m.i > 1 ? "^" + std::to_string(m.i) : "");
        if (m.j) out += std::string("*") + v2 + (m.j > 1 ? "^" + std::to_string(m.j) : "");
    }
    return out;
}

}  // namespace lumpcas
