#pragma once

/**
 * @file hirota.hpp
 * @brief Hirota bilinear derivatives on exact polynomials.
 *
 * D1^a D2^b f.g = sum_{p<=a, q<=b} (-1)^{p+q} C(a,p) C(b,q)
 *                 (d1^{a-p} d2^{b-q} f)(d1^p d2^q g)
 *
 * evaluated in the polynomial's own basis, so in the zzbar basis D1 = D_z
 * and D2 = D_zbar. A BilinearForm is a weighted sum of such operators applied
 * to tau.tau.
 */

#include "lumpcas/poly.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lumpcas {

struct BilinearTerm {
    GaussianRational weight;
    int a = 0;  // order along the first axis
    int b = 0;  // order along the second axis
};

class BilinearForm {
public:
    BilinearForm(Basis basis, std::vector<BilinearTerm> terms, std::string name = "custom")
        : basis_(basis), name_(std::move(name)) {
        for (auto& t : terms) {
            if (t.a < 0 || t.b < 0) throw std::invalid_argument("bilinear term with negative order");
            if ((t.a + t.b) % 2 != 0)
                throw std::invalid_argument("bilinear term D^" + std::to_string(t.a) + ",^" + std::to_string(t.b) +
                                            " has odd total order; it annihilates tau.tau");
            if (t.weight.is_zero()) throw std::invalid_argument("bilinear term with zero weight");
            terms_.push_back(std::move(t));
        }
    }

    /// D_x^4 - D_x^2 - D_y^2.
    static BilinearForm standard() {
        return {Basis::XY, {{1, 4, 0}, {-1, 2, 0}, {-1, 0, 2}}, "standard"};
    }
    /// D_x^2 + D_y^2 - D_x^4.
    static BilinearForm even_section() {
        return {Basis::XY, {{1, 2, 0}, {1, 0, 2}, {-1, 4, 0}}, "even-section"};
    }
    /// D_x^4 - 3 D_x^2 - 3 D_y^2, the form annihilating the Yang degree-6 family.
    static BilinearForm yang() {
        return {Basis::XY, {{1, 4, 0}, {-3, 2, 0}, {-3, 0, 2}}, "yang"};
    }

    Basis basis() const { return basis_; }
    const std::vector<BilinearTerm>& terms() const { return terms_; }
    const std::string& name() const { return name_; }

    std::string describe() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            const std::string w = t.weight.str();
            os << (first ? "" : (w.front() == '-' ? " " : " +")) << w;
            const char* v1 = basis_ == Basis::XY ? "x" : "z";
            const char* v2 = basis_ == Basis::XY ? "y" : "zb";
            if (t.a) os << "*D" << v1 << "^" << t.a;
            if (t.b) os << "*D" << v2 << "^" << t.b;
            first = false;
        }
        return os.str();
    }

private:
    Basis basis_;
    std::vector<BilinearTerm> terms_;
    std::string name_;
};

/// Parses "w:a:b,w:a:b,..." with rational weights, e.g. "1:4:0,-1:2:0,-1:0:2".
inline BilinearForm parse_custom_form(const std::string& spec, Basis basis = Basis::XY) {
    std::vector<BilinearTerm> terms;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto c1 = item.find(':');
        const auto c2 = item.find(':', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::invalid_argument("custom form term '" + item + "' is not weight:a:b");
        try {
            terms.push_back({GaussianRational(parse_rational(item.substr(0, c1))),
                             std::stoi(item.substr(c1 + 1, c2 - c1 - 1)), std::stoi(item.substr(c2 + 1))});
        } catch (const std::logic_error& e) {
            throw std::invalid_argument("custom form term '" + item + "': " + e.what());
        }
    }
    if (terms.empty()) throw std::invalid_argument("custom form has no terms");
    return {basis, std::move(terms), "custom"};
}

/// Named presets: standard, even-section, yang; anything containing ':' is parsed as a custom list.
inline BilinearForm form_preset(const std::string& name) {
    if (name == "standard") return BilinearForm::standard();
    if (name == "even-section") return BilinearForm::even_section();
    if (name == "yang") return BilinearForm::yang();
    if (name.find(':') != std::string::npos) return parse_custom_form(name);
    throw std::invalid_argument("unknown bilinear form '" + name + "' (standard, even-section, yang, or w:a:b,...)");
}

/// Rewrites an xy form in the zzbar basis: D_x = D_z + D_zb, D_y = i(D_z - D_zb).
inline BilinearForm to_zzbar(const BilinearForm& form) {
    if (form.basis() == Basis::ZZbar) return form;
    // Hirota operators compose like ordinary derivatives, so expand as polynomials in (D_z, D_zb).
    std::map<std::pair<int, int>, GaussianRational> acc;
    for (const auto& t : form.terms()) {
        for (int r = 0; r <= t.a; ++r) {
            for (int s = 0; s <= t.b; ++s) {
                // (D_z + D_zb)^a -> C(a,r) D_z^r D_zb^{a-r}
                // (i D_z - i D_zb)^b -> C(b,s) i^b (-1)^{b-s} D_z^s D_zb^{b-s}
                GaussianRational w = t.weight * GaussianRational(Rational(binomial(t.a, r) * binomial(t.b, s)));
                w *= pow(GaussianRational::i(), static_cast<unsigned>(t.b));
                if ((t.b - s) % 2) w = -w;
                acc[{r + s, (t.a - r) + (t.b - s)}] += w;
            }
        }
    }
    std::vector<BilinearTerm> terms;
    for (const auto& [ord, w] : acc)
        if (!w.is_zero()) terms.push_back({w, ord.first, ord.second});
    return {Basis::ZZbar, std::move(terms), form.name()};
}

/// Memoized mixed partials of one polynomial.
class DerivativeCache {
public:
    explicit DerivativeCache(const ExactPoly& f) : f_(f) {}

    const ExactPoly& get(int a, int b) {
        auto it = cache_.find({a, b});
        if (it != cache_.end()) return it->second;
        ExactPoly d = (a == 0 && b == 0) ? f_
                      : a > 0            ? diff(get(a - 1, b), Axis::First, 1)
                                         : diff(get(a, b - 1), Axis::Second, 1);
        return cache_.emplace(std::make_pair(a, b), std::move(d)).first->second;
    }

private:
    ExactPoly f_;
    std::map<std::pair<int, int>, ExactPoly> cache_;
};

namespace detail {

inline ExactPoly hirota_cached(int a, int b, DerivativeCache& fd, DerivativeCache& gd, Basis basis) {
    ExactPoly out(basis);
    for (int p = 0; p <= a; ++p) {
        for (int q = 0; q <= b; ++q) {
            const auto& df = fd.get(a - p, b - q);
            const auto& dg = gd.get(p, q);
            if (df.is_zero() || dg.is_zero()) continue;
            Integer c = binomial(a, p) * binomial(b, q);
            if ((p + q) % 2) c = -c;
            out += (df * dg) * GaussianRational(Rational(c));
        }
    }
    return out;
}

}  // namespace detail

/// D1^a D2^b f.g computed by the Leibniz sum.
inline ExactPoly hirota_d(int a, int b, const ExactPoly& f, const ExactPoly& g) {
    f.check_basis(g, "hirota_d");
    if (a < 0 || b < 0) throw std::invalid_argument("hirota_d: negative order");
    DerivativeCache fd(f);
    DerivativeCache gd(g);
    return detail::hirota_cached(a, b, fd, gd, f.basis());
}

/// sum weight * D1^a D2^b tau.tau; the zero polynomial means tau solves the form.
inline ExactPoly residual(const BilinearForm& form, const ExactPoly& tau) {
    if (form.basis() != tau.basis()) throw BasisMismatch(form.basis(), tau.basis(), "residual");
    DerivativeCache cache(tau);
    ExactPoly out(tau.basis());
    for (const auto& t : form.terms()) out += detail::hirota_cached(t.a, t.b, cache, cache, tau.basis()) * t.weight;
    return out;
}

/// e (e-1) ... (e-k+1); exponents may be negative (formal Laurent derivative).
inline Integer falling_factorial(long e, int k) {
    Integer r = 1;
    for (int t = 0; t < k; ++t) r *= e - t;
    return r;
}

/**
 * Coefficient of z^{a+c-p} zb^{b+d-q} in D_z^p D_zb^q (z^a zb^b).(z^c zb^d).
 *
 * Exponents are signed: the recursions in classifier.hpp need the coefficient
 * of a monomial whose zbar exponent has gone negative. For non-negative
 * exponents this equals the polynomial Leibniz sum (out-of-range terms vanish
 * through the falling factorials).
 */
inline Rational hirota_monomial_zz(long a, long b, long c, long d, int p, int q) {
    Integer sum = 0;
    for (int r = 0; r <= p; ++r) {
        const Integer zpart = binomial(p, r) * falling_factorial(a, p - r) * falling_factorial(c, r);
        if (zpart == 0) continue;
        for (int s = 0; s <= q; ++s) {
            Integer term = zpart * binomial(q, s) * falling_factorial(b, q - s) * falling_factorial(d, s);
            if ((r + s) % 2) term = -term;
            sum += term;
        }
    }
    return Rational(sum);
}

/// Coefficient of z^A zb^B in D_x^order (z^a zb^b).(z^c zb^d), using D_x = D_z + D_zb.
inline Rational hirota_dx_monomial_zz(int order, long a, long b, long c, long d, long A, long B) {
    const long r = a + c - A;  // number of D_z factors
    const long s = b + d - B;  // number of D_zb factors
    if (r < 0 || s < 0 || r + s != order) return Rational(0);
    return Rational(binomial(order, r)) * hirota_monomial_zz(a, b, c, d, static_cast<int>(r), static_cast<int>(s));
}

}  // namespace lumpcas
