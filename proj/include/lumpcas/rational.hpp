#pragma once

/**
 * @file rational.hpp
 * @brief Arbitrary-precision rationals and Gaussian rationals.
 *
 * Rational is GMP's mpq_class. Values are always kept canonical (lowest
 * terms, positive denominator), so equality is structural.
 */

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace lumpcas {

using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in canonical form.
inline Rational make_rational(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

/// Parses "p", "-p", "p/q" (whitespace-free). Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::string s(text);
    if (s.front() == '+') s.erase(0, 1);
    auto valid_int = [](std::string_view t) {
        if (t.empty()) return false;
        std::size_t k = (t.front() == '-') ? 1 : 0;
        if (k == t.size()) return false;
        for (; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9') return false;
        return true;
    };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-')
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

/// Canonical "p/q" text, or "p" for integers; the sign sits on the numerator.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// re + i*im with exact rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT(implicit)
    GaussianRational(const Rational& re) : re_(re) {}  // NOLINT(implicit)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, Rational(-im_)}; }
    Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (im_ == 0 && o.im_ == 0) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
        if (o.im_ == 0) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        const Rational n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re_), Rational(-a.im_)}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// "p/q" when real, otherwise "a+bi" style text for diagnostics.
    std::string str() const {
        if (im_ == 0) return to_string(re_);
        std::string out = re_ == 0 ? "" : to_string(re_);
        if (im_ > 0 && !out.empty()) out += "+";
        return out + to_string(im_) + "i";
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

private:
    Rational re_{0};
    Rational im_{0};
};

/// Integer power of a Gaussian rational (exponent >= 0).
inline GaussianRational pow(GaussianRational base, unsigned e) {
    GaussianRational acc(1);
    while (e) {
        if (e & 1u) acc *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return acc;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace lumpcas
