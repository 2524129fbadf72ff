#pragma once

// Shared generators and the shift-variable Hirota oracle.

#include "lumpcas/poly.hpp"

#include <array>
#include <map>
#include <random>

namespace testsupport {

using lumpcas::Basis;
using lumpcas::ExactPoly;
using lumpcas::GaussianRational;
using lumpcas::Rational;

inline Rational small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    return lumpcas::make_rational(num(rng), den(rng));
}

inline GaussianRational small_coeff(std::mt19937_64& rng, bool real_only) {
    if (real_only) return GaussianRational(small_rational(rng));
    return {small_rational(rng), small_rational(rng)};
}

/// Up to `terms` random terms of total degree <= max_deg.
inline ExactPoly random_poly(std::mt19937_64& rng, Basis basis, int max_deg, int terms, bool real_only = false) {
    std::uniform_int_distribution<int> e(0, max_deg);
    ExactPoly f(basis);
    for (int t = 0; t < terms; ++t) {
        const int i = e(rng);
        const int j = std::uniform_int_distribution<int>(0, max_deg - i)(rng);
        f.add_term(i, j, small_coeff(rng, real_only));
    }
    return f;
}

// Polynomials in (x, y, h1, h2).
using Exp4 = std::array<int, 4>;
using Poly4 = std::map<Exp4, GaussianRational>;

inline Poly4 mul4(const Poly4& a, const Poly4& b) {
    Poly4 out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exp4 e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
            out[e] += ca * cb;
        }
    return out;
}

inline Poly4 pow4(const Poly4& a, int n) {
    Poly4 acc{{Exp4{0, 0, 0, 0}, GaussianRational(1)}};
    for (int k = 0; k < n; ++k) acc = mul4(acc, a);
    return acc;
}

/// f(x + s h1, y + s h2) for s = +1 or -1.
inline Poly4 shifted(const ExactPoly& f, int s) {
    const Poly4 u{{Exp4{1, 0, 0, 0}, GaussianRational(1)}, {Exp4{0, 0, 1, 0}, GaussianRational(s)}};
    const Poly4 v{{Exp4{0, 1, 0, 0}, GaussianRational(1)}, {Exp4{0, 0, 0, 1}, GaussianRational(s)}};
    Poly4 out;
    for (const auto& [m, c] : f.terms()) {
        for (const auto& [e, w] : mul4(pow4(u, m.i), pow4(v, m.j))) out[e] += c * w;
    }
    return out;
}

/// a! b! [h1^a h2^b] f(x+h1, y+h2) g(x-h1, y-h2).
inline ExactPoly hirota_oracle(int a, int b, const ExactPoly& f, const ExactPoly& g) {
    const auto prod = mul4(shifted(f, 1), shifted(g, -1));
    lumpcas::Integer fact = 1;
    for (int k = 2; k <= a; ++k) fact *= k;
    for (int k = 2; k <= b; ++k) fact *= k;
    ExactPoly out(f.basis());
    for (const auto& [e, c] : prod)
        if (e[2] == a && e[3] == b) out.add_term(e[0], e[1], c * GaussianRational(Rational(fact)));
    return out;
}

}  // namespace testsupport
