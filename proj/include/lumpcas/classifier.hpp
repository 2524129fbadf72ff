#pragma once

/**
 * @file classifier.hpp
 * @brief Degree obstructions and uniqueness certificates for even tau-functions.
 *
 * An even tau of degree 2n is expanded in homogeneous layers T_{n,j} of
 * degree 2n-2j with T_{n,0} = (x^2+y^2)^n. Three exact scalar routes decide
 * whether the layers can close up into a polynomial:
 *
 *  - J route: the leading coefficients a_m of T_{n,m} along
 *    g_m = (x^2+y^2)^{n-3m} x^{2m} y^{2m} obey a quadratic recursion through
 *    the constants d_{i,j}, p_{i,j}; J_n is the residue one step past
 *    floor(n/3).
 *  - sigma route: the lowest-zbar coefficient sigma_j of T_{n,j} (monomial
 *    z^{n+j} zbar^{n-3j}); sigma at j0 = floor(n/3)+1 must vanish.
 *  - gamma route: the chain beta_j seeded by the kernel z^n zbar^{n-2q};
 *    gamma_q = beta at jbar = floor((n-2q)/3)+1. All gamma_q != 0 certifies
 *    that the even solution is unique.
 *
 * Everything is exact. Each n is independent; scan() farms n out to workers.
 */

#include "lumpcas/hirota.hpp"
#include "lumpcas/poly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lumpcas {

/// How sums over i+j=m in the a_m / J_n recursion count pairs.
enum class PairConvention {
    Ordered,    // (i,j) and (j,i) both counted; reproduces the triangular law
    Unordered,  // {i,j} once
};

inline PairConvention parse_pair_convention(const std::string& s) {
    if (s == "ordered") return PairConvention::Ordered;
    if (s == "unordered") return PairConvention::Unordered;
    throw std::invalid_argument("unknown pair convention '" + s + "' (ordered|unordered)");
}

inline bool is_triangular(long n) {
    if (n < 0) return false;
    const long disc = 8 * n + 1;
    long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(disc))));
    while (r * r > disc) --r;
    while ((r + 1) * (r + 1) <= disc) ++r;
    return r * r == disc;
}

// ---------------------------------------------------------------------------
// d_{i,j}, p_{i,j}

/// -12 (i-j)^2 (-1)^{i+j}
inline std::int64_t d_ij(int i, int j) {
    const std::int64_t diff = i - j;
    const std::int64_t v = -12 * diff * diff;
    return ((i + j) % 2) ? -v : v;
}

/// The quartic in (i, j, n) times (-1)^{i+j}. Symmetric in (i, j).
inline std::int64_t p_ij(int n_, int i_, int j_) {
    const std::int64_t n = n_, i = i_, j = j_;
    const std::int64_t v = 1296 * i * i * i * i - 5184 * i * i * i * j + 7776 * i * i * j * j -
                           5184 * i * j * j * j + 1296 * j * j * j * j + 2592 * i * i * i - 2592 * i * i * j -
                           1728 * i * i * n - 2592 * i * j * j + 3456 * i * j * n + 2592 * j * j * j -
                           1728 * j * j * n + 1584 * i * i - 1440 * i * j - 576 * i * n + 1584 * j * j -
                           576 * j * n + 192 * n * n + 288 * i + 288 * j - 192 * n;
    return ((i + j) % 2) ? -v : v;
}

/// g_j = (x^2+y^2)^{n-3j} x^{2j} y^{2j}.
inline ExactPoly g_layer(int n, int j) {
    if (j < 0 || n - 3 * j < 0) throw std::domain_error("g_j needs 0 <= 3j <= n (n=" + std::to_string(n) + ", j=" + std::to_string(j) + ")");
    const auto x = ExactPoly::var1(Basis::XY);
    const auto y = ExactPoly::var2(Basis::XY);
    return pow(x * x + y * y, n - 3 * j) * ExactPoly::monomial(Basis::XY, 2 * j, 2 * j);
}

namespace detail {

inline Rational quotient_at_square_point(const ExactPoly& num, int exponent) {
    const auto x = ExactPoly::var1(Basis::XY);
    const auto y = ExactPoly::var2(Basis::XY);
    const auto q = divide_exact(num, pow(x * x + y * y, static_cast<unsigned>(exponent)));
    const auto v = substitute_squares(q, GaussianRational(-1), GaussianRational(1));
    if (!v.is_real()) throw std::logic_error("definitional constant came out non-real");
    return v.re();
}

inline void check_layers(int n, int i, int j) {
    if (n < 0 || i < 0 || j < 0 || n - 3 * i < 0 || n - 3 * j < 0)
        throw std::domain_error("layers g_i, g_j undefined for (n,i,j)=(" + std::to_string(n) + "," +
                                std::to_string(i) + "," + std::to_string(j) + ")");
}

}  // namespace detail

/// ((D_x^2 + D_y^2) g_i.g_j) / (x^2+y^2)^{2n-3i-3j-1} at x^2=-1, y^2=1.
inline Rational d_ij_definitional(int n, int i, int j) {
    detail::check_layers(n, i, j);
    const int e = 2 * n - 3 * i - 3 * j - 1;
    if (e < 0) throw std::domain_error("d_ij_definitional: 2n-3i-3j-1 < 0");
    const auto gi = g_layer(n, i);
    const auto gj = g_layer(n, j);
    return detail::quotient_at_square_point(hirota_d(2, 0, gi, gj) + hirota_d(0, 2, gi, gj), e);
}

/// (D_x^4 g_i.g_j) / (x^2+y^2)^{2n-3i-3j-4} at x^2=-1, y^2=1.
inline Rational p_ij_definitional(int n, int i, int j) {
    detail::check_layers(n, i, j);
    const int e = 2 * n - 3 * i - 3 * j - 4;
    if (e < 0) throw std::domain_error("p_ij_definitional: 2n-3i-3j-4 < 0");
    return detail::quotient_at_square_point(hirota_d(4, 0, g_layer(n, i), g_layer(n, j)), e);
}

// ---------------------------------------------------------------------------
// a_m and J_n

namespace detail {

// Sum of f(i, j) over i + j = total, 0 <= i, j <= limit, pairs counted per convention.
template <class F>
Rational pair_sum(int total, int limit, PairConvention conv, F&& f) {
    Rational s = 0;
    for (int i = 0; i <= total; ++i) {
        const int j = total - i;
        if (i > limit || j > limit) continue;
        if (conv == PairConvention::Unordered && i > j) continue;
        s += f(i, j);
    }
    return s;
}

}  // namespace detail

/// a_0 = 1, then a_m from sum_{i+j=m} a_i a_j d_{ij} = sum_{i+j=m-1} a_i a_j p_{ij}.
inline std::vector<Rational> a_seq(int n, int m_max, PairConvention conv = PairConvention::Ordered) {
    if (m_max > n / 3) throw std::domain_error("a_seq: m_max exceeds floor(n/3)");
    std::vector<Rational> a{Rational(1)};
    for (int m = 1; m <= m_max; ++m) {
        // pairs containing index m (the unknown) are excluded by limit m-1
        const Rational known = detail::pair_sum(m, m - 1, conv, [&](int i, int j) {
            return Rational(a[i] * a[j] * d_ij(i, j));
        });
        const Rational rhs = detail::pair_sum(m - 1, m - 1, conv, [&](int i, int j) {
            return Rational(a[i] * a[j] * p_ij(n, i, j));
        });
        const std::int64_t coef = (conv == PairConvention::Ordered ? 2 : 1) * d_ij(0, m);
        if (coef == 0) throw std::domain_error("a_seq: vanishing coefficient at n=" + std::to_string(n) + ", m=" + std::to_string(m));
        a.push_back(Rational((rhs - known) / coef));
    }
    return a;
}

/// J_n from a precomputed a_0..a_{floor(n/3)}.
inline Rational J_n(int n, const std::vector<Rational>& a, PairConvention conv = PairConvention::Ordered) {
    const int M = n / 3;
    if (static_cast<int>(a.size()) < M + 1) throw std::invalid_argument("J_n: a_seq too short");
    const Rational dsum = detail::pair_sum(M + 1, M, conv, [&](int i, int j) {
        return Rational(a[i] * a[j] * d_ij(i, j));
    });
    const Rational psum = detail::pair_sum(M, M, conv, [&](int i, int j) {
        return Rational(a[i] * a[j] * p_ij(n, i, j));
    });
    return dsum - psum;
}

inline Rational J_n(int n, PairConvention conv = PairConvention::Ordered) {
    return J_n(n, a_seq(n, n / 3, conv), conv);
}

// ---------------------------------------------------------------------------
// sigma and beta chains (zzbar basis, scalar coefficient extraction)

/// sigma_0..sigma_{floor(n/3)+1}; the last entry is the existence obstruction.
inline std::vector<Rational> sigma_seq(int n) {
    if (n < 1) throw std::domain_error("sigma_seq: n must be >= 1");
    const int j0 = n / 3 + 1;
    std::vector<Rational> s{Rational(1)};
    for (int j = 1; j <= j0; ++j) {
        const long A = 2L * n + j - 1;
        const long B = 2L * n - 3L * j - 1;
        Rational rhs = 0;
        for (int k = 0; k <= j - 1; ++k) {
            const int m = j - 1 - k;
            rhs += s[k] * s[m] * hirota_dx_monomial_zz(4, n + k, n - 3L * k, n + m, n - 3L * m, A, B);
        }
        for (int k = 1; k <= j - 1; ++k) {
            const int m = j - k;
            rhs -= 4 * s[k] * s[m] * hirota_monomial_zz(n + k, n - 3L * k, n + m, n - 3L * m, 1, 1);
        }
        const Rational eig = hirota_monomial_zz(n, n, n + j, n - 3L * j, 1, 1);
        if (eig == 0) throw std::domain_error("sigma_seq: zero eigenfactor at n=" + std::to_string(n) + ", j=" + std::to_string(j));
        s.push_back(Rational(rhs / (8 * eig)));
    }
    return s;
}

inline Rational sigma_obstruction(int n) { return sigma_seq(n).back(); }

/// floor((n-2q)/3) + 1
inline int gamma_index(int n, int q) { return (n - 2 * q) / 3 + 1; }

/// beta_0..beta_{jbar} for the kernel z^n zbar^{n-2q}; `sigma` must reach index jbar-1.
inline std::vector<Rational> beta_seq(int n, int q, const std::vector<Rational>& sigma) {
    if (q < 1 || q > n / 2) throw std::domain_error("beta_seq: q must be in 1..floor(n/2)");
    const int jbar = gamma_index(n, q);
    if (static_cast<int>(sigma.size()) < jbar) throw std::invalid_argument("beta_seq: sigma sequence too short");
    std::vector<Rational> b{Rational(1)};
    const long base = static_cast<long>(n) - 2L * q;
    for (int j = 1; j <= jbar; ++j) {
        const long A = 2L * n + j - 1;
        const long B = n + base - 3L * j - 1;
        Rational rhs = 0;
        for (int k = 0; k <= j - 1; ++k) {
            const int m = j - 1 - k;
            rhs += sigma[k] * b[m] * hirota_dx_monomial_zz(4, n + k, n - 3L * k, n + m, base - 3L * m, A, B);
        }
        // The sigma_j * beta_0 endpoint does not enter this chain.
        for (int k = 1; k <= j - 1; ++k) {
            const int m = j - k;
            rhs -= 4 * sigma[k] * b[m] * hirota_monomial_zz(n + k, n - 3L * k, n + m, base - 3L * m, 1, 1);
        }
        const Rational eig = hirota_monomial_zz(n, n, n + j, base - 3L * j, 1, 1);
        if (eig == 0)
            throw std::domain_error("beta_seq: zero eigenfactor at n=" + std::to_string(n) + ", q=" + std::to_string(q) +
                                    ", j=" + std::to_string(j));
        b.push_back(Rational(rhs / (4 * eig)));
    }
    return b;
}

inline std::vector<Rational> beta_seq(int n, int q) { return beta_seq(n, q, sigma_seq(n)); }

inline Rational gamma(int n, int q, const std::vector<Rational>& sigma) { return beta_seq(n, q, sigma).back(); }
inline Rational gamma(int n, int q) { return gamma(n, q, sigma_seq(n)); }

/// gamma_1..gamma_{floor(n/2)}
inline std::vector<Rational> gamma_list(int n) {
    const auto s = sigma_seq(n);
    std::vector<Rational> out;
    for (int q = 1; q <= n / 2; ++q) out.push_back(gamma(n, q, s));
    return out;
}

struct UniquenessCertificate {
    int n = 0;
    std::vector<Rational> gammas;  // gammas[q-1] = gamma_q
    bool all_nonzero = false;
};

/// Requires triangular n. An empty gamma list (n = 1) certifies vacuously.
inline UniquenessCertificate uniqueness_certificate(int n) {
    if (!is_triangular(n) || n < 1) throw std::domain_error("uniqueness_certificate: n=" + std::to_string(n) + " is not triangular");
    UniquenessCertificate c;
    c.n = n;
    c.gammas = gamma_list(n);
    c.all_nonzero = std::none_of(c.gammas.begin(), c.gammas.end(), [](const Rational& g) { return g == 0; });
    return c;
}

// ---------------------------------------------------------------------------
// Hierarchy degree identities

struct HierarchyDegree {
    Rational b;  // -(j+1)(j(j+2)+2m)
    Rational B;  // (j+1)(10j(j+2)+32m)/8
    bool balanced = false;
};

inline HierarchyDegree hierarchy_degree(long j, const Rational& m) {
    if (j < 0) throw std::domain_error("hierarchy_degree: j must be >= 0");
    HierarchyDegree h;
    h.b = -Rational(j + 1) * (Rational(j * (j + 2)) + 2 * m);
    h.B = Rational(j + 1) * (Rational(10 * j * (j + 2)) + 32 * m) / 8;
    h.balanced = (h.b / 4 - h.B / 4) == 0;
    return h;
}

/// The unique m with b_m(j) = B_m(j): -3 j (j+2) / 8.
inline Rational balanced_m(long j) { return make_rational(-3 * j * (j + 2), 8); }

/// m = -(3/2) k (k+1), the balance point at j = 2k.
inline Rational solve_degree(long k) { return make_rational(-3 * k * (k + 1), 2); }

// ---------------------------------------------------------------------------
// Scans

struct Routes {
    bool J = true;
    bool sigma = false;
    bool gamma = false;
};

inline Routes parse_routes(const std::string& list) {
    Routes r{false, false, false};
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const std::string item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item == "J") r.J = true;
        else if (item == "sigma") r.sigma = true;
        else if (item == "gamma") r.gamma = true;
        else throw std::invalid_argument("unknown route '" + item + "' (J, sigma, gamma)");
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return r;
}

/// One scanned n. Optional fields are absent when their route was not run.
struct ObstructionTable {
    int n = 0;
    bool triangular = false;
    std::vector<Rational> a_seq;
    std::optional<Rational> J;
    std::vector<Rational> sigma_seq;
    std::optional<Rational> sigma_obstruction;
    std::vector<Rational> gammas;  // gamma route, triangular n only
    std::optional<bool> unique_even;
    std::string error;             // non-empty: diagnostic row

    std::optional<bool> degree_admissible() const {
        if (!J) return std::nullopt;
        return *J == 0;
    }
    std::optional<bool> sigma_obstruction_zero() const {
        if (!sigma_obstruction) return std::nullopt;
        return *sigma_obstruction == 0;
    }
    /// False only when both J and sigma ran and disagree.
    bool routes_agree() const {
        if (!J || !sigma_obstruction) return true;
        return (*J == 0) == (*sigma_obstruction == 0);
    }
};

inline ObstructionTable obstruction_row(int n, Routes routes, PairConvention conv = PairConvention::Ordered) {
    ObstructionTable row;
    row.n = n;
    row.triangular = is_triangular(n);
    try {
        if (routes.J) {
            row.a_seq = a_seq(n, n / 3, conv);
            row.J = J_n(n, row.a_seq, conv);
        }
        if (routes.sigma || (routes.gamma && row.triangular)) row.sigma_seq = sigma_seq(n);
        if (routes.sigma) row.sigma_obstruction = row.sigma_seq.back();
        if (routes.gamma && row.triangular) {
            for (int q = 1; q <= n / 2; ++q) row.gammas.push_back(gamma(n, q, row.sigma_seq));
            row.unique_even = std::none_of(row.gammas.begin(), row.gammas.end(), [](const Rational& g) { return g == 0; });
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

/// Rows for n = 1..max_n in order. jobs <= 0 means hardware concurrency.
inline std::vector<ObstructionTable> scan(int max_n, Routes routes, int jobs = 1,
                                          PairConvention conv = PairConvention::Ordered) {
    if (max_n < 1) throw std::invalid_argument("scan: max_n must be >= 1");
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    jobs = std::min(jobs, max_n);
    std::vector<ObstructionTable> rows(max_n);
    std::atomic<int> next{1};
    auto worker = [&] {
        for (int n = next++; n <= max_n; n = next++) rows[n - 1] = obstruction_row(n, routes, conv);
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace lumpcas
