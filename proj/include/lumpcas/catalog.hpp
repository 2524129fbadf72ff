#pragma once

/**
 * @file catalog.hpp
 * @brief Explicit tau-functions, their scalings, and checks on u = c (ln tau)_xx.
 *
 * Each record pins its own scaling constant c and bilinear form, since the
 * entries come from sources that normalize the equation differently. Records
 * with free parameters are stored as a sum of parameter monomials times
 * polynomials and are bound to exact rationals before verification.
 *
 * Floating point appears only in decay_check and energy, which evaluate
 * exact coefficients numerically.
 */

#include "lumpcas/hirota.hpp"
#include "lumpcas/poly.hpp"
#include "lumpcas/poly_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lumpcas {

class UnboundParameter : public std::invalid_argument {
public:
    explicit UnboundParameter(const std::string& name)
        : std::invalid_argument("parameter '" + name + "' is not bound"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class UnknownTau : public std::invalid_argument {
public:
    explicit UnknownTau(const std::string& id) : std::invalid_argument("unknown tau id '" + id + "'") {}
};

/// prod params[k]^powers[k] times poly.
struct ParamPart {
    std::vector<int> powers;
    ExactPoly poly;
};

using Bindings = std::map<std::string, Rational>;

struct TauRecord {
    std::string id;
    std::string description;
    std::vector<std::string> params;
    std::vector<ParamPart> parts;
    Rational scale_c{2};
    std::string form = "standard";  // preset name or custom w:a:b list
    // tau~(x, y) = tau(sx x, sy y) brings the record to the normalization
    // q = (3/2)(ln tau~)_xx used by the pole and energy checks.
    Rational sx2{1};
    Rational sy2{1};

    BilinearForm bilinear_form() const { return form_preset(form); }
    bool has_params() const { return !params.empty(); }

    ExactPoly bind(const Bindings& values = {}) const {
        for (const auto& [name, v] : values)
            if (std::find(params.begin(), params.end(), name) == params.end())
                throw std::invalid_argument("tau '" + id + "' has no parameter '" + name + "'");
        std::vector<Rational> vals;
        for (const auto& p : params) {
            auto it = values.find(p);
            if (it == values.end()) throw UnboundParameter(p);
            vals.push_back(it->second);
        }
        ExactPoly out(Basis::XY);
        for (const auto& part : parts) {
            Rational w = 1;
            for (std::size_t k = 0; k < part.powers.size(); ++k)
                for (int e = 0; e < part.powers[k]; ++e) w *= vals[k];
            out += part.poly * GaussianRational(w);
        }
        return out;
    }
};

namespace detail {

inline ExactPoly X() { return ExactPoly::var1(Basis::XY); }
inline ExactPoly Y() { return ExactPoly::var2(Basis::XY); }
inline ExactPoly xy(int i, int j) { return ExactPoly::monomial(Basis::XY, i, j); }
inline GaussianRational q(long num, long den = 1) { return GaussianRational(make_rational(num, den)); }

inline ExactPoly pelin12_poly(bool corrected) {
    const auto r = X() * X() + Y() * Y();
    ExactPoly low = 391314 * xy(2, 0) - 12705 * xy(4, 0) + 4158 * xy(2, 2) + 40143 * xy(0, 4) +
                    (corrected ? 736890 * xy(0, 2) : 736890 * xy(2, 0)) + q(717409);
    return pow(r, 6) + q(2) * pow(r, 3) * (49 * xy(4, 0) + 198 * xy(2, 2) + 29 * xy(0, 4)) +
           q(5) * (147 * xy(8, 0) + 3724 * xy(6, 2) + 7490 * xy(4, 4) + 7084 * xy(2, 6) + 867 * xy(0, 8)) +
           q(140, 3) * (539 * xy(6, 0) + 4725 * xy(4, 2) - 315 * xy(2, 4) + 5707 * xy(0, 6)) + q(1225, 9) * low;
}

}  // namespace detail

/// The built-in records, in a fixed order.
inline const std::vector<TauRecord>& catalog() {
    static const std::vector<TauRecord> records = [] {
        using detail::q;
        using detail::xy;
        const auto r = detail::X() * detail::X() + detail::Y() * detail::Y();
        std::vector<TauRecord> v;

        v.push_back({"lump2", "classical lump x^2+y^2+3", {}, {{{}, r + q(3)}}, Rational(2), "standard", 1, 3});

        v.push_back({"lump2b", "lump in the q=(3/2)(ln tau)_xx normalization, x^2+3y^2+3", {},
                     {{{}, xy(2, 0) + 3 * xy(0, 2) + q(3)}}, make_rational(3, 2), "1:4:0,-1:2:0,-1/3:0:2", 1, 1});

        v.push_back({"pelin6", "degree-6 lump", {},
                     {{{}, pow(r, 3) + 25 * xy(4, 0) + 90 * xy(2, 2) + 17 * xy(0, 4) - 125 * xy(2, 0) +
                               475 * xy(0, 2) + q(1875)}},
                     Rational(12), "standard", 1, 3});

        const ExactPoly yang_base = xy(6, 0) + xy(0, 6) + 3 * xy(4, 2) + 3 * xy(2, 4) + 14 * xy(5, 0) + 14 * xy(1, 4) +
                                    28 * xy(3, 2) + 90 * xy(4, 0) + 128 * xy(2, 2) + 22 * xy(0, 4) + 324 * xy(3, 0) +
                                    316 * xy(1, 2) + 648 * xy(2, 0) + 360 * xy(0, 2) + 648 * xy(1, 0) + q(324);
        const ExactPoly yang_a = 2 * (xy(3, 0) - 3 * xy(1, 2) + 7 * xy(2, 0) - 7 * xy(0, 2) + 16 * xy(1, 0) + q(8));
        const ExactPoly yang_b = 2 * (xy(0, 3) - 3 * xy(2, 1) - 14 * xy(1, 1) - 18 * xy(0, 1));
        v.push_back({"yang6", "two-parameter degree-6 family",
                     {"a", "b"},
                     {{{0, 0}, yang_base},
                      {{1, 0}, yang_a},
                      {{0, 1}, yang_b},
                      {{2, 0}, ExactPoly::constant(Basis::XY, 1)},
                      {{0, 2}, ExactPoly::constant(Basis::XY, 1)}},
                     Rational(2), "yang", make_rational(1, 3), 1});

        v.push_back({"pelin12", "degree-12 lump, coefficients as printed", {}, {{{}, detail::pelin12_poly(false)}},
                     Rational(12), "standard", 1, 3});
        v.push_back({"pelin12c", "degree-12 lump, constant-layer x^2 -> y^2 correction", {},
                     {{{}, detail::pelin12_poly(true)}}, Rational(12), "standard", 1, 3});
        return v;
    }();
    return records;
}

inline const TauRecord& find_tau(const std::string& id) {
    for (const auto& rec : catalog())
        if (rec.id == id) return rec;
    throw UnknownTau(id);
}

/// tau(sx x, sy y) given sx^2, sy^2; an axis with scale != 1 must carry only even exponents.
inline ExactPoly rescale_squares(const ExactPoly& tau, const Rational& sx2, const Rational& sy2) {
    if (tau.basis() != Basis::XY) throw std::invalid_argument("rescale_squares: requires xy basis");
    ExactPoly out(Basis::XY);
    for (const auto& [m, c] : tau.terms()) {
        if ((sx2 != 1 && m.i % 2) || (sy2 != 1 && m.j % 2))
            throw std::domain_error("rescale_squares: odd exponent x^" + std::to_string(m.i) + " y^" +
                                    std::to_string(m.j) + " needs an irrational scale");
        Rational w = 1;
        for (int k = 0; k < m.i / 2 && sx2 != 1; ++k) w *= sx2;
        for (int k = 0; k < m.j / 2 && sy2 != 1; ++k) w *= sy2;
        out.add_term(m.i, m.j, c * GaussianRational(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyResult {
    bool is_solution = false;
    ExactPoly residual{Basis::XY};
};

inline VerifyResult verify_tau(const ExactPoly& tau, const BilinearForm& form) {
    const ExactPoly t = form.basis() == tau.basis() ? tau : (form.basis() == Basis::ZZbar ? to_zzbar(tau) : to_xy(tau));
    VerifyResult r;
    r.residual = residual(form, t);
    r.is_solution = r.residual.is_zero();
    return r;
}

inline VerifyResult verify_tau(const TauRecord& rec, const Bindings& bindings = {},
                               const std::optional<BilinearForm>& form = std::nullopt) {
    return verify_tau(rec.bind(bindings), form ? *form : rec.bilinear_form());
}

// ---------------------------------------------------------------------------
// u = c (ln tau)_xx

struct RationalFunction {
    ExactPoly numerator{Basis::XY};
    ExactPoly denominator{Basis::XY};

    double operator()(double x, double y) const {
        return (evaluate(numerator, x, y) / evaluate(denominator, x, y)).real();
    }
};

/// numerator c (tau tau_xx - tau_x^2), denominator tau^2.
inline RationalFunction u_from_tau(const ExactPoly& tau, const Rational& c) {
    if (tau.is_zero()) throw std::invalid_argument("u_from_tau: tau is zero");
    if (tau.basis() != Basis::XY) throw std::invalid_argument("u_from_tau: tau must be in the xy basis");
    const auto tx = diff(tau, Axis::First, 1);
    RationalFunction u;
    u.numerator = (tau * diff(tau, Axis::First, 2) - tx * tx) * GaussianRational(c);
    u.denominator = tau * tau;
    return u;
}

inline RationalFunction u_from_tau(const TauRecord& rec, const Bindings& bindings = {}) {
    return u_from_tau(rec.bind(bindings), rec.scale_c);
}

struct DecayReport {
    std::vector<double> radii;
    std::vector<double> max_scaled;  // max |u| r^2 on each circle
    double bound = 0.0;
    int skipped = 0;
};

/// max |u| r^2 over `samples` equally spaced points on each circle.
inline DecayReport decay_check(const RationalFunction& u, const std::vector<double>& radii, int samples,
                               double min_denominator = 1e-12) {
    if (samples < 1) throw std::invalid_argument("decay_check: samples must be >= 1");
    DecayReport rep;
    for (double rad : radii) {
        double m = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double th = 2.0 * std::numbers::pi * s / samples;
            const double x = rad * std::cos(th);
            const double y = rad * std::sin(th);
            const auto den = evaluate(u.denominator, x, y);
            if (std::abs(den) < min_denominator) {
                ++rep.skipped;
                continue;
            }
            m = std::max(m, std::abs(evaluate(u.numerator, x, y) / den) * rad * rad);
        }
        rep.radii.push_back(rad);
        rep.max_scaled.push_back(m);
        rep.bound = std::max(rep.bound, m);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Energy

namespace detail {

// Dense double coefficients c[i][j] of f(sx x, sy y).
struct DensePoly {
    int dx = 0;
    int dy = 0;
    std::vector<double> c;  // (dx+1) x (dy+1), row-major in i

    DensePoly(const ExactPoly& f, double sx, double sy) {
        dx = std::max(0, f.degree_in(Axis::First));
        dy = std::max(0, f.degree_in(Axis::Second));
        c.assign(static_cast<std::size_t>((dx + 1) * (dy + 1)), 0.0);
        for (const auto& [m, v] : f.terms())
            c[m.i * (dy + 1) + m.j] = v.re().get_d() * std::pow(sx, m.i) * std::pow(sy, m.j);
    }

    // Coefficients in x after fixing y.
    void collapse(double y, std::vector<double>& out) const {
        out.assign(dx + 1, 0.0);
        for (int i = 0; i <= dx; ++i) {
            double acc = 0.0;
            for (int j = dy; j >= 0; --j) acc = acc * y + c[i * (dy + 1) + j];
            out[i] = acc;
        }
    }

    static double horner(const std::vector<double>& a, double x) {
        double acc = 0.0;
        for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

inline bool all_exponents_even(const ExactPoly& f) {
    return std::all_of(f.terms().begin(), f.terms().end(),
                       [](const auto& t) { return t.first.i % 2 == 0 && t.first.j % 2 == 0; });
}

}  // namespace detail

struct EnergyResult {
    double value = 0.0;  // quadrature + tail
    double quadrature = 0.0;
    double tail = 0.0;
    double R = 0.0;
    double h = 0.0;
    long long points = 0;
};

/// Energy density 3/2 q_x^2 + 4q^3 - 3/2 q^2 - w^2 with q = 3/2 L_xx, w = 3/2 L_xy, L = ln tau~.
class EnergyDensity {
public:
    EnergyDensity(const ExactPoly& tau, double sx, double sy)
        : f_(tau, sx, sy),
          fx_(diff(tau, 1, 0), sx, sy),
          fy_(diff(tau, 0, 1), sx, sy),
          fxx_(diff(tau, 2, 0), sx, sy),
          fxy_(diff(tau, 1, 1), sx, sy),
          fxxx_(diff(tau, 3, 0), sx, sy),
          sx_(sx),
          sy_(sy) {}

    struct Row {
        std::vector<double> f, fx, fy, fxx, fxy, fxxx;
    };

    void row(double y, Row& r) const {
        f_.collapse(y, r.f);
        fx_.collapse(y, r.fx);
        fy_.collapse(y, r.fy);
        fxx_.collapse(y, r.fxx);
        fxy_.collapse(y, r.fxy);
        fxxx_.collapse(y, r.fxxx);
    }

    double at(const Row& r, double x) const {
        using D = detail::DensePoly;
        const double t = D::horner(r.f, x);
        // chain rule for tau~(x, y) = tau(sx x, sy y)
        const double tx = D::horner(r.fx, x) * sx_;
        const double ty = D::horner(r.fy, x) * sy_;
        const double txx = D::horner(r.fxx, x) * sx_ * sx_;
        const double txy = D::horner(r.fxy, x) * sx_ * sy_;
        const double txxx = D::horner(r.fxxx, x) * sx_ * sx_ * sx_;
        const double a = tx / t;
        const double Lxx = txx / t - a * a;
        const double Lxxx = txxx / t - 3.0 * a * txx / t + 2.0 * a * a * a;
        const double Lxy = txy / t - a * ty / t;
        const double qv = 1.5 * Lxx;
        const double qx = 1.5 * Lxxx;
        const double w = 1.5 * Lxy;
        return 1.5 * qx * qx + 4.0 * qv * qv * qv - 1.5 * qv * qv - w * w;
    }

    double operator()(double x, double y) const {
        Row r;
        row(y, r);
        return at(r, x);
    }

private:
    detail::DensePoly f_, fx_, fy_, fxx_, fxy_, fxxx_;
    double sx_, sy_;
};

/**
 * Midpoint rule on [-R, R]^2 with step h (2R/h rounded to an integer count)
 * plus a tail estimate for the r^-4 decay: (R^2/2) * integral of the density
 * over the circle of radius R. Quadrant symmetry is used when tau has only
 * even exponents (unless use_symmetry is false). tau is given in the source
 * normalization; (sx, sy) rescale it.
 */
inline EnergyResult energy(const ExactPoly& tau, double sx, double sy, double R, double h, int jobs = 1,
                           bool use_symmetry = true) {
    if (!(R > 0) || !(h > 0)) throw std::invalid_argument("energy: R and h must be positive");
    if (tau.basis() != Basis::XY || !tau.has_real_coefficients())
        throw std::invalid_argument("energy: tau must be a real polynomial in the xy basis");
    const EnergyDensity dens(tau, sx, sy);
    const bool quadrant = use_symmetry && detail::all_exponents_even(tau);
    const long long cells = std::max<long long>(1, std::llround(2.0 * R / h));
    const double step = 2.0 * R / static_cast<double>(cells);
    const long long half = cells / 2;
    const bool fold = quadrant && cells % 2 == 0;
    const long long n_rows = fold ? half : cells;
    const long long n_cols = fold ? half : cells;
    const double origin = fold ? 0.0 : -R;

    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<double> partial(jobs, 0.0);
    std::atomic<long long> next{0};
    auto worker = [&](int id) {
        EnergyDensity::Row row;
        double acc = 0.0;
        for (long long r = next++; r < n_rows; r = next++) {
            const double y = origin + (static_cast<double>(r) + 0.5) * step;
            dens.row(y, row);
            double s = 0.0;
            for (long long c = 0; c < n_cols; ++c) s += dens.at(row, origin + (static_cast<double>(c) + 0.5) * step);
            acc += s;
        }
        partial[id] = acc;
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    double sum = 0.0;
    for (double p : partial) sum += p;

    EnergyResult res;
    res.R = R;
    res.h = step;
    res.points = n_rows * n_cols;
    res.quadrature = sum * step * step * (fold ? 4.0 : 1.0);

    const int ring = 4096;
    double circ = 0.0;
    for (int k = 0; k < ring; ++k) {
        const double th = 2.0 * std::numbers::pi * (k + 0.5) / ring;
        circ += dens(R * std::cos(th), R * std::sin(th));
    }
    circ *= 2.0 * std::numbers::pi / ring;
    res.tail = 0.5 * R * R * circ;
    res.value = res.quadrature + res.tail;
    return res;
}

inline EnergyResult energy(const TauRecord& rec, double R, double h, int jobs = 1, const Bindings& bindings = {}) {
    return energy(rec.bind(bindings), std::sqrt(rec.sx2.get_d()), std::sqrt(rec.sy2.get_d()), R, h, jobs);
}

// ---------------------------------------------------------------------------
// Interchange files

inline nlohmann::json manifest_entry(const TauRecord& rec) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : rec.parts) {
        std::string file = rec.id;
        for (std::size_t k = 0; k < p.powers.size(); ++k)
            if (p.powers[k]) file += "." + rec.params[k] + std::to_string(p.powers[k]);
        parts.push_back({{"powers", p.powers}, {"file", file + ".json"}});
    }
    return {{"id", rec.id},
            {"description", rec.description},
            {"scale_c", to_string(rec.scale_c)},
            {"form", rec.form},
            {"params", rec.params},
            {"rescale_squares", {to_string(rec.sx2), to_string(rec.sy2)}},
            {"parts", parts}};
}

/// Writes one polynomial file per part plus manifest.json into dir.
inline void export_catalog(const std::filesystem::path& dir, const std::vector<TauRecord>& records = catalog()) {
    std::filesystem::create_directories(dir);
    nlohmann::json manifest = nlohmann::json::array();
    for (const auto& rec : records) {
        auto entry = manifest_entry(rec);
        for (std::size_t k = 0; k < rec.parts.size(); ++k)
            write_poly_file((dir / entry["parts"][k]["file"].get<std::string>()).string(), rec.parts[k].poly);
        manifest.push_back(std::move(entry));
    }
    std::ofstream out(dir / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest in '" + dir.string() + "'");
    out << manifest.dump(2) << '\n';
}

inline std::vector<TauRecord> load_catalog(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw PolyFormatError("cannot open '" + (dir / "manifest.json").string() + "'");
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw PolyFormatError(std::string("manifest: ") + e.what());
    }
    std::vector<TauRecord> out;
    for (const auto& e : manifest) {
        TauRecord rec;
        rec.id = e.at("id").get<std::string>();
        rec.description = e.value("description", "");
        rec.scale_c = parse_rational(e.at("scale_c").get<std::string>());
        rec.form = e.at("form").get<std::string>();
        rec.params = e.at("params").get<std::vector<std::string>>();
        rec.sx2 = parse_rational(e.at("rescale_squares")[0].get<std::string>());
        rec.sy2 = parse_rational(e.at("rescale_squares")[1].get<std::string>());
        for (const auto& p : e.at("parts"))
            rec.parts.push_back({p.at("powers").get<std::vector<int>>(),
                                 read_poly_file((dir / p.at("file").get<std::string>()).string())});
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace lumpcas
