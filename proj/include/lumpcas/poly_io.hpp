#pragma once

/**
 * @file poly_io.hpp
 * @brief JSON interchange format for ExactPoly.
 *
 *   { "basis": "xy" | "zzbar",
 *     "terms": [ [i, j, "p/q"], [i, j, {"re": "p/q", "im": "p/q"}], ... ] }
 *
 * Real coefficients are written as a bare rational string, others as an
 * object. Terms are emitted in descending (i, j) order.
 */

#include "lumpcas/poly.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lumpcas {

class PolyFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline nlohmann::json coeff_to_json(const GaussianRational& c) {
    if (c.is_real()) return to_string(c.re());
    return nlohmann::json{{"re", to_string(c.re())}, {"im", to_string(c.im())}};
}

inline GaussianRational coeff_from_json(const nlohmann::json& j) {
    try {
        if (j.is_string()) return GaussianRational(parse_rational(j.get<std::string>()));
        if (j.is_number_integer()) return GaussianRational(Rational(j.get<long>()));
        if (j.is_object()) {
            const auto re = j.contains("re") ? parse_rational(j.at("re").get<std::string>()) : Rational(0);
            const auto im = j.contains("im") ? parse_rational(j.at("im").get<std::string>()) : Rational(0);
            return {re, im};
        }
    } catch (const nlohmann::json::exception& e) {
        throw PolyFormatError(std::string("bad coefficient: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw PolyFormatError(std::string("bad coefficient: ") + e.what());
    }
    throw PolyFormatError("coefficient must be a \"p/q\" string or an {re, im} object");
}

inline nlohmann::json to_json(const ExactPoly& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it)
        terms.push_back(nlohmann::json::array({it->first.i, it->first.j, coeff_to_json(it->second)}));
    return {{"basis", basis_name(f.basis())}, {"terms", terms}};
}

inline ExactPoly poly_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("basis") || !doc.contains("terms"))
        throw PolyFormatError("polynomial document needs \"basis\" and \"terms\" fields");
    Basis basis;
    try {
        basis = parse_basis(doc.at("basis").get<std::string>());
    } catch (const std::exception& e) {
        throw PolyFormatError(e.what());
    }
    ExactPoly f(basis);
    const auto& terms = doc.at("terms");
    if (!terms.is_array()) throw PolyFormatError("\"terms\" must be an array");
    for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
            throw PolyFormatError("each term must be [i, j, coeff] with integer exponents");
        const int i = t[0].get<int>();
        const int j = t[1].get<int>();
        if (i < 0 || j < 0) throw PolyFormatError("negative exponent in term");
        f.add_term(i, j, coeff_from_json(t[2]));
    }
    return f;
}

inline ExactPoly poly_from_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PolyFormatError(std::string("not valid JSON: ") + e.what());
    }
    return poly_from_json(doc);
}

inline ExactPoly read_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PolyFormatError("cannot open polynomial file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return poly_from_string(ss.str());
}

inline void write_poly_file(const std::string& path, const ExactPoly& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << to_json(f).dump(1) << '\n';
}

}  // namespace lumpcas
