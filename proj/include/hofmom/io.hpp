#pragma once

/**
 * @file io.hpp
 * @brief JSON and CSV encodings of the library results.
 *
 * Reals are written as decimal strings carrying the digits their precision
 * supports, so that output is portable and byte-for-byte reproducible.
 */

#include "hofmom/charpoly.hpp"
#include "hofmom/extrapolate.hpp"
#include "hofmom/moments.hpp"
#include "hofmom/real.hpp"
#include "hofmom/spectrum.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hofmom {

using Json = nlohmann::ordered_json;

inline std::string decimal(const Real& x, unsigned bits) { return to_decimal(x, decimal_digits_for(bits)); }

/// {"p":1,"q":4,"a":[-1,8,-4]}; integral coefficients beyond 2^53 and
/// non-integral ones are decimal strings. Non-unit p is flagged.
inline Json to_json(const CharPoly& cp) {
    Json out;
    out["p"] = cp.flux().p();
    out["q"] = cp.flux().q();
    Json a = Json::array();
    if (cp.integral()) {
        const Integer limit = Integer(1) << 53;
        for (const Integer& z : cp.integer_coefficients()) {
            if (abs(z) <= limit) {
                a.push_back(z.convert_to<long long>());
            } else {
                a.push_back(z.str());
            }
        }
    } else {
        for (const Real& x : cp.coefficients()) a.push_back(decimal(x, cp.precision()));
    }
    out["a"] = std::move(a);
    if (!cp.flux().validated()) out["unvalidated"] = true;
    return out;
}

inline Json to_json(const EdgeSpectrum& spec) {
    Json out;
    out["p"] = spec.flux.p();
    out["q"] = spec.q();
    out["precision"] = spec.precision;
    Json plus = Json::array(), minus = Json::array();
    for (const Real& x : spec.e_plus) plus.push_back(decimal(x, spec.precision));
    for (const Real& x : spec.e_minus) minus.push_back(decimal(x, spec.precision));
    out["e_plus"] = std::move(plus);
    out["e_minus"] = std::move(minus);
    if (!spec.flux.validated()) out["unvalidated"] = true;
    return out;
}

/// Columns r, e_plus, e_minus with r = 1..q.
inline std::string to_csv(const EdgeSpectrum& spec) {
    std::ostringstream os;
    os << "r,e_plus,e_minus\n";
    for (std::size_t i = 0; i < spec.e_plus.size(); ++i) {
        os << (i + 1) << ',' << decimal(spec.e_plus[i], spec.precision) << ','
           << decimal(spec.e_minus[i], spec.precision) << '\n';
    }
    return os.str();
}

inline Json to_json(const MomentValue& m, unsigned bits) {
    Json out;
    out["kind"] = to_string(m.kind);
    out["n"] = m.n;
    out["k"] = m.k;
    out["q"] = m.q;
    out["raw"] = decimal(m.raw, bits);
    out["scaled"] = decimal(m.scaled, bits);
    return out;
}

inline std::string moment_csv_header() { return "kind,n,k,q,raw,scaled\n"; }

inline std::string to_csv_row(const MomentValue& m, unsigned bits) {
    std::ostringstream os;
    os << to_string(m.kind) << ',' << m.n << ',' << m.k << ',' << m.q << ',' << decimal(m.raw, bits) << ','
       << decimal(m.scaled, bits) << '\n';
    return os.str();
}

/// LimitEstimate with the closed-form reference and the relative deviation
/// (null when the reference is zero or absent).
inline Json to_json(const LimitEstimate& est, const std::optional<Real>& reference, unsigned bits, int k = 0) {
    Json out;
    out["kind"] = to_string(est.kind);
    out["n"] = est.n;
    if (est.kind == MomentKind::cross) out["k"] = k;
    out["q_list"] = est.q_list;
    Json values = Json::array();
    for (const Real& x : est.estimates) values.push_back(decimal(x, bits));
    out["estimates"] = std::move(values);
    out["extrapolated"] = decimal(est.extrapolated, bits);
    out["error_bar"] = decimal(est.error_bar, bits);
    out["monotone"] = est.monotone;
    if (reference) {
        out["reference"] = decimal(*reference, bits);
        if (*reference != 0) {
            out["relative_deviation"] = to_decimal(Real((est.extrapolated - *reference) / *reference), 12);
        } else {
            out["relative_deviation"] = nullptr;
        }
    } else {
        out["reference"] = nullptr;
        out["relative_deviation"] = nullptr;
    }
    return out;
}

}  // namespace hofmom
