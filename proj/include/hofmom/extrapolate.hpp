#pragma once

/**
 * @file extrapolate.hpp
 * @brief Richardson extrapolation of finite-q sequences to q -> infinity.
 */

#include "hofmom/moments.hpp"
#include "hofmom/real.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hofmom {

struct LimitEstimate {
    int n = 0;
    MomentKind kind = MomentKind::alternating;
    std::vector<int> q_list;
    std::vector<Real> estimates;
    Real extrapolated;
    Real error_bar;
    bool monotone = true;  ///< false when the tail of `estimates` changes direction
};

/**
 * @brief Neville tableau in h = 1/q evaluated at h = 0.
 *
 * Fits a polynomial of degree len - 1 in 1/q through all points, i.e.
 * len - 1 Richardson stages. The error bar is the larger of the change
 * made by the last stage and a quarter of the distance from the last raw
 * estimate. If the last three estimates are not monotone the error bar is
 * widened to their full spread.
 */
inline LimitEstimate extrapolate(const std::vector<int>& q_list, const std::vector<Real>& values) {
    if (q_list.size() != values.size()) throw std::invalid_argument("extrapolate: q_list and values differ in length");
    if (q_list.size() < 3) throw std::invalid_argument("extrapolate: at least three values are required");
    for (std::size_t i = 1; i < q_list.size(); ++i) {
        if (q_list[i] <= q_list[i - 1]) throw std::invalid_argument("extrapolate: q_list must be strictly increasing");
    }
    if (q_list.front() < 1) throw std::invalid_argument("extrapolate: q must be positive");

    const std::size_t m = values.size();
    std::vector<Real> h(m);
    for (std::size_t i = 0; i < m; ++i) h[i] = Real(1) / q_list[i];

    // tableau[i] holds the estimate from points i-stage..i after each stage.
    std::vector<Real> tableau(values);
    Real previous_stage = tableau[m - 1];
    for (std::size_t stage = 1; stage < m; ++stage) {
        previous_stage = tableau[m - 1];
        for (std::size_t i = m - 1; i >= stage; --i) {
            tableau[i] = tableau[i] + (tableau[i] - tableau[i - 1]) * h[i] / (h[i - stage] - h[i]);
            if (i == stage) break;
        }
    }

    LimitEstimate out;
    out.q_list = q_list;
    out.estimates = values;
    out.extrapolated = tableau[m - 1];
    const Real last_stage = abs(out.extrapolated - previous_stage);
    const Real from_last = abs(out.extrapolated - values.back()) / 4;
    out.error_bar = std::max(last_stage, from_last);

    const Real d1 = values[m - 2] - values[m - 3];
    const Real d2 = values[m - 1] - values[m - 2];
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) {
        out.monotone = false;
        const Real lo = std::min({values[m - 3], values[m - 2], values[m - 1]});
        const Real hi = std::max({values[m - 3], values[m - 2], values[m - 1]});
        out.error_bar = std::max(out.error_bar, Real(hi - lo));
    }
    return out;
}

}  // namespace hofmom
