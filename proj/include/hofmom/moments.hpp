#pragma once

/**
 * @file moments.hpp
 * @brief Alternating moment sums over the band edges at finite q.
 *
 * Edges are indexed r = 1..q in ascending order, e_r(+4) = e_plus[r-1] and
 * e_r(-4) = e_minus[r-1]. Every sum returns its raw value and the value
 * scaled by q^n, whose q -> infinity limits are the closed forms of
 * specfun.hpp.
 */

#include "hofmom/errors.hpp"
#include "hofmom/packets.hpp"
#include "hofmom/real.hpp"
#include "hofmom/spectrum.hpp"
#include "hofmom/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hofmom {

enum class MomentKind { alternating, half_spectrum, bandwidth_power, cross };

inline std::string to_string(MomentKind kind) {
    switch (kind) {
        case MomentKind::alternating: return "alternating";
        case MomentKind::half_spectrum: return "half";
        case MomentKind::bandwidth_power: return "bandwidth_power";
        case MomentKind::cross: return "cross";
    }
    return "unknown";
}

/// Inverse of to_string; also accepts "half_spectrum". Throws std::invalid_argument.
inline MomentKind parse_moment_kind(const std::string& name) {
    if (name == "alternating") return MomentKind::alternating;
    if (name == "half" || name == "half_spectrum") return MomentKind::half_spectrum;
    if (name == "bandwidth_power") return MomentKind::bandwidth_power;
    if (name == "cross") return MomentKind::cross;
    throw std::invalid_argument("unknown moment kind '" + name + "'");
}

struct MomentValue {
    MomentKind kind;
    int n;
    int k;  ///< cross index; 0 for the other kinds
    int q;
    Real raw;
    Real scaled;  ///< q^n * raw
};

/**
 * @brief Bits of edge precision that keep an n-th power alternating sum
 * over q edges meaningful after q^n scaling.
 */
inline unsigned moment_precision(int n, int q) {
    const unsigned log2q = static_cast<unsigned>(std::ceil(std::log2(std::max(q, 2))));
    return std::max(128U, 2U * static_cast<unsigned>(n) + log2q + 64U);
}

namespace detail {

/// (-1)^r for the 1-based index r = i + 1.
inline int edge_sign(std::size_t i) { return (i % 2 == 0) ? -1 : 1; }

inline void require_odd_q(const EdgeSpectrum& spec, const char* what) {
    if (spec.q() % 2 == 0) throw std::invalid_argument(std::string(what) + " requires odd q");
}

inline void require_positive(int n) {
    if (n < 1) throw std::invalid_argument("moment order n must be >= 1");
}

inline MomentValue make_moment(MomentKind kind, int n, int k, int q, Real raw) {
    Real scaled = raw * ipow(Real(q), static_cast<unsigned>(n));
    return MomentValue{kind, n, k, q, std::move(raw), std::move(scaled)};
}

/// sum_r (-1)^r x_r^n together with sum_r |x_r|^n.
inline std::pair<Real, Real> signed_power_sum(const std::vector<Real>& x, int n) {
    std::vector<Real> terms;
    terms.reserve(x.size());
    Real magnitude(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        Real t = ipow(x[i], static_cast<unsigned>(n));
        magnitude += abs(t);
        if (edge_sign(i) < 0) t = -t;
        terms.push_back(std::move(t));
    }
    return {cancelling_sum(std::move(terms)), magnitude};
}

/// Raises PrecisionExhausted unless a and b agree to 1e-9 relative, with an
/// absolute floor set by the rounding level of sums of size `magnitude`.
inline void check_agreement(const Real& a, const Real& b, const Real& magnitude, unsigned bits, const std::string& what) {
    Real floor(magnitude);
    mpfr_mul_2si(floor.backend().data(), floor.backend().data(), -static_cast<long>(bits) + 16, MPFR_RNDN);
    const Real tol = std::max(Real(Real(1e-9) * std::max(abs(a), abs(b))), floor);
    if (abs(a - b) > tol) {
        throw PrecisionExhausted(what + ": the two evaluations differ by " + to_decimal(Real(abs(a - b)), 6) +
                                 "; increase the edge precision");
    }
}

}  // namespace detail

/**
 * @brief Total length of the band set,
 * (-1)^(q+1) sum_r (-1)^r (e_r(-4) - e_r(4)).
 */
inline Real bandwidth(const EdgeSpectrum& spec) {
    WorkingPrecision guard(spec.precision + guard_bits);
    std::vector<Real> terms;
    terms.reserve(spec.e_plus.size());
    const int outer = spec.q() % 2 == 1 ? 1 : -1;
    for (std::size_t i = 0; i < spec.e_plus.size(); ++i) {
        Real t = spec.e_minus[i] - spec.e_plus[i];
        if (outer * detail::edge_sign(i) < 0) t = -t;
        terms.push_back(std::move(t));
    }
    return cancelling_sum(std::move(terms));
}

/// (-1)^(q+1) sum_r (-1)^r (e_r(-4)^n - e_r(4)^n), for any q and n >= 1.
inline Real moment_nth(const EdgeSpectrum& spec, int n) {
    detail::require_positive(n);
    WorkingPrecision guard(spec.precision + guard_bits);
    std::vector<Real> terms;
    terms.reserve(2 * spec.e_plus.size());
    const int outer = spec.q() % 2 == 1 ? 1 : -1;
    for (std::size_t i = 0; i < spec.e_plus.size(); ++i) {
        const int sign = outer * detail::edge_sign(i);
        Real a = ipow(spec.e_minus[i], static_cast<unsigned>(n));
        Real b = ipow(spec.e_plus[i], static_cast<unsigned>(n));
        terms.push_back(sign > 0 ? a : Real(-a));
        terms.push_back(sign > 0 ? Real(-b) : b);
    }
    return cancelling_sum(std::move(terms));
}

/**
 * @brief Odd-n moment for odd q, -2 sum_r (-1)^r e_r(4)^n.
 *
 * The dual form 2 sum_r (-1)^r e_r(-4)^n is evaluated as well; if the two
 * disagree the edges were not precise enough and PrecisionExhausted is
 * thrown.
 */
inline MomentValue moment_alternating(const EdgeSpectrum& spec, int n) {
    detail::require_positive(n);
    detail::require_odd_q(spec, "moment_alternating");
    if (n % 2 == 0) throw std::invalid_argument("moment_alternating requires odd n; even-n moments vanish identically");
    WorkingPrecision guard(spec.precision + guard_bits);
    auto [plus, plus_mag] = detail::signed_power_sum(spec.e_plus, n);
    auto [minus, minus_mag] = detail::signed_power_sum(spec.e_minus, n);
    Real from_plus = plus * -2;
    Real from_minus = minus * 2;
    detail::check_agreement(from_plus, from_minus, Real(plus_mag + minus_mag), spec.precision,
                            "moment_alternating(q=" + std::to_string(spec.q()) + ", n=" + std::to_string(n) + ")");
    return detail::make_moment(MomentKind::alternating, n, 0, spec.q(), std::move(from_plus));
}

/**
 * @brief Even-n moment over half of the spectrum (odd q):
 * -sum_{r <= (q-1)/2} (-1)^r (e_r(-4)^n - e_r(4)^n) + e_{(q+1)/2}(s)^n,
 * where the middle edge is taken on the side s = (-1)^((q+1)/2) 4.
 */
inline MomentValue moment_half_spectrum(const EdgeSpectrum& spec, int n) {
    detail::require_positive(n);
    detail::require_odd_q(spec, "moment_half_spectrum");
    if (n % 2 != 0) throw std::invalid_argument("moment_half_spectrum requires even n");
    WorkingPrecision guard(spec.precision + guard_bits);
    const std::size_t half = static_cast<std::size_t>(spec.q() - 1) / 2;
    std::vector<Real> terms;
    terms.reserve(2 * half + 1);
    for (std::size_t i = 0; i < half; ++i) {
        // -(-1)^r = +1 for odd r (even i).
        const int sign = -detail::edge_sign(i);
        Real a = ipow(spec.e_minus[i], static_cast<unsigned>(n));
        Real b = ipow(spec.e_plus[i], static_cast<unsigned>(n));
        terms.push_back(sign > 0 ? a : Real(-a));
        terms.push_back(sign > 0 ? Real(-b) : b);
    }
    const bool middle_on_plus = ((spec.q() + 1) / 2) % 2 == 0;
    const Real& middle = middle_on_plus ? spec.e_plus[half] : spec.e_minus[half];
    terms.push_back(ipow(middle, static_cast<unsigned>(n)));
    return detail::make_moment(MomentKind::half_spectrum, n, 0, spec.q(), cancelling_sum(std::move(terms)));
}

/**
 * @brief Power sum of the signed band lengths.
 *
 * Odd n: (-1)^(q+1) sum_r (-1)^r (e_r(-4) - e_r(4))^n.
 * Even n: sum_r (e_r(-4) - e_r(4))^n, without the alternating sign, which
 * would otherwise make the sum vanish by symmetry.
 */
inline MomentValue moment_bandwidth_power(const EdgeSpectrum& spec, int n) {
    detail::require_positive(n);
    WorkingPrecision guard(spec.precision + guard_bits);
    const int outer = spec.q() % 2 == 1 ? 1 : -1;
    std::vector<Real> terms;
    terms.reserve(spec.e_plus.size());
    for (std::size_t i = 0; i < spec.e_plus.size(); ++i) {
        Real t = ipow(Real(spec.e_minus[i] - spec.e_plus[i]), static_cast<unsigned>(n));
        if (n % 2 == 1 && outer * detail::edge_sign(i) < 0) t = -t;
        terms.push_back(std::move(t));
    }
    return detail::make_moment(MomentKind::bandwidth_power, n, 0, spec.q(), cancelling_sum(std::move(terms)));
}

/**
 * @brief Cross moment -2 sum_r (-1)^r e_r(-4)^k e_r(4)^(n-k), odd q and n.
 *
 * k = 0 is the alternating moment; sum_{k <= (n-1)/2} C(n,k) (-1)^k cross(k)
 * reassembles the odd-n bandwidth power sum.
 */
inline MomentValue moment_cross(const EdgeSpectrum& spec, int n, int k) {
    detail::require_positive(n);
    detail::require_odd_q(spec, "moment_cross");
    if (n % 2 == 0) throw std::invalid_argument("moment_cross requires odd n");
    if (k < 0 || k > n) throw std::invalid_argument("moment_cross requires 0 <= k <= n");
    WorkingPrecision guard(spec.precision + guard_bits);
    std::vector<Real> terms;
    terms.reserve(spec.e_plus.size());
    for (std::size_t i = 0; i < spec.e_plus.size(); ++i) {
        Real t = ipow(spec.e_minus[i], static_cast<unsigned>(k)) * ipow(spec.e_plus[i], static_cast<unsigned>(n - k));
        // -2 (-1)^r: positive for odd r (even i).
        t *= -2 * detail::edge_sign(i);
        terms.push_back(std::move(t));
    }
    return detail::make_moment(MomentKind::cross, n, k, spec.q(), cancelling_sum(std::move(terms)));
}

/// Dispatch on `kind`; `k` is used by MomentKind::cross only.
inline MomentValue moment(const EdgeSpectrum& spec, MomentKind kind, int n, int k = 0) {
    switch (kind) {
        case MomentKind::alternating: return moment_alternating(spec, n);
        case MomentKind::half_spectrum: return moment_half_spectrum(spec, n);
        case MomentKind::bandwidth_power: return moment_bandwidth_power(spec, n);
        case MomentKind::cross: return moment_cross(spec, n, k);
    }
    throw std::invalid_argument("unknown moment kind");
}

/**
 * @brief sum (e++)^n - sum (e--)^n, or with absolute values inside the
 * powers when `absolute` is set.
 */
inline Real packet_power_difference(const PacketSplit& split, int n, bool absolute) {
    detail::require_positive(n);
    WorkingPrecision guard(split.precision + guard_bits);
    std::vector<Real> terms;
    terms.reserve(split.epp.size() + split.emm.size());
    for (const Real& x : split.epp) terms.push_back(ipow(absolute ? Real(abs(x)) : x, static_cast<unsigned>(n)));
    for (const Real& x : split.emm) terms.push_back(-ipow(absolute ? Real(abs(x)) : x, static_cast<unsigned>(n)));
    return cancelling_sum(std::move(terms));
}

/// sum x^n over one packet; the traces of powers of a factor matrix.
inline Real packet_trace(const std::vector<Real>& packet, int n, unsigned bits = default_precision_bits) {
    WorkingPrecision guard(bits + guard_bits);
    std::vector<Real> terms;
    terms.reserve(packet.size());
    for (const Real& x : packet) terms.push_back(ipow(x, static_cast<unsigned>(n)));
    return cancelling_sum(std::move(terms));
}

}  // namespace hofmom
