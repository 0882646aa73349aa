#pragma once

/**
 * @file spectrum.hpp
 * @brief Edge-band energies e_r(+4), e_r(-4) and the band intervals.
 *
 * The edges are the q roots of f(e) = 4 and of f(e) = -4. Roots are
 * isolated from double-precision eigenvalues of the two real symmetric
 * Bloch matrices where 2 (cos q kx + cos q ky) = +-4, i.e. (kx, ky) = (0, 0)
 * and (pi/q, pi/q), then refined by bracketed Newton iteration on the
 * continuant form of f at the requested precision. Tangential (double)
 * roots, which occur at the band centre for even q, are reported twice.
 */

#include "hofmom/charpoly.hpp"
#include "hofmom/errors.hpp"
#include "hofmom/flux.hpp"
#include "hofmom/real.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hofmom {

inline constexpr unsigned default_precision_bits = 192;
/// Extra bits carried internally on top of the requested precision.
inline constexpr unsigned guard_bits = 32;

enum class Side { plus, minus };

inline int side_value(Side s) noexcept { return s == Side::plus ? 4 : -4; }

namespace detail {

/// f(e) and f'(e) from the continuant recurrence at kx = ky = 0, at the
/// precision in force on construction.
class ChambersFunction {
public:
    explicit ChambersFunction(const RationalFlux& flux)
        : odd_(flux.q_odd()), kernel_(std::make_unique<ChainKernel>(harper_diagonal<Real>(flux, Real(0)))) {}

    std::pair<Real, Real> operator()(const Real& e) const {
        Real value, slope;
        kernel_->trace(e, value, slope);
        if (odd_) {
            value = -value;
            slope = -slope;
        }
        value += 2;
        return {std::move(value), std::move(slope)};
    }

private:
    bool odd_;
    std::unique_ptr<ChainKernel> kernel_;
};

/// Eigenvalues of the real symmetric Bloch matrix whose spectrum is {e : f(e) = side}.
inline std::vector<double> edge_seeds(const RationalFlux& flux, Side side) {
    const int q = flux.q();
    const double pi = 3.141592653589793238462643383279502884;
    const double shift = side == Side::plus ? 0.0 : pi / q;
    const double corner = side == Side::plus ? 1.0 : -1.0;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(q, q);
    for (int m = 0; m < q; ++m) {
        const long long phase = (static_cast<long long>(flux.p()) * m) % q;
        h(m, m) = 2.0 * std::cos(shift + 2.0 * pi * static_cast<double>(phase) / q);
    }
    for (int m = 0; m + 1 < q; ++m) {
        h(m, m + 1) += 1.0;
        h(m + 1, m) += 1.0;
    }
    h(0, q - 1) += corner;
    h(q - 1, 0) += corner;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    std::vector<double> seeds(solver.eigenvalues().data(), solver.eigenvalues().data() + q);
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

inline Real pow2(long exponent) {
    Real x(1);
    mpfr_mul_2si(x.backend().data(), x.backend().data(), exponent, MPFR_RNDN);
    return x;
}

/**
 * Root of g on [lo, hi] where g(lo) and g(hi) have opposite signs.
 * Newton steps are taken when they stay inside the bracket, bisection
 * otherwise. Stops when the step falls below 2^-bits relative.
 */
template <class F>
Real bracketed_newton(const F& g, Real lo, Real hi, unsigned bits) {
    const Real tol = pow2(-static_cast<long>(bits) + 2);
    bool lo_negative = g(lo).first < 0;
    Real x = (lo + hi) / 2;
    for (unsigned iter = 0; iter < 4 * bits + 64; ++iter) {
        auto [value, slope] = g(x);
        if (value == 0) return x;
        if ((value < 0) == lo_negative) {
            lo = x;
        } else {
            hi = x;
        }
        const Real scale = std::max(Real(1), Real(abs(x)));
        Real next;
        bool newton_ok = slope != 0;
        if (newton_ok) {
            Real delta = value / slope;
            // A step below tolerance may round onto x itself, which would
            // otherwise look like leaving the bracket.
            if (abs(delta) <= tol * scale) return Real(x - delta);
            next = x - delta;
            newton_ok = next > lo && next < hi;
        }
        if (!newton_ok) next = (lo + hi) / 2;
        const Real step = abs(next - x);
        x = std::move(next);
        if (step <= tol * scale || (hi - lo) <= tol * scale) return x;
    }
    return x;
}

/// Zero of g' on [lo, hi] by bisection; g' must change sign on the interval.
template <class F>
Real derivative_zero(const F& g, Real lo, Real hi, unsigned bits) {
    const Real tol = pow2(-static_cast<long>(bits) + 2);
    const bool lo_negative = g(lo).second < 0;
    while ((hi - lo) > tol * std::max(Real(1), Real(abs(lo)))) {
        Real mid = (lo + hi) / 2;
        if ((g(mid).second < 0) == lo_negative) {
            lo = std::move(mid);
        } else {
            hi = std::move(mid);
        }
    }
    return (lo + hi) / 2;
}

/**
 * Refines the roots of g (value, slope) next to each double-precision seed.
 * Seeds closer than `cluster_tol` are treated as one cluster that holds
 * either a tangential root (reported twice) or two roots on both sides of
 * the local extremum.
 */
template <class F>
std::vector<Real> refine_from_seeds(const F& g, const std::vector<double>& seeds, unsigned bits,
                                    const std::string& what) {
    constexpr double cluster_tol = 1e-7;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<Real> roots;
    roots.reserve(seeds.size());
    const Real tangency_tol = pow2(-static_cast<long>(bits / 2));

    auto fail = [&](const std::string& why) {
        throw PrecisionExhausted(what + ": root isolation failed (" + why + ")");
    };

    std::size_t i = 0;
    while (i < seeds.size()) {
        std::size_t j = i;
        while (j + 1 < seeds.size() && seeds[j + 1] - seeds[j] < cluster_tol) ++j;
        const double left_gap = i == 0 ? inf : seeds[i] - seeds[i - 1];
        const double right_gap = j + 1 == seeds.size() ? inf : seeds[j + 1] - seeds[j];
        const double room = 0.45 * std::min(left_gap, right_gap);
        const std::size_t cluster = j - i + 1;

        if (cluster == 1) {
            const Real centre(seeds[i]);
            bool found = false;
            for (double h = 1e-10 * std::max(1.0, std::abs(seeds[i]));; h *= 16.0) {
                const double width = std::min(h, room);
                Real lo = centre - width;
                Real hi = centre + width;
                const bool lo_negative = g(lo).first < 0;
                const bool hi_negative = g(hi).first < 0;
                if (lo_negative != hi_negative) {
                    roots.push_back(bracketed_newton(g, std::move(lo), std::move(hi), bits));
                    found = true;
                    break;
                }
                if (width >= room) break;
            }
            if (!found) fail("no sign change near seed " + std::to_string(seeds[i]));
        } else if (cluster == 2) {
            const double pad = std::min(1e-6, room);
            Real lo(seeds[i] - pad);
            Real hi(seeds[j] + pad);
            if ((g(lo).second < 0) == (g(hi).second < 0)) fail("no extremum inside a seed cluster");
            Real extremum = derivative_zero(g, lo, hi, bits);
            const Real at_extremum = g(extremum).first;
            const bool lo_negative = g(lo).first < 0;
            if (abs(at_extremum) <= tangency_tol) {
                roots.push_back(extremum);
                roots.push_back(extremum);
            } else if ((at_extremum < 0) != lo_negative) {
                roots.push_back(bracketed_newton(g, lo, extremum, bits));
                roots.push_back(bracketed_newton(g, extremum, hi, bits));
            } else {
                fail("seed cluster holds no root");
            }
        } else {
            fail("more than two coincident seeds");
        }
        i = j + 1;
    }
    if (roots.size() != seeds.size()) fail("root count mismatch");
    std::stable_sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace detail

/**
 * @brief The q real roots of f(e) = +4 or -4, sorted ascending.
 *
 * Each root carries a relative error below 2^(1-bits). Throws
 * PrecisionExhausted when isolation does not produce exactly q roots.
 */
inline std::vector<Real> edge_energies(const RationalFlux& flux, Side side, unsigned bits = default_precision_bits) {
    const unsigned work = bits + guard_bits;
    WorkingPrecision guard(work);
    const detail::ChambersFunction f(flux);
    const int target = side_value(side);
    auto g = [&](const Real& e) {
        auto r = f(e);
        r.first -= target;
        return r;
    };
    // Root tolerance sits half-way into the guard bits: the continuant loses
    // accuracy to cancellation for large q, so iterating down to the working
    // precision would only chase rounding noise.
    std::vector<Real> roots = detail::refine_from_seeds(g, detail::edge_seeds(flux, side), bits + guard_bits / 2,
                                                        "edge_energies(q=" + std::to_string(flux.q()) + ")");
    // Edges lie in [-4, 4], so anything below the absolute resolution is the
    // exact zero root (even q).
    const Real resolution = detail::pow2(-static_cast<long>(bits));
    for (Real& e : roots) {
        if (abs(e) < resolution) e = 0;
    }
    return roots;
}

/// Same roots, for a polynomial already extracted. f is evaluated through the
/// secular determinant, which equals the coefficient form identically.
inline std::vector<Real> edge_energies(const CharPoly& cp, Side side, unsigned bits = default_precision_bits) {
    return edge_energies(cp.flux(), side, bits);
}

/// Both edge lists for one flux.
struct EdgeSpectrum {
    RationalFlux flux;
    std::vector<Real> e_plus;   ///< roots of f = +4, ascending
    std::vector<Real> e_minus;  ///< roots of f = -4, ascending
    unsigned precision;         ///< bits

    int q() const noexcept { return flux.q(); }
};

inline EdgeSpectrum edge_spectrum(const RationalFlux& flux, unsigned bits = default_precision_bits) {
    return EdgeSpectrum{flux, edge_energies(flux, Side::plus, bits), edge_energies(flux, Side::minus, bits), bits};
}

struct Band {
    Real lo;
    Real hi;
    Real width() const { return hi - lo; }
};

/// The q bands {e : |f(e)| <= 4}. Band r is spanned by e_r(+4) and e_r(-4).
inline std::vector<Band> bands(const EdgeSpectrum& spec) {
    std::vector<Band> out;
    out.reserve(spec.e_plus.size());
    for (std::size_t r = 0; r < spec.e_plus.size(); ++r) {
        const Real& a = spec.e_plus[r];
        const Real& b = spec.e_minus[r];
        out.push_back(a < b ? Band{a, b} : Band{b, a});
    }
    return out;
}

inline std::vector<Band> bands(const CharPoly& cp, unsigned bits = default_precision_bits) {
    return bands(edge_spectrum(cp.flux(), bits));
}

}  // namespace hofmom
