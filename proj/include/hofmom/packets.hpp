#pragma once

/**
 * @file packets.hpp
 * @brief Odd-q factorization of the secular determinant at kx = ky = 0.
 *
 * For odd q the reflection m -> q - m splits the periodic chain into an
 * even sector of size (q+1)/2 and an odd sector of size (q-1)/2:
 *
 *     det m(e, 0, 0) = -det m++(e) det m--(e),   m±±(e) = e - H±±.
 *
 * H++ and H-- are real symmetric tridiagonal matrices, so their eigenvalues
 * (the packets e++ and e--) are computed independently of the root finder
 * of spectrum.hpp and recombine into the roots of f(e) = 4.
 */

#include "hofmom/charpoly.hpp"
#include "hofmom/errors.hpp"
#include "hofmom/flux.hpp"
#include "hofmom/real.hpp"
#include "hofmom/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hofmom {

/// Real symmetric tridiagonal matrix: diag[0..n-1], off[i] couples i and i+1.
template <class T>
struct Tridiagonal {
    std::vector<T> diag;
    std::vector<T> off;

    std::size_t size() const noexcept { return diag.size(); }
};

enum class Sector { even, odd };

/**
 * @brief The sector matrix H++ (even) or H-- (odd) for odd q.
 *
 * With K = (q-1)/2 and c_m = 2 cos(2 pi p m / q):
 *  - even: diagonal (2, c_1, ..., c_{K-1}, c_K + 1), couplings (sqrt 2, 1, ..., 1);
 *  - odd:  diagonal (c_1, ..., c_{K-1}, c_K - 1), couplings all 1.
 * The sqrt 2 symmetrizes the site-0 coupling, which enters the reduced
 * equations as 2 one way and 1 the other. q = 1 gives H++ = [4] and an
 * empty H--.
 */
template <class T>
Tridiagonal<T> sector_matrix(const RationalFlux& flux, Sector sector) {
    using std::cos;
    using std::sqrt;
    if (!flux.q_odd()) throw std::invalid_argument("the packet split requires odd q");
    const int q = flux.q();
    const int k = (q - 1) / 2;
    Tridiagonal<T> h;
    if (q == 1) {
        if (sector == Sector::even) h.diag.emplace_back(4);
        return h;
    }
    const T two_pi = pi_value<T>() * 2;
    auto c = [&](int m) {
        const long long phase = (static_cast<long long>(flux.p()) * m) % q;
        return T(cos(T(two_pi * static_cast<double>(phase) / q)) * 2);
    };
    if (sector == Sector::even) {
        h.diag.emplace_back(2);
        for (int m = 1; m <= k; ++m) h.diag.push_back(c(m));
        h.diag.back() += 1;
        h.off.assign(static_cast<std::size_t>(k), T(1));
        h.off.front() = sqrt(T(2));
    } else {
        for (int m = 1; m <= k; ++m) h.diag.push_back(c(m));
        h.diag.back() -= 1;
        h.off.assign(static_cast<std::size_t>(k - 1), T(1));
    }
    return h;
}

/// det(e - H) and its e-derivative by the three-term recurrence.
template <class T>
std::pair<T, T> shifted_determinant(const Tridiagonal<T>& h, const T& e) {
    T prev(1), dprev(0);
    if (h.size() == 0) return {prev, dprev};
    T cur(e - h.diag[0]), dcur(1);
    for (std::size_t i = 1; i < h.size(); ++i) {
        T a(e - h.diag[i]);
        T b2(h.off[i - 1] * h.off[i - 1]);
        T next(a * cur - b2 * prev);
        T dnext(a * dcur + cur - b2 * dprev);
        prev = std::move(cur);
        dprev = std::move(dcur);
        cur = std::move(next);
        dcur = std::move(dnext);
    }
    return {cur, dcur};
}

/**
 * @brief Eigenvalues of a dense real symmetric matrix by cyclic Jacobi
 * rotations, sorted ascending. `a` is row-major n x n.
 */
template <class T>
std::vector<T> jacobi_eigenvalues(std::vector<T> a, std::size_t n, unsigned max_sweeps = 64) {
    using std::abs;
    using std::sqrt;
    auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };
    for (unsigned sweep = 0; sweep < max_sweeps; ++sweep) {
        T off(0), total(0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const T sq = at(i, j) * at(i, j);
                total += sq;
                if (i != j) off += sq;
            }
        }
        if (off <= total * std::numeric_limits<T>::epsilon() * std::numeric_limits<T>::epsilon()) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                const T apr = at(p, r);
                if (apr == 0) continue;
                const T theta = (at(r, r) - at(p, p)) / (2 * apr);
                const T t = (theta >= 0 ? T(1) : T(-1)) / (abs(theta) + sqrt(theta * theta + 1));
                const T c = 1 / sqrt(t * t + 1);
                const T s = t * c;
                // The matrix stays symmetric: update column k and mirror it.
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == r) continue;
                    const T akp = at(k, p);
                    const T akr = at(k, r);
                    at(k, p) = at(p, k) = c * akp - s * akr;
                    at(k, r) = at(r, k) = s * akp + c * akr;
                }
                at(p, p) -= t * apr;
                at(r, r) += t * apr;
                at(p, r) = at(r, p) = T(0);
            }
        }
    }
    std::vector<T> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

/// Packets e++ and e-- of the odd-q factorization, each ascending.
struct PacketSplit {
    RationalFlux flux;
    std::vector<Real> epp;  ///< (q+1)/2 eigenvalues of H++
    std::vector<Real> emm;  ///< (q-1)/2 eigenvalues of H--
    unsigned precision;
};

namespace detail {

inline std::vector<double> sector_seeds(const Tridiagonal<double>& h) {
    const std::size_t n = h.size();
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) dense[i * n + i] = h.diag[i];
    for (std::size_t i = 0; i + 1 < n; ++i) dense[i * n + i + 1] = dense[(i + 1) * n + i] = h.off[i];
    return jacobi_eigenvalues(std::move(dense), n);
}

inline std::vector<Real> sector_eigenvalues(const RationalFlux& flux, Sector sector, unsigned bits) {
    const std::vector<double> seeds = sector_seeds(sector_matrix<double>(flux, sector));
    const unsigned work = bits + guard_bits;
    WorkingPrecision guard(work);
    const Tridiagonal<Real> h = sector_matrix<Real>(flux, sector);
    auto g = [&](const Real& e) { return shifted_determinant(h, e); };
    return refine_from_seeds(g, seeds, bits + guard_bits / 2,
                             std::string("packet_split(q=") + std::to_string(flux.q()) +
                                 (sector == Sector::even ? ", ++)" : ", --)"));
}

}  // namespace detail

/**
 * @brief Eigenvalues of H++ and H--, seeded by Jacobi rotations in double
 * precision and refined on the sector determinants. Throws
 * std::invalid_argument for even q.
 */
inline PacketSplit packet_split(const RationalFlux& flux, unsigned bits = default_precision_bits) {
    if (!flux.q_odd()) throw std::invalid_argument("packet_split requires odd q, got q=" + std::to_string(flux.q()));
    return PacketSplit{flux, detail::sector_eigenvalues(flux, Sector::even, bits),
                       detail::sector_eigenvalues(flux, Sector::odd, bits), bits};
}

/**
 * @brief |det m(e,0,0) + det m++(e) det m--(e)| / max(1, |det m(e,0,0)|).
 *
 * The full determinant comes from the continuant of the periodic chain, the
 * factors from the sector recurrences.
 */
template <class T = double>
T factorization_defect(const RationalFlux& flux, const T& e) {
    using std::abs;
    if (!flux.q_odd()) throw std::invalid_argument("factorization_defect requires odd q");
    const T full = secular_determinant<T>(flux, e, 0.0, 0.0);
    const T plus = shifted_determinant(sector_matrix<T>(flux, Sector::even), e).first;
    const T minus = shifted_determinant(sector_matrix<T>(flux, Sector::odd), e).first;
    const T scale = std::max(T(1), T(abs(full)));
    return T(abs(T(full + plus * minus)) / scale);
}

}  // namespace hofmom
