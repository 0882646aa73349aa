#pragma once

/**
 * @file charpoly.hpp
 * @brief Secular matrix of the Harper equation at flux p/q and the
 * polynomial f(e) that governs its spectrum through the Chambers relation
 *
 *     det m(e, kx, ky) = det m(e, 0, 0) - 2 (-1)^q (cos q kx - 1 + cos q ky - 1),
 *     det m(e, 0, 0) + 4 (-1)^q = (-1)^q f(e),
 *     f(e) = -sum_j a[j] e^(q - 2j),  a[0] = -1.
 */

#include "hofmom/dense.hpp"
#include "hofmom/errors.hpp"
#include "hofmom/flux.hpp"
#include "hofmom/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hofmom {

namespace detail {

/// 2 cos(shift + 2 pi p m / q) for m = 0..q-1, evaluated in T.
template <class T>
std::vector<T> harper_diagonal(const RationalFlux& flux, const T& shift) {
    using std::cos;
    const int q = flux.q();
    const T two_pi = pi_value<T>() * 2;
    std::vector<T> d;
    d.reserve(static_cast<std::size_t>(q));
    for (int m = 0; m < q; ++m) {
        const long long phase = (static_cast<long long>(flux.p()) * m) % q;
        d.emplace_back(T(cos(T(shift + two_pi * static_cast<double>(phase) / q)) * 2));
    }
    return d;
}

/// Determinants of the open chain 0..q-1 (full) and of 1..q-2 (inner),
/// with unit hopping and on-site terms `diag[m] - e`, plus their
/// derivatives with respect to e.
template <class T>
struct ChainDeterminants {
    T full, inner, dfull, dinner;
};

template <class T>
ChainDeterminants<T> chain_determinants(const std::vector<T>& diag, const T& e) {
    const std::size_t q = diag.size();
    // Continuant recurrence D_k = (c_k - e) D_{k-1} - D_{k-2}.
    auto run = [&](std::size_t first, std::size_t last, T& value, T& deriv) {
        T prev(1), dprev(0);
        T cur(diag[first] - e), dcur(-1);
        for (std::size_t m = first + 1; m <= last; ++m) {
            T a(diag[m] - e);
            T next(a * cur - prev);
            T dnext(a * dcur - cur - dprev);
            prev = std::move(cur);
            dprev = std::move(dcur);
            cur = std::move(next);
            dcur = std::move(dnext);
        }
        value = std::move(cur);
        deriv = std::move(dcur);
    };
    ChainDeterminants<T> out{T(0), T(0), T(0), T(0)};
    run(0, q - 1, out.full, out.dfull);
    if (q == 1) {
        out.inner = 0;
        out.dinner = 0;
    } else if (q == 2) {
        out.inner = 1;
        out.dinner = 0;
    } else {
        run(1, q - 2, out.inner, out.dinner);
    }
    return out;
}

/**
 * Allocation-free evaluation of `full - inner` and its e-derivative for
 * `Real`, on raw MPFR variables. This is the hot loop of root refinement.
 */
class ChainKernel {
public:
    explicit ChainKernel(std::vector<Real> diag) : diag_(std::move(diag)) {
        const mpfr_prec_t prec = diag_.empty() ? 64 : mpfr_get_prec(diag_.front().backend().data());
        for (auto* v : {&a_, &prev_, &cur_, &next_, &dprev_, &dcur_, &dnext_, &tmp_}) mpfr_init2(*v, prec);
    }
    ~ChainKernel() {
        for (auto* v : {&a_, &prev_, &cur_, &next_, &dprev_, &dcur_, &dnext_, &tmp_}) mpfr_clear(*v);
    }
    ChainKernel(const ChainKernel&) = delete;
    ChainKernel& operator=(const ChainKernel&) = delete;

    /// Writes D_full - D_inner and its derivative with respect to e.
    void trace(const Real& e, Real& value, Real& slope) {
        const std::size_t q = diag_.size();
        const mpfr_srcptr x = e.backend().data();
        run(0, q - 1, x);
        mpfr_set(value.backend().data(), cur_, MPFR_RNDN);
        mpfr_set(slope.backend().data(), dcur_, MPFR_RNDN);
        if (q == 2) {
            mpfr_sub_ui(value.backend().data(), value.backend().data(), 1, MPFR_RNDN);
        } else if (q > 2) {
            run(1, q - 2, x);
            mpfr_sub(value.backend().data(), value.backend().data(), cur_, MPFR_RNDN);
            mpfr_sub(slope.backend().data(), slope.backend().data(), dcur_, MPFR_RNDN);
        }
    }

private:
    void run(std::size_t first, std::size_t last, mpfr_srcptr e) {
        mpfr_set_ui(prev_, 1, MPFR_RNDN);
        mpfr_set_ui(dprev_, 0, MPFR_RNDN);
        mpfr_sub(cur_, diag_[first].backend().data(), e, MPFR_RNDN);
        mpfr_set_si(dcur_, -1, MPFR_RNDN);
        for (std::size_t m = first + 1; m <= last; ++m) {
            mpfr_sub(a_, diag_[m].backend().data(), e, MPFR_RNDN);
            mpfr_fms(next_, a_, cur_, prev_, MPFR_RNDN);
            mpfr_fms(tmp_, a_, dcur_, cur_, MPFR_RNDN);
            mpfr_sub(dnext_, tmp_, dprev_, MPFR_RNDN);
            mpfr_swap(prev_, cur_);
            mpfr_swap(cur_, next_);
            mpfr_swap(dprev_, dcur_);
            mpfr_swap(dcur_, dnext_);
        }
    }

    std::vector<Real> diag_;
    mpfr_t a_, prev_, cur_, next_, dprev_, dcur_, dnext_, tmp_;
};

inline void check_momentum(double k, const char* name) {
    constexpr double slack = 1e-12;
    if (!(std::abs(k) <= 3.141592653589793 + slack)) {
        throw std::invalid_argument(std::string(name) + " must lie in [-pi, pi]");
    }
}

}  // namespace detail

/**
 * @brief Dense q x q secular matrix m(e, kx, ky).
 *
 * Diagonal 2 cos(ky + 2 pi p m / q) - e, unit nearest-neighbour hopping and
 * Bloch corners e^{-i q kx} (top right) / e^{+i q kx} (bottom left). For
 * q <= 2 the corners add onto entries that already hold hopping terms, so
 * q = 1 gives the 1 x 1 matrix 2 cos ky + 2 cos kx - e.
 */
template <class T = double>
SquareMatrix<Complex<T>> secular_matrix(const RationalFlux& flux, const T& e, double kx, double ky) {
    using std::cos;
    using std::sin;
    detail::check_momentum(kx, "kx");
    detail::check_momentum(ky, "ky");
    const auto q = static_cast<std::size_t>(flux.q());
    const std::vector<T> diag = detail::harper_diagonal<T>(flux, T(ky));
    SquareMatrix<Complex<T>> m(q);
    for (std::size_t i = 0; i < q; ++i) m(i, i) = Complex<T>(T(diag[i] - e));
    for (std::size_t i = 0; i + 1 < q; ++i) {
        m(i, i + 1) += Complex<T>(T(1));
        m(i + 1, i) += Complex<T>(T(1));
    }
    const T angle = T(kx) * static_cast<double>(flux.q());
    const Complex<T> corner(T(cos(angle)), T(-sin(angle)));
    m(0, q - 1) += corner;
    m(q - 1, 0) += corner.conj();
    return m;
}

/// det m(e, kx, ky) via the O(q) continuant formula
/// det = D_full - D_inner - 2 (-1)^q cos(q kx).
template <class T>
T secular_determinant(const RationalFlux& flux, const T& e, double kx, double ky) {
    using std::cos;
    detail::check_momentum(kx, "kx");
    detail::check_momentum(ky, "ky");
    const auto chain = detail::chain_determinants(detail::harper_diagonal<T>(flux, T(ky)), e);
    const T twist = T(cos(T(kx) * static_cast<double>(flux.q()))) * 2;
    return flux.q_odd() ? T(chain.full - chain.inner + twist) : T(chain.full - chain.inner - twist);
}

/// |det m(e,kx,ky) - det m(e,0,0) + 2 (-1)^q (cos q kx - 1 + cos q ky - 1)|,
/// with both determinants taken by dense LU.
template <class T = double>
T chambers_defect(const RationalFlux& flux, const T& e, double kx, double ky) {
    using std::cos;
    using std::sqrt;
    const auto d = determinant(secular_matrix<T>(flux, e, kx, ky));
    const auto d0 = determinant(secular_matrix<T>(flux, e, 0.0, 0.0));
    const double q = flux.q();
    T shift = T(cos(T(kx) * q)) - 1 + T(cos(T(ky) * q)) - 1;
    shift *= flux.q_odd() ? -2 : 2;
    const Complex<T> diff = d - d0 + Complex<T>(shift);
    return sqrt(diff.norm());
}

/**
 * @brief Chambers polynomial f(e) = e^q b(1/e) = -sum_j a[j] e^(q-2j).
 *
 * The coefficients a[0..floor(q/2)] lie in the real cyclotomic field
 * Q(cos 2 pi / q). They are integers only when that field is Q
 * (q = 1, 2, 3, 4, 6); otherwise they are held to `precision` bits.
 * a[0] = -1 exactly.
 */
class CharPoly {
public:
    CharPoly(RationalFlux flux, std::vector<Real> a, unsigned precision)
        : flux_(flux), a_(std::move(a)), precision_(precision) {
        if (a_.size() != static_cast<std::size_t>(flux_.q() / 2 + 1)) {
            throw std::invalid_argument("coefficient count must be floor(q/2) + 1");
        }
        if (a_.front() != -1) throw std::invalid_argument("leading coefficient convention requires a[0] = -1");
    }

    const RationalFlux& flux() const noexcept { return flux_; }
    int degree() const noexcept { return flux_.q(); }
    const std::vector<Real>& coefficients() const noexcept { return a_; }
    unsigned precision() const noexcept { return precision_; }

    /// True when every coefficient sits within 2^(-precision/2) of an integer.
    bool integral() const {
        WorkingPrecision guard(precision_);
        Real tol(1);
        mpfr_mul_2si(tol.backend().data(), tol.backend().data(), -static_cast<long>(precision_ / 2), MPFR_RNDN);
        return std::all_of(a_.begin(), a_.end(), [&](const Real& x) {
            return abs(x - to_real(round_to_integer(x))) <= tol * std::max(Real(1), Real(abs(x)));
        });
    }

    /// Exact integer coefficients; throws std::logic_error unless integral().
    std::vector<Integer> integer_coefficients() const {
        if (!integral()) throw std::logic_error("charpoly coefficients are not integers for this flux");
        std::vector<Integer> out;
        out.reserve(a_.size());
        for (const Real& x : a_) out.push_back(round_to_integer(x));
        return out;
    }

private:
    RationalFlux flux_;
    std::vector<Real> a_;
    unsigned precision_;
};

/// Working bits for the polynomial recurrence at denominator q.
inline unsigned charpoly_default_bits(int q) { return std::max(128U, static_cast<unsigned>(2 * q + 96)); }

/**
 * @brief Coefficients of f for the given flux.
 *
 * Runs the continuant recurrence on polynomials in e with `bits` of working
 * precision (0 selects `charpoly_default_bits`). Coefficients of the wrong
 * parity vanish identically; if any of them exceeds 2^-64 relative to the
 * largest coefficient the precision is exhausted and PrecisionExhausted is
 * thrown.
 */
inline CharPoly charpoly(const RationalFlux& flux, unsigned bits = 0) {
    const int q = flux.q();
    const unsigned work = bits ? bits : charpoly_default_bits(q);
    WorkingPrecision guard(work);
    const std::vector<Real> c = detail::harper_diagonal<Real>(flux, Real(0));

    // Coefficients in ascending powers of e.
    using Poly = std::vector<Real>;
    auto chain = [&](int first, int last) -> Poly {
        if (last < first) return Poly{Real(1)};
        Poly prev{Real(1)};
        Poly cur{c[first], Real(-1)};
        for (int m = first + 1; m <= last; ++m) {
            Poly next(cur.size() + 1, Real(0));
            for (std::size_t i = 0; i < cur.size(); ++i) {
                next[i] += c[m] * cur[i];
                next[i + 1] -= cur[i];
            }
            for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    };

    Poly det = chain(0, q - 1);
    const Poly inner = q == 1 ? Poly{Real(0)} : chain(1, q - 2);
    for (std::size_t i = 0; i < inner.size(); ++i) det[i] -= inner[i];
    det[0] += flux.q_odd() ? 2 : -2;

    // f = (-1)^q det + 4
    Poly f = std::move(det);
    if (flux.q_odd()) {
        for (auto& x : f) x = -x;
    }
    f[0] += 4;

    Real largest(1);
    for (const auto& x : f) largest = std::max(largest, Real(abs(x)));
    Real parity_tol(largest);
    mpfr_mul_2si(parity_tol.backend().data(), parity_tol.backend().data(), -64, MPFR_RNDN);

    std::vector<Real> a;
    a.reserve(static_cast<std::size_t>(q / 2 + 1));
    for (int power = q; power >= 0; --power) {
        const Real& x = f[static_cast<std::size_t>(power)];
        if ((q - power) % 2 == 0) {
            a.push_back(-x);
        } else if (abs(x) > parity_tol) {
            throw PrecisionExhausted("charpoly: coefficient of e^" + std::to_string(power) + " for q=" +
                                     std::to_string(q) + " does not vanish at the working precision");
        }
    }
    a.front() = -1;
    return CharPoly(flux, std::move(a), work);
}

/// f(e) = -sum_j a[j] e^(q-2j) by Horner's scheme in T.
template <class T>
T eval_chambers(const CharPoly& cp, const T& e) {
    const T u = e * e;
    T acc(0);
    for (const Real& coef : cp.coefficients()) {
        if constexpr (std::is_same_v<T, Real>) {
            acc = acc * u - coef;
        } else {
            acc = acc * u - static_cast<T>(coef.template convert_to<long double>());
        }
    }
    return cp.flux().q_odd() ? T(acc * e) : acc;
}

}  // namespace hofmom
