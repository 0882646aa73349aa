#pragma once

/**
 * @file specfun.hpp
 * @brief Euler numbers, Hurwitz zeta, Dirichlet beta and the closed forms
 * of the q -> infinity moment limits
 *
 *     M(n) = (2/pi) n! (zeta(n+1, 1/4) - zeta(n+1, 3/4))
 *          = (2/pi) 4^(n+1) n! beta(n+1)
 *          = (4/pi) ((-1)^(n-1) psi^(n)(1/4) - 2^n (2^(n+1) - 1) zeta(n+1) n!),
 *
 * plus the integral representation of M(n) for odd n.
 *
 * Templates accept double or `Real`; for `Real` the precision in force on
 * entry is used.
 */

#include "hofmom/errors.hpp"
#include "hofmom/real.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace hofmom {

using Rational = boost::multiprecision::mpq_rational;

/// Euler numbers E_0..E_kmax, the Taylor coefficients of sech: sech t = sum E_k t^k / k!.
struct EulerNumbers {
    std::vector<Integer> values;

    const Integer& operator[](std::size_t k) const { return values.at(k); }
    std::size_t size() const noexcept { return values.size(); }
};

/// Exact E_0..E_kmax from sum_{j even <= k} C(k, j) E_j = [k = 0].
inline EulerNumbers euler_numbers(int kmax) {
    if (kmax < 0) throw std::invalid_argument("euler_numbers: kmax must be >= 0");
    std::vector<Integer> e(static_cast<std::size_t>(kmax) + 1, Integer(0));
    std::vector<Integer> row{Integer(1)};  // binomial row C(k, .)
    e[0] = 1;
    for (int k = 1; k <= kmax; ++k) {
        std::vector<Integer> next(static_cast<std::size_t>(k) + 1, Integer(1));
        for (int j = 1; j < k; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + row[static_cast<std::size_t>(j)];
        row = std::move(next);
        if (k % 2 == 1) continue;
        Integer acc(0);
        for (int j = 0; j < k; j += 2) acc += row[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(j)];
        e[static_cast<std::size_t>(k)] = -acc;
    }
    return EulerNumbers{std::move(e)};
}

/// Exact Bernoulli numbers B_0..B_kmax (B_1 = -1/2).
inline std::vector<Rational> bernoulli_numbers(int kmax) {
    if (kmax < 0) throw std::invalid_argument("bernoulli_numbers: kmax must be >= 0");
    std::vector<Rational> b(static_cast<std::size_t>(kmax) + 1);
    b[0] = 1;
    std::vector<Integer> row{Integer(1), Integer(1)};  // C(m+1, .) for m = 0
    for (int m = 1; m <= kmax; ++m) {
        std::vector<Integer> next(static_cast<std::size_t>(m) + 2, Integer(1));
        for (int j = 1; j <= m; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + row[static_cast<std::size_t>(j)];
        row = std::move(next);
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rational acc(0);
        for (int j = 0; j < m; ++j) acc += Rational(row[static_cast<std::size_t>(j)]) * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(m)] = -acc / Rational(row[static_cast<std::size_t>(m)]);
    }
    return b;
}

namespace detail {

template <class T>
T from_rational(const Rational& x) {
    if constexpr (std::is_same_v<T, Real>) {
        Real out;
        mpfr_set_q(out.backend().data(), x.backend().data(), MPFR_RNDN);
        return out;
    } else {
        return static_cast<T>(x.template convert_to<long double>());
    }
}

template <class T>
T from_integer(const Integer& x) {
    if constexpr (std::is_same_v<T, Real>) {
        return to_real(x);
    } else {
        return static_cast<T>(x.template convert_to<long double>());
    }
}

/// Decimal digits carried by T.
template <class T>
unsigned digits_of() {
    if constexpr (std::is_same_v<T, Real>) {
        return Real::default_precision();
    } else {
        return static_cast<unsigned>(std::numeric_limits<T>::digits10);
    }
}

template <class T>
T factorial(int n) {
    T f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace detail

/**
 * @brief Hurwitz zeta sum_{m >= 0} (m + a)^(-s) for s > 1, a > 0.
 *
 * Euler-Maclaurin: a direct sum of N terms, the integral and endpoint
 * terms, and K Bernoulli corrections, with N and K scaled to the digits of T.
 */
template <class T>
T hurwitz_zeta(const T& s, const T& a) {
    using std::pow;
    if (!(s > 1)) throw std::invalid_argument("hurwitz_zeta: s must exceed 1");
    if (!(a > 0)) throw std::invalid_argument("hurwitz_zeta: a must be positive");
    const unsigned digits = detail::digits_of<T>();
    const int n_direct = static_cast<int>(digits) + 10;
    const int k_terms = static_cast<int>(digits / 2) + 8;
    T sum(0);
    for (int m = 0; m < n_direct; ++m) sum += pow(T(a + m), T(-s));
    const T x = a + n_direct;
    const T xs = pow(x, T(-s));
    sum += x * xs / (s - 1) + xs / 2;

    const std::vector<Rational> b = bernoulli_numbers(2 * k_terms);
    // Term k: B_2k / (2k)! * s (s+1) ... (s+2k-2) * x^(-s-2k+1).
    T rising(s);            // s (s+1) ... (s+2k-2)
    T power(xs / x);        // x^(-s-2k+1), starting at k = 1
    T fact(2);              // (2k)!
    for (int k = 1; k <= k_terms; ++k) {
        if (k > 1) {
            rising *= T(s + (2 * k - 3)) * T(s + (2 * k - 2));
            power /= x * x;
            fact *= T(2 * k - 1) * T(2 * k);
        }
        sum += detail::from_rational<T>(b[static_cast<std::size_t>(2 * k)]) / fact * rising * power;
    }
    return sum;
}

/// psi^(n)(1/4) = (-1)^(n+1) n! zeta(n+1, 1/4).
template <class T>
T polygamma_quarter(int n) {
    if (n < 1) throw std::invalid_argument("polygamma_quarter: order must be >= 1");
    T value = detail::factorial<T>(n) * hurwitz_zeta(T(n + 1), T(T(1) / 4));
    return n % 2 == 1 ? value : T(-value);
}

/**
 * @brief Dirichlet beta sum_{k >= 0} (-1)^k (2k+1)^(-s), by the
 * Cohen-Villegas-Zagier acceleration of the alternating series.
 */
template <class T>
T dirichlet_beta(const T& s) {
    using std::pow;
    using std::sqrt;
    const int n = static_cast<int>(1.31 * detail::digits_of<T>()) + 8;
    T d = pow(T(3 + sqrt(T(8))), n);
    d = (d + 1 / d) / 2;
    T b(-1);
    T c(-d);
    T sum(0);
    for (int k = 0; k < n; ++k) {
        c = b - c;
        sum += c * pow(T(2 * k + 1), T(-s));
        b = b * T(k + n) * T(k - n) / (T(k) + T(0.5)) / T(k + 1);
    }
    return sum / d;
}

/// The three forms of M(n), evaluated by independent routes.
template <class T>
struct ClosedForm {
    int n;
    T value;
    T polygamma_form;  ///< library polygamma and Riemann zeta
    T beta_form;       ///< accelerated alternating series
    T hurwitz_form;    ///< Euler-Maclaurin Hurwitz zeta
};

/**
 * @brief M(n), the q -> infinity limit of the q^n-scaled moments.
 *
 * Throws SpecialFunctionError when the three forms disagree by more than
 * 1e-12 relative.
 */
template <class T>
ClosedForm<T> closed_form_M(int n) {
    using std::abs;
    using std::pow;
    if (n < 1) throw std::invalid_argument("closed_form_M: n must be >= 1");
    const T pi = pi_value<T>();
    const T quarter = T(1) / 4;
    const T nfact = detail::factorial<T>(n);
    const T s(n + 1);

    const T psi = boost::math::polygamma(n, quarter);
    const T zeta = boost::math::zeta(s);
    const T signed_psi = n % 2 == 1 ? psi : T(-psi);
    const T two_n = pow(T(2), n);
    const T polygamma_form = 4 / pi * (signed_psi - two_n * (2 * two_n - 1) * zeta * nfact);

    const T beta_form = 2 / pi * pow(T(4), n + 1) * nfact * dirichlet_beta(s);
    const T hurwitz_form = 2 / pi * nfact * (hurwitz_zeta(s, quarter) - hurwitz_zeta(s, T(3 * quarter)));

    const T scale = abs(hurwitz_form);
    const T tol = scale * T(1e-12);
    if (abs(polygamma_form - hurwitz_form) > tol || abs(beta_form - hurwitz_form) > tol) {
        throw SpecialFunctionError("closed_form_M(" + std::to_string(n) + "): the three forms disagree");
    }
    return ClosedForm<T>{n, hurwitz_form, polygamma_form, beta_form, hurwitz_form};
}

/// Thouless constant (32/pi) sum_k (-1)^k / (2k+1)^2 = (32/pi) Catalan.
template <class T>
T thouless_series() {
    return 32 / pi_value<T>() * dirichlet_beta(T(2));
}

/// Thouless constant (4/pi) (psi'(1/4) - pi^2), with psi' from Euler-Maclaurin.
template <class T>
T thouless_polygamma() {
    const T pi = pi_value<T>();
    return 4 / pi * (polygamma_quarter<T>(1) - pi * pi);
}

/// 2 |E_n| (2 pi)^n, the even-n value of M(n).
template <class T>
T even_closed_form(int n) {
    using std::abs;
    using std::pow;
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("even_closed_form: n must be even and >= 2");
    const Integer e = euler_numbers(n)[static_cast<std::size_t>(n)];
    return 2 * detail::from_integer<T>(abs(e)) * pow(T(2 * pi_value<T>()), n);
}

/// 2^(1-n) pi^n |E_n| / n! for even n; tends to 8/pi.
template <class T>
T mu_sequence(int n) {
    using std::abs;
    using std::pow;
    if (n < 0 || n % 2 != 0) throw std::invalid_argument("mu_sequence: n must be even and >= 0");
    const Integer e = euler_numbers(n)[static_cast<std::size_t>(n)];
    return pow(T(2), 1 - n) * pow(pi_value<T>(), n) * detail::from_integer<T>(abs(e)) / detail::factorial<T>(n);
}

/// mu_sequence at n = n_terms; n_terms must be even and >= 10.
template <class T>
T mu_constant(int n_terms) {
    if (n_terms < 10 || n_terms % 2 != 0) throw std::invalid_argument("mu_constant: n_terms must be even and >= 10");
    return mu_sequence<T>(n_terms);
}

// ---------------------------------------------------------------------------
// Integral representation for odd n:
//   M(n) = 32 (8 pi)^(n-1) (-1)^((n-1)/2)
//          * int_0^inf n y^(n-1) (L(y) + sum_{k=2..n-1, even} E_k / (k 4^k y^k)) dy,
//   L(y) = log(Gamma(3/4 + y)^2 / (y Gamma(1/4 + y)^2)).
// ---------------------------------------------------------------------------

/// Above this y, L(y) is taken from its asymptotic series.
inline constexpr double asymptotic_threshold = 8.0;

namespace detail {

inline const EulerNumbers& euler_table() {
    static const EulerNumbers table = euler_numbers(60);
    return table;
}

/// -sum_{k even, k >= first} E_k / (k 4^k) y^(offset - k), stopped at the
/// smallest term. The offset folds a power of y into the series so that
/// large y cannot overflow.
inline double euler_tail(double y, int first, int offset = 0) {
    const EulerNumbers& e = euler_table();
    double sum = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int k = first; k < static_cast<int>(e.size()); k += 2) {
        const double term =
            e[static_cast<std::size_t>(k)].convert_to<double>() / (k * std::pow(4.0, k)) * std::pow(y, offset - k);
        if (std::abs(term) >= previous) break;
        sum -= term;
        previous = std::abs(term);
        if (previous <= std::abs(sum) * 1e-18) break;
    }
    return sum;
}

}  // namespace detail

/// L(y) = 2 lgamma(3/4 + y) - log y - 2 lgamma(1/4 + y), y > 0.
inline double log_gamma_ratio(double y) {
    if (!(y > 0)) throw std::invalid_argument("log_gamma_ratio: y must be positive");
    if (y > asymptotic_threshold) return detail::euler_tail(y, 2);
    return 2.0 * boost::math::lgamma(0.75 + y) - std::log(y) - 2.0 * boost::math::lgamma(0.25 + y);
}

/// sum_{k=2..n-1, k even} E_k / (k 4^k y^k); cancels the non-decaying part of L(y) y^(n-1).
inline double euler_counterterm(double y, int n) {
    const EulerNumbers& e = detail::euler_table();
    double sum = 0.0;
    for (int k = 2; k <= n - 1; k += 2) sum += e[static_cast<std::size_t>(k)].convert_to<double>() / (k * std::pow(4.0 * y, k));
    return sum;
}

/// n y^(n-1) (L(y) + counterterm), evaluated without cancellation for large y.
inline double moment_integrand(int n, double y) {
    if (y > asymptotic_threshold) return n * detail::euler_tail(y, n + 1, n - 1);
    // Powers of y are folded into each counterterm so that small y cannot
    // produce 0 * inf.
    const EulerNumbers& e = detail::euler_table();
    double sum = std::pow(y, n - 1) * log_gamma_ratio(y);
    for (int k = 2; k <= n - 1; k += 2) sum += e[static_cast<std::size_t>(k)].convert_to<double>() / (k * std::pow(4.0, k)) * std::pow(y, n - 1 - k);
    return n * sum;
}

/**
 * @brief M(n) from the integral representation (odd n), by tanh-sinh
 * quadrature on (0, 1] and on [1, inf) mapped through y = 1/t.
 *
 * Throws QuadratureError when the estimated relative error exceeds
 * `tolerance`.
 */
inline double moment_integral(int n, double tolerance = 1e-7) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("moment_integral: n must be odd and >= 1");
    if (n > 11) throw std::invalid_argument("moment_integral: n above 11 is not supported in double precision");
    boost::math::quadrature::tanh_sinh<double> integrator;
    double err_head = 0.0, err_tail = 0.0, l1_head = 0.0, l1_tail = 0.0;
    const double head = integrator.integrate([n](double y) { return moment_integrand(n, y); }, 0.0, 1.0, 1e-12,
                                             &err_head, &l1_head);
    const double tail = integrator.integrate(
        [n](double t) {
            // Integrand in t = 1/y, including the Jacobian 1/t^2.
            const double y = 1.0 / t;
            if (y > asymptotic_threshold) return n * detail::euler_tail(y, n + 1, n + 1);
            return moment_integrand(n, y) / (t * t);
        },
        0.0, 1.0, 1e-12, &err_tail,
        &l1_tail);
    const double integral = head + tail;
    const double achieved = (err_head + err_tail) / std::abs(integral);
    if (!(achieved <= tolerance) || !std::isfinite(integral)) {
        throw QuadratureError("moment_integral(" + std::to_string(n) + ") did not converge", achieved);
    }
    const double pi = pi_value<double>();
    const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    return 32.0 * std::pow(8.0 * pi, n - 1) * sign * integral;
}

}  // namespace hofmom
