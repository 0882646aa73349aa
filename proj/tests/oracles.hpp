#pragma once

// Reference values and slow independent algorithms used by the tests.
// Frozen constants were computed once with mpmath at 40-60 digits, from
// definitions that share no code with the library: dense determinants fitted
// by Vandermonde interpolation, polynomial roots by Durand-Kerner, and the
// Hurwitz zeta of mpmath.

#include "hofmom/charpoly.hpp"
#include "hofmom/dense.hpp"
#include "hofmom/flux.hpp"

#include <cmath>
#include <vector>

namespace oracle {

// M(n) = (2/pi) n! (zeta(n+1,1/4) - zeta(n+1,3/4)), n = 1..9.
inline const std::vector<double> closed_form_M = {
    9.32994892898620096442830260699, 78.956835208714868950675927999, 967.037422715262333938005787768,
    15585.4545654403899578304532302, 312499.941622859108486519038157, 7506526.82343597704433195341604,
    210244884.030490687178148094359, 6728507114.11596543993501546133, 242234366212.291688011629043543};

inline constexpr double catalan = 0.91596559417721901505460351493238411;
inline constexpr double trigamma_quarter = 17.197329154507110739271319119335224;
inline constexpr double tetragamma_quarter = -129.32773993753692033333796717884399;
inline constexpr double hurwitz_4_half = 16.234848505667072872740055448117519;
inline constexpr double hurwitz_3_quarter = 64.663869968768460166668983589421995;

// log(Gamma(3/4+y)^2 / (y Gamma(1/4+y)^2)) at y = 0.3, 1, 12.
inline constexpr double log_gamma_ratio_0_3 = 0.1902049470991636563392204;
inline constexpr double log_gamma_ratio_1 = 0.02774143080265521101213554;
inline constexpr double log_gamma_ratio_12 = 0.0002167792389307325417478915;

// Coefficients of f(e), highest power first, for q = 5, 6, 7.
inline const std::vector<double> f5 = {1, 0, -10, 0, 11.90983005625052575897707, 0};
inline const std::vector<double> f6 = {1, 0, -12, 0, 24, 0, -4};
inline const std::vector<double> f7 = {1, 0, -14, 0, 40.27114277397773057264993, 0, -18.31169939717865782521059, 0};

// Roots of f(e) = +4 and f(e) = -4, ascending.
inline const std::vector<double> q5_plus = {-2.902113032590307144232879, -1.348414000393477078160297,
                                            0.3819660112501051517954132, 0.9021130325903071442328787,
                                            2.966447989143371926364884};
inline const std::vector<double> q6_plus = {-3.095573564778559741890516, -1.414213562373095048801689,
                                            -0.6460838219953816436932323, 0.6460838219953816436932323,
                                            1.414213562373095048801689, 3.095573564778559741890516};
inline const std::vector<double> q6_minus = {-3.076378002641703096966026, -1.592450434036251381668999, 0.0, 0.0,
                                             1.592450434036251381668999, 3.076378002641703096966026};
inline const std::vector<double> q7_plus = {-3.197578907340934206680765, -1.820220313629232102803917,
                                            -0.5549581320873711914221949, -0.2534475536532498922887033,
                                            0.8703644892655848887676535, 1.75253703942830539810296,
                                            3.203303378016897106324967};

/// f(e) from the dense LU determinant: (-1)^q det m(e,0,0) + 4.
inline long double dense_f(const hofmom::RationalFlux& flux, long double e) {
    const auto det = hofmom::determinant(hofmom::secular_matrix<long double>(flux, e, 0.0, 0.0));
    return (flux.q_odd() ? -det.re : det.re) + 4.0L;
}

/// Roots of f(e) = side by a 64q-point scan and plain bisection on dense_f.
/// Tangential roots are missed; use only where all roots are simple.
inline std::vector<double> bisection_roots(const hofmom::RationalFlux& flux, double side) {
    const int grid = 64 * flux.q();
    const long double lo = -4.01L, hi = 4.01L;
    std::vector<double> roots;
    long double a = lo;
    long double fa = dense_f(flux, a) - side;
    for (int i = 1; i <= grid; ++i) {
        long double b = lo + (hi - lo) * i / grid;
        long double fb = dense_f(flux, b) - side;
        if ((fa < 0) != (fb < 0)) {
            long double x = a, y = b, fx = fa;
            for (int it = 0; it < 200 && y - x > 1e-17L; ++it) {
                const long double mid = (x + y) / 2;
                const long double fm = dense_f(flux, mid) - side;
                if ((fm < 0) == (fx < 0)) {
                    x = mid;
                    fx = fm;
                } else {
                    y = mid;
                }
            }
            roots.push_back(static_cast<double>((x + y) / 2));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

/// Alternating series sum (-1)^k / (2k+1)^s summed directly in pairs.
inline long double beta_direct(int s, long long terms) {
    long double sum = 0.0L;
    for (long long k = terms - 1; k >= 0; --k) {
        const long double t = std::pow(static_cast<long double>(2 * k + 1), -s);
        sum += (k % 2 == 0) ? t : -t;
    }
    return sum;
}

}  // namespace oracle
