#include "hofmom/spectrum.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace hofmom;

namespace {

double to_d(const Real& x) { return x.convert_to<double>(); }

void expect_roots(const std::vector<Real>& got, const std::vector<double>& want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(to_d(got[i]), want[i], tol) << "index " << i;
}

}  // namespace

TEST(EdgeEnergies, CubicRootsInClosedForm) {
    const RationalFlux f = RationalFlux::unit(3);
    const double s3 = std::sqrt(3.0);
    expect_roots(edge_energies(f, Side::plus), {-2.0, 1.0 - s3, 1.0 + s3}, 1e-15);
    expect_roots(edge_energies(f, Side::minus), {-1.0 - s3, -1.0 + s3, 2.0}, 1e-15);
}

TEST(EdgeEnergies, CubicRootsToFullPrecision) {
    const auto roots = edge_energies(RationalFlux::unit(3), Side::plus, 192);
    WorkingPrecision guard(256);
    const Real exact = 1 + sqrt(Real(3));
    EXPECT_LE(to_d(Real(abs(roots[2] - exact) / exact)), std::ldexp(1.0, -191));
}

TEST(EdgeEnergies, SingleSite) {
    expect_roots(edge_energies(RationalFlux::unit(1), Side::plus), {4.0}, 0.0);
    expect_roots(edge_energies(RationalFlux::unit(1), Side::minus), {-4.0}, 0.0);
}

TEST(EdgeEnergies, MatchPolynomialRootOracle) {
    expect_roots(edge_energies(RationalFlux::unit(5), Side::plus), oracle::q5_plus, 1e-15);
    expect_roots(edge_energies(RationalFlux::unit(7), Side::plus), oracle::q7_plus, 1e-15);
    expect_roots(edge_energies(RationalFlux::unit(6), Side::plus), oracle::q6_plus, 1e-15);
}

TEST(EdgeEnergies, TangentialRootsAreReportedTwice) {
    // q = 4: f(e) = e^4 - 8 e^2 + 4 touches +4 at e = 0.
    const auto plus = edge_energies(RationalFlux::unit(4), Side::plus);
    ASSERT_EQ(plus.size(), 4u);
    EXPECT_NEAR(to_d(plus[1]), 0.0, 1e-25);
    EXPECT_NEAR(to_d(plus[2]), 0.0, 1e-25);
    EXPECT_NEAR(to_d(plus[3]), 2.0 * std::sqrt(2.0), 1e-15);
    // q = 6 touches -4 at the centre instead.
    expect_roots(edge_energies(RationalFlux::unit(6), Side::minus), oracle::q6_minus, 1e-15);
}

TEST(EdgeEnergies, AgreeWithDenseBisectionOracle) {
    for (int q : {5, 9, 11, 15}) {
        const RationalFlux f = RationalFlux::unit(q);
        for (Side side : {Side::plus, Side::minus}) {
            const auto want = oracle::bisection_roots(f, side_value(side));
            expect_roots(edge_energies(f, side), want, 1e-10);
        }
    }
}

TEST(EdgeEnergies, CharPolyOverloadUsesItsFlux) {
    const CharPoly cp = charpoly(RationalFlux::unit(5));
    expect_roots(edge_energies(cp, Side::plus), oracle::q5_plus, 1e-15);
}

TEST(EdgeEnergies, ResolveEveryRootAtLargeQ) {
    const EdgeSpectrum s = edge_spectrum(RationalFlux::unit(201), 128);
    EXPECT_EQ(s.e_plus.size(), 201u);
    EXPECT_EQ(s.e_minus.size(), 201u);
    EXPECT_TRUE(std::is_sorted(s.e_plus.begin(), s.e_plus.end()));
    EXPECT_LE(to_d(s.e_plus.back()), 4.0);
    EXPECT_GE(to_d(s.e_plus.front()), -4.0);
}

TEST(EdgeEnergies, GeneralNumerator) {
    const EdgeSpectrum s = edge_spectrum(RationalFlux(2, 5), 128);
    // A non-unit numerator permutes the on-site energies along the chain.
    expect_roots(s.e_plus, oracle::bisection_roots(RationalFlux(2, 5), 4.0), 1e-10);
}

TEST(Bands, SingleSiteBand) {
    const auto b = bands(edge_spectrum(RationalFlux::unit(1)));
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(to_d(b[0].lo), -4.0);
    EXPECT_EQ(to_d(b[0].hi), 4.0);
}

TEST(Bands, ThreeBandsOfTheCubic) {
    const auto b = bands(charpoly(RationalFlux::unit(3)));
    ASSERT_EQ(b.size(), 3u);
    const double s3 = std::sqrt(3.0);
    EXPECT_NEAR(to_d(b[0].lo), -1 - s3, 1e-15);
    EXPECT_NEAR(to_d(b[0].hi), -2, 1e-15);
    EXPECT_NEAR(to_d(b[1].lo), 1 - s3, 1e-15);
    EXPECT_NEAR(to_d(b[1].hi), -1 + s3, 1e-15);
    EXPECT_NEAR(to_d(b[2].lo), 2, 1e-15);
    EXPECT_NEAR(to_d(b[2].hi), 1 + s3, 1e-15);
}

TEST(Bands, FourBandsTouchAtCentre) {
    const auto b = bands(edge_spectrum(RationalFlux::unit(4)));
    ASSERT_EQ(b.size(), 4u);
    EXPECT_NEAR(to_d(b[1].hi), 0.0, 1e-25);
    EXPECT_NEAR(to_d(b[2].lo), 0.0, 1e-25);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(to_d(b[i].lo), -to_d(b[3 - i].hi), 1e-15);
}

TEST(Bands, AreDisjointAndOrdered) {
    for (int q : {7, 8, 30, 31}) {
        const auto b = bands(edge_spectrum(RationalFlux::unit(q), 128));
        for (std::size_t i = 0; i < b.size(); ++i) {
            EXPECT_LE(b[i].lo, b[i].hi);
            if (i > 0) {
                EXPECT_LE(to_d(b[i - 1].hi), to_d(b[i].lo) + 1e-20) << "q=" << q << " band " << i;
            }
        }
    }
}
