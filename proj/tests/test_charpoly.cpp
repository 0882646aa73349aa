#include "hofmom/charpoly.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace hofmom;

namespace {

const double pi = 3.141592653589793;

double to_d(const Real& x) { return x.convert_to<double>(); }

}  // namespace

TEST(RationalFlux, AcceptsReducedFractions) {
    EXPECT_NO_THROW(RationalFlux(1, 1));
    EXPECT_NO_THROW(RationalFlux(3, 7));
    EXPECT_TRUE(RationalFlux(1, 5).validated());
    EXPECT_FALSE(RationalFlux(2, 5).validated());
}

TEST(RationalFlux, RejectsInvalidFractions) {
    EXPECT_THROW(RationalFlux(1, 0), std::invalid_argument);
    EXPECT_THROW(RationalFlux(2, 4), std::invalid_argument);
    EXPECT_THROW(RationalFlux(0, 3), std::invalid_argument);
    EXPECT_THROW(RationalFlux(3, 3), std::invalid_argument);
    EXPECT_THROW(RationalFlux(2, 1), std::invalid_argument);
}

TEST(SecularMatrix, SingleSiteIncludesBothMomenta) {
    const auto m = secular_matrix<double>(RationalFlux::unit(1), 0.0, 0.0, 0.0);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_DOUBLE_EQ(m(0, 0).re, 4.0);
    const auto m2 = secular_matrix<double>(RationalFlux::unit(1), 0.5, pi / 2, 0.0);
    EXPECT_NEAR(m2(0, 0).re, 2.0 - 0.5, 1e-15);
}

TEST(SecularMatrix, ThreeSiteDeterminantAtOrigin) {
    const auto d = determinant(secular_matrix<double>(RationalFlux::unit(3), 0.0, 0.0, 0.0));
    EXPECT_NEAR(d.re, 4.0, 1e-12);
    EXPECT_NEAR(d.im, 0.0, 1e-12);
}

TEST(SecularMatrix, TwoSiteMomentumShift) {
    const RationalFlux f = RationalFlux::unit(2);
    const auto d1 = determinant(secular_matrix<double>(f, 0.0, pi / 2, 0.0));
    const auto d0 = determinant(secular_matrix<double>(f, 0.0, 0.0, 0.0));
    EXPECT_NEAR(d1.re - d0.re, 4.0, 1e-12);
}

TEST(SecularMatrix, IsHermitian) {
    const auto m = secular_matrix<double>(RationalFlux(2, 7), 0.3, 0.7, -1.2);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            EXPECT_NEAR(m(i, j).re, m(j, i).re, 1e-15);
            EXPECT_NEAR(m(i, j).im, -m(j, i).im, 1e-15);
        }
    }
}

TEST(SecularMatrix, RejectsMomentumOutsideZone) {
    EXPECT_THROW(secular_matrix<double>(RationalFlux::unit(3), 0.0, 4.0, 0.0), std::invalid_argument);
    EXPECT_THROW(secular_determinant<double>(RationalFlux::unit(3), 0.0, 0.0, -3.5), std::invalid_argument);
}

TEST(SecularDeterminant, ContinuantMatchesDenseLU) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> e(-4, 4), k(-pi, pi);
    for (int q = 1; q <= 25; ++q) {
        for (int rep = 0; rep < 4; ++rep) {
            const double ee = e(rng), kx = k(rng), ky = k(rng);
            const RationalFlux f = RationalFlux::unit(q);
            const double dense = determinant(secular_matrix<double>(f, ee, kx, ky)).re;
            const double fast = secular_determinant<double>(f, ee, kx, ky);
            EXPECT_NEAR(fast, dense, 1e-9 * std::max(1.0, std::abs(dense))) << "q=" << q;
        }
    }
}

TEST(ChambersDefect, VanishesAtSpecCases) {
    EXPECT_LE(chambers_defect<double>(RationalFlux::unit(3), 0.7, 1.1, -0.3), 1e-9);
    EXPECT_LE(chambers_defect<double>(RationalFlux::unit(4), 2.0, pi, pi), 1e-9);
    EXPECT_LE(chambers_defect<double>(RationalFlux::unit(7), -3.5, 0.4, 2.9), 1e-8);
}

TEST(ChambersDefect, DetectsABrokenIdentity) {
    // Shifting e between the two determinants must show up as a defect.
    const RationalFlux f = RationalFlux::unit(5);
    const double d = determinant(secular_matrix<double>(f, 0.3, 0.0, 0.0)).re -
                     determinant(secular_matrix<double>(f, 0.31, 0.0, 0.0)).re;
    EXPECT_GT(std::abs(d), 1e-3);
}

TEST(Charpoly, KnownSmallPolynomials) {
    EXPECT_EQ(charpoly(RationalFlux::unit(1)).integer_coefficients(), (std::vector<Integer>{-1}));
    EXPECT_EQ(charpoly(RationalFlux::unit(2)).integer_coefficients(), (std::vector<Integer>{-1, 4}));
    EXPECT_EQ(charpoly(RationalFlux::unit(3)).integer_coefficients(), (std::vector<Integer>{-1, 6}));
    EXPECT_EQ(charpoly(RationalFlux::unit(4)).integer_coefficients(), (std::vector<Integer>{-1, 8, -4}));
    EXPECT_EQ(charpoly(RationalFlux::unit(6)).integer_coefficients(), (std::vector<Integer>{-1, 12, -24, 4}));
}

TEST(Charpoly, NonIntegralCoefficientsMatchInterpolationOracle) {
    for (const auto& [q, ref] : {std::pair{5, oracle::f5}, std::pair{7, oracle::f7}}) {
        const CharPoly cp = charpoly(RationalFlux::unit(q));
        EXPECT_FALSE(cp.integral());
        EXPECT_THROW(cp.integer_coefficients(), std::logic_error);
        for (std::size_t j = 0; j < cp.coefficients().size(); ++j) {
            EXPECT_NEAR(-to_d(cp.coefficients()[j]), ref[2 * j], 1e-15 * std::max(1.0, std::abs(ref[2 * j])))
                << "q=" << q << " j=" << j;
        }
    }
}

TEST(Charpoly, LeadingCoefficientConvention) {
    for (int q : {1, 2, 9, 40, 101}) EXPECT_EQ(charpoly(RationalFlux::unit(q)).coefficients().front(), -1);
}

TEST(Charpoly, RejectsMalformedCoefficientLists) {
    EXPECT_THROW(CharPoly(RationalFlux::unit(4), {Real(-1), Real(8)}, 64), std::invalid_argument);
    EXPECT_THROW(CharPoly(RationalFlux::unit(3), {Real(1), Real(6)}, 64), std::invalid_argument);
}

TEST(Charpoly, TooLittlePrecisionIsReported) {
    EXPECT_THROW(charpoly(RationalFlux::unit(120), 40), PrecisionExhausted);
}

TEST(EvalChambers, CubicValues) {
    const CharPoly cp = charpoly(RationalFlux::unit(3));
    EXPECT_DOUBLE_EQ(eval_chambers(cp, 2.0), -4.0);
    EXPECT_DOUBLE_EQ(eval_chambers(cp, -2.0), 4.0);
    EXPECT_DOUBLE_EQ(eval_chambers(charpoly(RationalFlux::unit(4)), 0.0), 4.0);
    EXPECT_DOUBLE_EQ(eval_chambers(charpoly(RationalFlux::unit(1)), 1.5), 1.5);
}

TEST(EvalChambers, MatchesDenseDeterminantForm) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> e(-4, 4);
    WorkingPrecision guard(160);
    for (int q = 1; q <= 30; ++q) {
        const RationalFlux f = RationalFlux::unit(q);
        const CharPoly cp = charpoly(f);
        for (int rep = 0; rep < 20; ++rep) {
            const Real x(e(rng));
            const Real det = determinant(secular_matrix<Real>(f, x, 0.0, 0.0)).re;
            const Real fe = eval_chambers(cp, x);
            const int s = f.q_odd() ? -1 : 1;
            EXPECT_LE(to_d(Real(abs(det + 4 * s - s * fe))), 1e-8 * std::max(1.0, std::abs(to_d(fe)))) << "q=" << q;
        }
    }
}
