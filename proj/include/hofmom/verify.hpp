#pragma once

/**
 * @file verify.hpp
 * @brief Randomized identity suites over the whole library.
 *
 * Each suite draws its cases from a fixed-seed generator, so a report is
 * reproducible. Defects are maxima over the cases of the quantity each
 * identity says must vanish.
 */

#include "hofmom/charpoly.hpp"
#include "hofmom/moments.hpp"
#include "hofmom/packets.hpp"
#include "hofmom/real.hpp"
#include "hofmom/spectrum.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace hofmom {

enum class VerifyLevel { quick, full };

struct IdentityCheck {
    std::string name;
    int cases = 0;
    double max_defect = 0.0;
    double tolerance = 0.0;

    bool passed() const { return cases > 0 && max_defect <= tolerance; }
};

struct VerifyReport {
    std::vector<IdentityCheck> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed(); });
    }
};

namespace detail {

class CaseGenerator {
public:
    explicit CaseGenerator(std::uint64_t seed) : rng_(seed) {}

    int any_q(int qmax) { return std::uniform_int_distribution<int>(1, qmax)(rng_); }
    int odd_q(int qmax) { return 2 * std::uniform_int_distribution<int>(0, (qmax - 1) / 2)(rng_) + 1; }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int pick(const std::vector<int>& values) {
        return values[std::uniform_int_distribution<std::size_t>(0, values.size() - 1)(rng_)];
    }

private:
    std::mt19937_64 rng_;
};

inline double to_double(const Real& x) { return x.convert_to<double>(); }

/// Spectra are reused across the suites that need them.
class SpectrumCache {
public:
    explicit SpectrumCache(unsigned bits) : bits_(bits) {}

    const EdgeSpectrum& spectrum(int q) {
        auto it = spectra_.find(q);
        if (it == spectra_.end()) it = spectra_.emplace(q, edge_spectrum(RationalFlux::unit(q), bits_)).first;
        return it->second;
    }
    const PacketSplit& packets(int q) {
        auto it = packets_.find(q);
        if (it == packets_.end()) it = packets_.emplace(q, packet_split(RationalFlux::unit(q), bits_)).first;
        return it->second;
    }
    unsigned bits() const { return bits_; }

private:
    unsigned bits_;
    std::map<int, EdgeSpectrum> spectra_;
    std::map<int, PacketSplit> packets_;
};

inline Real binomial(int n, int k) {
    Real c(1);
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace detail

/**
 * @brief Runs the identity suites: the Chambers relation, the odd-q
 * factorization, the polynomial form of det m(e,0,0), the odd-q edge
 * symmetry, the packet absolute-value identity and the reassembly of the
 * bandwidth power sum from cross moments.
 *
 * `quick` draws 20 cases per suite over smaller q, `full` draws 100.
 */
inline VerifyReport run_identity_suites(VerifyLevel level, std::uint64_t seed = 20260401) {
    const bool full = level == VerifyLevel::full;
    const int cases = full ? 100 : 20;
    const int dense_qmax = 30;
    const int spectrum_qmax = full ? 101 : 51;
    const double pi = pi_value<double>();
    detail::CaseGenerator gen(seed);
    detail::SpectrumCache cache(default_precision_bits);
    VerifyReport report;

    {
        IdentityCheck c{"chambers_identity", 0, 0.0, 1e-8};
        WorkingPrecision guard(128);
        for (int i = 0; i < cases; ++i) {
            const RationalFlux flux = RationalFlux::unit(gen.any_q(dense_qmax));
            const Real e(gen.uniform(-4, 4));
            const double kx = gen.uniform(-pi, pi), ky = gen.uniform(-pi, pi);
            c.max_defect = std::max(c.max_defect, detail::to_double(chambers_defect<Real>(flux, e, kx, ky)));
            ++c.cases;
        }
        report.checks.push_back(c);
    }
    {
        IdentityCheck c{"factorization_identity", 0, 0.0, 1e-8};
        WorkingPrecision guard(128);
        for (int i = 0; i < cases; ++i) {
            const RationalFlux flux = RationalFlux::unit(gen.odd_q(spectrum_qmax));
            const Real e(gen.uniform(-4, 4));
            c.max_defect = std::max(c.max_defect, detail::to_double(factorization_defect<Real>(flux, e)));
            ++c.cases;
        }
        report.checks.push_back(c);
    }
    {
        // |det m(e,0,0) + 4 (-1)^q - (-1)^q f(e)| / max(1, |f(e)|), dense determinant
        // against the extracted coefficients.
        IdentityCheck c{"polynomial_form", 0, 0.0, 1e-8};
        std::map<int, CharPoly> polys;
        for (int i = 0; i < cases; ++i) {
            const int q = gen.any_q(dense_qmax);
            const RationalFlux flux = RationalFlux::unit(q);
            auto it = polys.find(q);
            if (it == polys.end()) it = polys.emplace(q, charpoly(flux)).first;
            WorkingPrecision guard(128);
            const Real e(gen.uniform(-4, 4));
            const Real det = determinant(secular_matrix<Real>(flux, e, 0.0, 0.0)).re;
            const Real f = eval_chambers(it->second, e);
            const int sign = flux.q_odd() ? -1 : 1;
            const Real defect = abs(det + 4 * sign - sign * f) / std::max(Real(1), Real(abs(f)));
            c.max_defect = std::max(c.max_defect, detail::to_double(defect));
            ++c.cases;
        }
        report.checks.push_back(c);
    }
    {
        IdentityCheck c{"odd_q_edge_symmetry", 0, 0.0, 1e-8};
        for (int i = 0; i < cases; ++i) {
            const EdgeSpectrum& s = cache.spectrum(gen.odd_q(spectrum_qmax));
            WorkingPrecision guard(cache.bits());
            const std::size_t q = s.e_plus.size();
            for (std::size_t r = 0; r < q; ++r) {
                c.max_defect = std::max(c.max_defect, detail::to_double(Real(abs(s.e_minus[r] + s.e_plus[q - 1 - r]))));
            }
            ++c.cases;
        }
        report.checks.push_back(c);
    }
    {
        // -sum (-1)^r e_r(4)^n = sum |e++|^n - sum |e--|^n, relative.
        IdentityCheck c{"packet_absolute_value", 0, 0.0, 1e-8};
        for (int i = 0; i < cases; ++i) {
            const int q = gen.odd_q(spectrum_qmax);
            const int n = gen.pick({1, 3, 5});
            const EdgeSpectrum& s = cache.spectrum(q);
            const PacketSplit& ps = cache.packets(q);
            const Real lhs = moment_alternating(s, n).raw / 2;
            const Real rhs = packet_power_difference(ps, n, true);
            WorkingPrecision guard(cache.bits());
            c.max_defect = std::max(c.max_defect, detail::to_double(Real(abs(lhs - rhs) / abs(rhs))));
            ++c.cases;
        }
        report.checks.push_back(c);
    }
    {
        // sum_{k <= (n-1)/2} C(n,k) (-1)^k cross(k) = bandwidth power sum, relative.
        IdentityCheck c{"expansion_reassembly", 0, 0.0, 1e-8};
        for (int i = 0; i < cases; ++i) {
            const int q = gen.odd_q(spectrum_qmax);
            const int n = gen.pick({1, 3, 5, 7});
            const EdgeSpectrum& s = cache.spectrum(q);
            WorkingPrecision guard(cache.bits() + guard_bits);
            Real sum(0);
            for (int k = 0; k <= (n - 1) / 2; ++k) {
                Real term = detail::binomial(n, k) * moment_cross(s, n, k).raw;
                sum += k % 2 == 0 ? term : Real(-term);
            }
            const Real direct = moment_bandwidth_power(s, n).raw;
            c.max_defect = std::max(c.max_defect, detail::to_double(Real(abs(sum - direct) / abs(direct))));
            ++c.cases;
        }
        report.checks.push_back(c);
    }
    return report;
}

}  // namespace hofmom
