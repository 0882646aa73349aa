#pragma once

#include <numeric>
#include <stdexcept>
#include <string>

namespace hofmom {

/**
 * @brief Reduced rational flux p/q per plaquette (gamma = 2 pi p / q).
 *
 * Invariants: gcd(p, q) = 1 and 1 <= p < q, except q = 1 which requires p = 1.
 * Closed-form results in this library are established for p = 1 only; other
 * numerators are accepted and reported as unvalidated.
 */
class RationalFlux {
public:
    RationalFlux(int p, int q) : p_(p), q_(q) {
        if (q < 1) throw std::invalid_argument("flux denominator must be >= 1, got " + std::to_string(q));
        if (q == 1) {
            if (p != 1) throw std::invalid_argument("flux 1/1 is the only allowed fraction with q = 1");
        } else if (p < 1 || p >= q) {
            throw std::invalid_argument("flux numerator must satisfy 1 <= p < q");
        }
        if (std::gcd(p, q) != 1) {
            throw std::invalid_argument("flux " + std::to_string(p) + "/" + std::to_string(q) + " is not reduced");
        }
    }

    static RationalFlux unit(int q) { return RationalFlux(1, q); }

    int p() const noexcept { return p_; }
    int q() const noexcept { return q_; }
    bool q_odd() const noexcept { return (q_ & 1) != 0; }
    /// True when p = 1, the case the closed forms cover.
    bool validated() const noexcept { return p_ == 1; }

    friend bool operator==(const RationalFlux&, const RationalFlux&) = default;

private:
    int p_;
    int q_;
};

}  // namespace hofmom
