#pragma once

/**
 * @file real.hpp
 * @brief Extended-precision scalar used throughout the library.
 *
 * `Real` is an MPFR-backed float whose precision is fixed when a value is
 * created. New values take the process-wide default, which callers change
 * through `WorkingPrecision`. The default is global, so concurrent callers
 * that need different precisions must serialize.
 */

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <ios>
#include <string>
#include <type_traits>

namespace hofmom {

using Real = boost::multiprecision::mpfr_float;
using Integer = boost::multiprecision::mpz_int;

/// Decimal digits that hold at least `bits` binary digits.
inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Current default precision in bits.
inline unsigned current_precision_bits() {
    return static_cast<unsigned>(std::floor(Real::default_precision() / 0.30102999566398120));
}

/// RAII scope that sets the default precision of newly created `Real`s.
class WorkingPrecision {
public:
    explicit WorkingPrecision(unsigned bits) : saved_(Real::default_precision()) {
        Real::default_precision(bits_to_digits10(bits));
    }
    ~WorkingPrecision() { Real::default_precision(saved_); }

    WorkingPrecision(const WorkingPrecision&) = delete;
    WorkingPrecision& operator=(const WorkingPrecision&) = delete;

private:
    unsigned saved_;
};

/// Scientific decimal string with `digits` significant digits.
inline std::string to_decimal(const Real& x, unsigned digits) {
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

/// Significant digits that represent a value carrying `bits` of precision.
inline unsigned decimal_digits_for(unsigned bits) {
    return static_cast<unsigned>(std::floor(bits * 0.30102999566398120));
}

/// Nearest integer to `x` (ties away from zero).
inline Integer round_to_integer(const Real& x) {
    Integer z;
    mpfr_get_z(z.backend().data(), x.backend().data(), MPFR_RNDNA);
    return z;
}

inline Real to_real(const Integer& z) {
    Real x;
    mpfr_set_z(x.backend().data(), z.backend().data(), MPFR_RNDN);
    return x;
}

/// Power with a non-negative integer exponent, by repeated squaring.
template <class T>
T ipow(T base, unsigned n) {
    T result(1);
    while (n) {
        if (n & 1U) result *= base;
        n >>= 1U;
        if (n) base *= base;
    }
    return result;
}

template <class T>
T pi_value() {
    if constexpr (std::is_same_v<T, Real>) {
        Real x;
        mpfr_const_pi(x.backend().data(), MPFR_RNDN);
        return x;
    } else {
        return static_cast<T>(3.141592653589793238462643383279502884L);
    }
}

}  // namespace hofmom
