#pragma once

#include <stdexcept>
#include <string>

namespace hofmom {

/// The working precision was too small for a requested result; retry with more bits.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Independent routes to a closed form disagreed.
class SpecialFunctionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

}  // namespace hofmom
