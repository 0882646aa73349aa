#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace hofmom {

/**
 * @brief Neumaier (improved Kahan) running sum.
 */
template <class T>
class CompensatedSum {
public:
    CompensatedSum() : sum_(0), carry_(0) {}

    void add(const T& x) {
        using std::abs;
        T t(sum_ + x);
        if (abs(sum_) >= abs(x)) {
            carry_ += T(sum_ - t) + x;
        } else {
            carry_ += T(x - t) + sum_;
        }
        sum_ = std::move(t);
    }

    T value() const { return T(sum_ + carry_); }

private:
    T sum_;
    T carry_;
};

/**
 * @brief Sum of `terms` for near-cancelling alternating series.
 *
 * Positive and negative terms are accumulated separately, each in order of
 * increasing magnitude with compensation, and the two partial sums are
 * combined last.
 */
template <class T>
T cancelling_sum(std::vector<T> terms) {
    using std::abs;
    auto split = std::partition(terms.begin(), terms.end(), [](const T& x) { return x >= 0; });
    auto by_magnitude = [](const T& a, const T& b) { return abs(a) < abs(b); };
    std::sort(terms.begin(), split, by_magnitude);
    std::sort(split, terms.end(), by_magnitude);
    CompensatedSum<T> positive, negative;
    for (auto it = terms.begin(); it != split; ++it) positive.add(*it);
    for (auto it = split; it != terms.end(); ++it) negative.add(*it);
    return T(positive.value() + negative.value());
}

}  // namespace hofmom
