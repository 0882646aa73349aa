#pragma once

/**
 * @file dense.hpp
 * @brief Small dense matrix helpers that work with any real scalar,
 * including `Real`. Only what the secular-matrix code needs.
 */

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hofmom {

/// Minimal complex number over an arbitrary real scalar.
template <class T>
struct Complex {
    T re{0};
    T im{0};

    Complex() = default;
    Complex(T r) : re(std::move(r)), im(0) {}
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {T(a.re - b.re), T(a.im - b.im)}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {T(a.re * b.re - a.im * b.im), T(a.re * b.im + a.im * b.re)};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        T den = b.re * b.re + b.im * b.im;
        return {T((a.re * b.re + a.im * b.im) / den), T((a.im * b.re - a.re * b.im) / den)};
    }
    T norm() const { return re * re + im * im; }
    Complex conj() const { return {re, T(-im)}; }
};

/// Row-major square matrix.
template <class V>
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const noexcept { return n_; }
    V& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const V& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<V> data_;
};

/// Determinant by LU with partial pivoting. O(n^3); used as a slow oracle.
template <class T>
Complex<T> determinant(SquareMatrix<Complex<T>> a) {
    const std::size_t n = a.size();
    Complex<T> det(T(1));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        T best = a(col, col).norm();
        for (std::size_t r = col + 1; r < n; ++r) {
            T mag = a(r, col).norm();
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0) return Complex<T>(T(0));
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            det = det * Complex<T>(T(-1));
        }
        const Complex<T> diag = a(col, col);
        det = det * diag;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex<T> factor = a(r, col) / diag;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) = a(r, j) - factor * a(col, j);
        }
    }
    return det;
}

}  // namespace hofmom
