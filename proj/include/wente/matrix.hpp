#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace wente {

/// Square dense matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix out(n);
        for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
        return out;
    }

    static Matrix diagonal(std::span<const double> d) {
        Matrix out(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
        return out;
    }

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }

    Matrix transpose() const {
        Matrix out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    /// Principal submatrix on 0-based positions.
    Matrix principal(std::span<const std::size_t> pos) const {
        Matrix out(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = 0; j < pos.size(); ++j) out(i, j) = (*this)(pos[i], pos[j]);
        return out;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (double v : data_) s = std::max(s, std::abs(v));
        return s;
    }

    /// Largest |a_ij - a_ji|.
    double asymmetry() const {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) s = std::max(s, std::abs((*this)(i, j) - (*this)(j, i)));
        return s;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("matrix size mismatch");
    const std::size_t n = a.size();
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

inline Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a(i, j) -= b(i, j);
    return a;
}

}  // namespace wente
