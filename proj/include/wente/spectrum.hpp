// Symmetric eigendecomposition (Householder tridiagonalization followed by
// implicit QL), negative-eigenvalue counting and the nullity diagnostic.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wente/matrix.hpp"

namespace wente {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column j belongs to values[j]
};

namespace detail {

// Householder reduction to tridiagonal form. On return `v` holds the
// accumulated orthogonal transform, d the diagonal and e the subdiagonal
// (e[0] unused).
inline void tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = v.size();
    for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (std::size_t k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit QL iteration on the tridiagonal matrix, accumulating rotations into v.
inline void implicit_ql(Matrix& v, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = v.size();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 60) throw NumericalError("implicit QL did not converge");
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0;
                double s2 = 0.0;
                for (std::size_t ii = m; ii-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[ii];
                    h = c * p;
                    r = std::hypot(p, e[ii]);
                    e[ii + 1] = s * r;
                    s = e[ii] / r;
                    c = p / r;
                    p = c * d[ii] - s * g;
                    d[ii + 1] = h + s * (c * g + s * d[ii]);
                    for (std::size_t k = 0; k < n; ++k) {
                        h = v(k, ii + 1);
                        v(k, ii + 1) = s * v(k, ii) + c * h;
                        v(k, ii) = c * v(k, ii) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

}  // namespace detail

/// Full eigendecomposition of a symmetric matrix. Deterministic: the same
/// input always produces bit-identical output.
inline EigenDecomposition eigen_decompose(const Matrix& a) {
    const std::size_t n = a.size();
    const double asym = a.asymmetry();
    if (asym > 1e-12 * std::max(1.0, a.max_abs())) {
        throw NumericalError("eigen_decompose needs a symmetric matrix (asymmetry " + std::to_string(asym) + ")");
    }
    EigenDecomposition out;
    if (n == 0) return out;

    Matrix v = a;
    std::vector<double> d(n), e(n);
    detail::tridiagonalize(v, d, e);
    detail::implicit_ql(v, d, e);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
    out.values.resize(n);
    out.vectors = Matrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = d[order[j]];
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
    }
    return out;
}

/// Largest ||A v - lambda v||_2 over the returned pairs.
inline double max_residual(const Matrix& a, const EigenDecomposition& dec) {
    const std::size_t n = a.size();
    double worst = 0.0;
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = -dec.values[j] * dec.vectors(i, j);
            const auto row = a.row(i);
            for (std::size_t k = 0; k < n; ++k) acc += row[k] * dec.vectors(k, j);
            s2 += acc * acc;
        }
        worst = std::max(worst, std::sqrt(s2));
    }
    return worst;
}

struct SpectrumEstimate {
    int m = 0;
    std::vector<double> eigenvalues;  // ascending
    double norm = 0.0;                // spectral norm max |lambda|
    double zero_tol = 0.0;
    int negative_count = 0;  // #{lambda < -zero_tol}
    int uncertain_count = 0;  // #{|lambda| <= zero_tol}
    double residual = 0.0;     // measured max ||A v - lambda v||
    double residual_bound = 0.0;  // 1e-10 ||A||, the acceptance ceiling
    std::vector<double> first_positive_six;
};

struct NegativeCount {
    int count = 0;
    int uncertain = 0;
};

/// Relative default for the zero tolerance: 1e-6 ||A||.
inline double default_zero_tol(double norm) { return 1e-6 * norm; }

inline NegativeCount count_negative(const std::vector<double>& eigenvalues, double zero_tol) {
    NegativeCount out;
    for (double v : eigenvalues) {
        if (v < -zero_tol) {
            ++out.count;
        } else if (std::abs(v) <= zero_tol) {
            ++out.uncertain;
        }
    }
    return out;
}

inline NegativeCount count_negative(const SpectrumEstimate& est, double zero_tol) {
    return count_negative(est.eigenvalues, zero_tol);
}

/// The six eigenvalues following the negative block. Their size measures how
/// far the truncation is from resolving the six-dimensional null space.
inline std::vector<double> nullity_diagnostic(const SpectrumEstimate& est) {
    const auto first = static_cast<std::size_t>(est.negative_count);
    if (first + 6 > est.eigenvalues.size()) {
        throw NumericalError("nullity diagnostic needs six eigenvalues above the negative block");
    }
    return {est.eigenvalues.begin() + static_cast<std::ptrdiff_t>(first),
            est.eigenvalues.begin() + static_cast<std::ptrdiff_t>(first + 6)};
}

/// Index sets of the connected components of the nonzero pattern of a,
/// each ascending, ordered by their smallest index.
inline std::vector<std::vector<std::size_t>> coupled_blocks(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a(i, j) != 0.0 || a(j, i) != 0.0) {
                const std::size_t ri = find(i), rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = blocks.size();
            blocks.emplace_back();
        }
        blocks[slot[r]].push_back(i);
    }
    return blocks;
}

/// zero_tol < 0 selects default_zero_tol. Exactly decoupled blocks are
/// diagonalized separately; the residual is measured block by block, which
/// equals the full residual because the coupling between blocks is zero.
inline SpectrumEstimate eigen_symmetric(const Matrix& a, double zero_tol = -1.0) {
    const double asym = a.asymmetry();
    if (asym > 1e-12 * std::max(1.0, a.max_abs())) {
        throw NumericalError("eigen_symmetric needs a symmetric matrix (asymmetry " + std::to_string(asym) + ")");
    }
    SpectrumEstimate est;
    est.m = static_cast<int>(a.size());
    for (const auto& block : coupled_blocks(a)) {
        const Matrix sub = a.principal(block);
        const EigenDecomposition dec = eigen_decompose(sub);
        est.residual = std::max(est.residual, max_residual(sub, dec));
        est.eigenvalues.insert(est.eigenvalues.end(), dec.values.begin(), dec.values.end());
    }
    std::sort(est.eigenvalues.begin(), est.eigenvalues.end());
    for (double v : est.eigenvalues) est.norm = std::max(est.norm, std::abs(v));
    est.zero_tol = zero_tol < 0.0 ? default_zero_tol(est.norm) : zero_tol;
    const NegativeCount c = count_negative(est.eigenvalues, est.zero_tol);
    est.negative_count = c.count;
    est.uncertain_count = c.uncertain;
    est.residual_bound = 1e-10 * std::max(est.norm, std::numeric_limits<double>::min());
    if (est.residual > est.residual_bound) {
        throw NumericalError("eigen residual " + std::to_string(est.residual) + " exceeds 1e-10 ||A||");
    }
    if (static_cast<std::size_t>(est.negative_count) + 6 <= est.eigenvalues.size()) {
        est.first_positive_six = nullity_diagnostic(est);
    }
    return est;
}

}  // namespace wente
