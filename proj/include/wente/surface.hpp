// Walter parameters of a symmetric Wente torus, its conformal lattice and
// the potential V = 4H cosh(F) of the Jacobi operator.
#pragma once

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "wente/elliptic.hpp"

namespace wente {

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The translational period problem fixes this angle for every torus.
inline constexpr double kThetaBarDeg = 65.354955354;
/// 90 degrees minus kThetaBarDeg; theta must stay strictly below it.
inline constexpr double kThetaMaxDeg = 24.645044646;

inline double degrees_to_radians(double deg) { return deg * (std::numbers::pi / 180.0); }

enum class Parity { odd, even };

inline const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

/// Generators (a1,a2), (b1,b2) of the lattice Gamma with C/Gamma the torus.
struct Lattice {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    Parity parity = Parity::odd;

    double determinant() const { return a1 * b2 - a2 * b1; }
    double area() const { return std::abs(determinant()); }
};

struct SurfaceParams {
    int ell = 0;
    int n = 0;
    double H = 0.5;
    double theta_deg = 0.0;
    double theta_bar_deg = kThetaBarDeg;
    EllipticModulus k{0.0};
    EllipticModulus k_bar{0.0};
    double gamma = 0.0;
    double gamma_bar = 0.0;
    double alpha = 0.0;
    double alpha_bar = 0.0;
    double x_period = 0.0;  // period of f(x) = gamma cn_k(alpha x)
    double y_period = 0.0;  // period of g(y) = gamma_bar cn_kbar(alpha_bar y)

    Parity parity() const { return ell % 2 != 0 ? Parity::odd : Parity::even; }
    std::string label() const { return std::to_string(ell) + "/" + std::to_string(n); }
};

inline void validate_fraction(int ell, int n) {
    if (ell <= 0 || n <= 0) {
        throw ParameterError("surface label needs positive integers, got " + std::to_string(ell) + "/" +
                             std::to_string(n));
    }
    if (std::gcd(ell, n) != 1) {
        throw ParameterError("surface label " + std::to_string(ell) + "/" + std::to_string(n) +
                             " is not a reduced fraction");
    }
    if (!(n < ell && ell < 2 * n)) {
        throw ParameterError("surface label " + std::to_string(ell) + "/" + std::to_string(n) +
                             " is outside (1, 2)");
    }
}

inline SurfaceParams build_surface(int ell, int n, double H, double theta_deg) {
    validate_fraction(ell, n);
    if (!(H > 0.0) || !std::isfinite(H)) {
        throw ParameterError("mean curvature H must be positive");
    }
    if (!(theta_deg > 0.0 && theta_deg < kThetaMaxDeg)) {
        throw ParameterError("theta must lie in (0, " + std::to_string(kThetaMaxDeg) + ") degrees, got " +
                             std::to_string(theta_deg));
    }

    SurfaceParams p;
    p.ell = ell;
    p.n = n;
    p.H = H;
    p.theta_deg = theta_deg;
    p.theta_bar_deg = kThetaBarDeg;

    const double theta = degrees_to_radians(theta_deg);
    const double theta_bar = degrees_to_radians(kThetaBarDeg);
    p.k = EllipticModulus(std::sin(theta));
    p.k_bar = EllipticModulus(std::sin(theta_bar));
    p.gamma = std::sqrt(std::tan(theta));
    p.gamma_bar = std::sqrt(std::tan(theta_bar));
    const double denom = std::sin(2.0 * (theta + theta_bar));
    p.alpha = std::sqrt(4.0 * H * std::sin(2.0 * theta_bar) / denom);
    p.alpha_bar = std::sqrt(4.0 * H * std::sin(2.0 * theta) / denom);
    p.x_period = 4.0 * complete_K(p.k) / p.alpha;
    p.y_period = 4.0 * complete_K(p.k_bar) / p.alpha_bar;
    return p;
}

inline double f_factor(const SurfaceParams& p, double x) { return p.gamma * jacobi_cn(p.alpha * x, p.k); }
inline double g_factor(const SurfaceParams& p, double y) {
    return p.gamma_bar * jacobi_cn(p.alpha_bar * y, p.k_bar);
}

/// 4H cosh(4 artanh t), written as the equivalent rational function
/// 4H (2 c^2 - 1) with c = cosh(2 artanh t) = (1 + t^2) / (1 - t^2).
inline double potential_from_product(double H, double t) {
    const double t2 = t * t;
    const double c = (1.0 + t2) / (1.0 - t2);
    return 4.0 * H * (2.0 * c * c - 1.0);
}

inline double potential(const SurfaceParams& p, double x, double y) {
    return potential_from_product(p.H, f_factor(p, x) * g_factor(p, y));
}

struct PotentialExtrema {
    double v_min;
    double v_max;
};

/// V attains 4H where cn vanishes and its maximum at the origin where fg = gamma gamma_bar.
inline PotentialExtrema potential_extrema(const SurfaceParams& p) {
    return {4.0 * p.H, potential_from_product(p.H, p.gamma * p.gamma_bar)};
}

inline Lattice lattice(const SurfaceParams& p) {
    Lattice lat;
    lat.parity = p.parity();
    lat.b1 = 0.0;
    lat.b2 = p.y_period;
    if (lat.parity == Parity::odd) {
        lat.a1 = p.n * p.x_period;
        lat.a2 = 0.0;
    } else {
        lat.a1 = p.n * p.x_period / 2.0;
        lat.a2 = p.y_period / 2.0;
    }
    return lat;
}

}  // namespace wente
