// Complete elliptic integral of the first kind and the Jacobi elliptic
// functions, evaluated with the arithmetic-geometric mean.
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wente {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Elliptic modulus k in [0, 1) together with the parameter m = k^2.
class EllipticModulus {
public:
    explicit EllipticModulus(double k) : k_(k), m_(k * k) {
        if (!(k >= 0.0 && k < 1.0)) {
            throw DomainError("elliptic modulus must lie in [0, 1), got " + std::to_string(k));
        }
    }

    double k() const noexcept { return k_; }
    double m() const noexcept { return m_; }
    /// Complementary modulus sqrt(1 - k^2).
    double complement() const noexcept { return std::sqrt((1.0 - k_) * (1.0 + k_)); }

private:
    double k_;
    double m_;
};

inline double agm(double a, double g) {
    for (int it = 0; it < 64; ++it) {
        const double next = 0.5 * (a + g);
        if (std::abs(a - g) <= 4.0 * std::numeric_limits<double>::epsilon() * next) {
            return next;
        }
        g = std::sqrt(a * g);
        a = next;
    }
    return 0.5 * (a + g);
}

/// K(k) = pi / (2 agm(1, k')).
inline double complete_K(const EllipticModulus& k) {
    return std::numbers::pi / (2.0 * agm(1.0, k.complement()));
}

/// Overload for raw moduli; throws DomainError outside [0, 1).
inline double complete_K(double k) { return complete_K(EllipticModulus(k)); }

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

namespace detail {

// Descending Landen sequence (AGM form). Accurate for |u| <= K(k).
inline JacobiTriple jacobi_landen(double u, const EllipticModulus& k) {
    constexpr int kMaxSteps = 32;
    double a[kMaxSteps + 1];
    double c[kMaxSteps + 1];
    a[0] = 1.0;
    c[0] = k.k();
    double b = k.complement();
    int steps = 0;
    while (steps < kMaxSteps && std::abs(c[steps]) > std::numeric_limits<double>::epsilon() * a[steps]) {
        a[steps + 1] = 0.5 * (a[steps] + b);
        c[steps + 1] = 0.5 * (a[steps] - b);
        b = std::sqrt(a[steps] * b);
        ++steps;
    }
    double phi = std::ldexp(a[steps] * u, steps);
    for (int i = steps; i > 0; --i) {
        phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
    }
    const double sn = std::sin(phi);
    return {sn, std::cos(phi), std::sqrt(1.0 - k.m() * sn * sn)};
}

}  // namespace detail

/// sn, cn and dn at real argument u. The argument is reduced to [0, K]
/// through the quarter-period symmetries before the Landen recursion runs.
inline JacobiTriple jacobi_sn_cn_dn(double u, const EllipticModulus& k) {
    if (!std::isfinite(u)) {
        throw DomainError("jacobi elliptic functions need a finite argument");
    }
    const double quarter = complete_K(k);
    const double period = 4.0 * quarter;

    double sn_sign = u < 0.0 ? -1.0 : 1.0;
    double r = std::fmod(std::abs(u), period);
    // sn(4K - u) = -sn(u), cn and dn even about 2K
    if (r > 2.0 * quarter) {
        r = period - r;
        sn_sign = -sn_sign;
    }
    double cn_sign = 1.0;
    // sn(2K - u) = sn(u), cn(2K - u) = -cn(u)
    if (r > quarter) {
        r = 2.0 * quarter - r;
        cn_sign = -1.0;
    }
    const JacobiTriple t = detail::jacobi_landen(r, k);
    return {sn_sign * t.sn, cn_sign * t.cn, t.dn};
}

/// Jacobi amplitudinus cosinus cn(u; k).
inline double jacobi_cn(double u, const EllipticModulus& k) { return jacobi_sn_cn_dn(u, k).cn; }

}  // namespace wente
