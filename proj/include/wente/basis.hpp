// Eigenfunctions and eigenvalues of the flat Laplacian on C/Gamma.
//
// Every eigenfunction is c * sin or cos of 2*pi*(kx x / Lx + ky y / Ly), where
// Lx = n x_period and Ly = y_period are the "mode lengths" of the lattice.
// Odd ell allows every integer pair (kx, ky); even ell requires kx + ky even.
// Functions are listed shell by shell: shell s holds the pairs with
// kx + |ky| = s (odd) or kx + |ky| = 2s (even), kx descending, a positive ky
// before its negative, sine before cosine.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <tuple>
#include <vector>

#include "wente/surface.hpp"

namespace wente {

enum class Phase { sine, cosine };

inline const char* to_string(Phase p) { return p == Phase::sine ? "sin" : "cos"; }

struct BasisFunction {
    int index = 1;  // 1-based position in the enumeration
    int m1 = 0;     // lattice integers of the general eigenvalue formula
    int m2 = 0;
    int kx = 0;  // mode numbers along x and y in units of the mode lengths
    int ky = 0;
    Phase phase = Phase::cosine;
    double freq_x = 0.0;
    double freq_y = 0.0;
    double norm = 0.0;
    double alpha = 0.0;

    bool is_constant() const { return kx == 0 && ky == 0; }

    double operator()(double x, double y) const {
        const double arg = freq_x * x + freq_y * y;
        return norm * (phase == Phase::sine ? std::sin(arg) : std::cos(arg));
    }
};

struct BasisEnumeration {
    Lattice lattice;
    std::vector<BasisFunction> functions;
    int shells = 0;               // shells touched, the last one possibly partial
    bool shell_complete = false;  // m ends exactly at a shell boundary

    std::size_t size() const { return functions.size(); }
    const BasisFunction& at(int one_based) const { return functions.at(static_cast<std::size_t>(one_based - 1)); }
};

struct ModeLengths {
    double x;
    double y;
};

/// Only the two lattice shapes of symmetric Wente tori are supported:
/// b1 = 0 and a2 either 0 or b2 / 2.
inline ModeLengths mode_lengths(const Lattice& lat) {
    const double tol = 1e-12 * std::max(std::abs(lat.a1), std::abs(lat.b2));
    if (std::abs(lat.b1) > tol || lat.a1 <= 0.0 || lat.b2 <= 0.0) {
        throw ParameterError("unsupported lattice shape");
    }
    if (lat.parity == Parity::odd) {
        if (std::abs(lat.a2) > tol) throw ParameterError("odd lattice must be rectangular");
        return {lat.a1, lat.b2};
    }
    if (std::abs(lat.a2 - 0.5 * lat.b2) > tol) throw ParameterError("even lattice must have a2 = b2/2");
    return {2.0 * lat.a1, lat.b2};
}

/// Number of basis functions in the first `shells` shells.
inline int shell_complete_size(Parity parity, int shells) {
    if (shells <= 0) return 0;
    return parity == Parity::odd ? 2 * shells * shells - 2 * shells + 1 : 4 * shells * shells - 4 * shells + 1;
}

/// Shell index of a canonical mode (kx > 0, or kx == 0 and ky >= 0).
inline int shell_of(Parity parity, int kx, int ky) {
    const int s = kx + std::abs(ky);
    return parity == Parity::odd ? s : s / 2;
}

/// Canonical (kx, ky) pairs of shell s, in enumeration order.
inline std::vector<std::pair<int, int>> shell_modes(Parity parity, int s) {
    if (s == 0) return {{0, 0}};
    const int reach = parity == Parity::odd ? s : 2 * s;
    std::vector<std::pair<int, int>> out;
    for (int kx = reach; kx >= 0; --kx) {
        const int ky = reach - kx;
        if (kx == 0) {
            // (0, ky) keeps the positive sign; for even ell this extends the
            // pattern of the first thirteen functions.
            out.emplace_back(0, ky);
        } else if (ky == 0) {
            out.emplace_back(kx, 0);
        } else {
            out.emplace_back(kx, ky);
            out.emplace_back(kx, -ky);
        }
    }
    return out;
}

inline BasisFunction make_basis_function(const Lattice& lat, int index, int kx, int ky, Phase phase) {
    BasisFunction u;
    u.index = index;
    u.kx = kx;
    u.ky = ky;
    u.phase = phase;
    if (lat.parity == Parity::odd) {
        u.m2 = kx;
        u.m1 = ky;
    } else {
        u.m1 = ky;
        u.m2 = (kx + ky) / 2;
    }
    const double det = lat.determinant();
    const double two_pi = 2.0 * std::numbers::pi;
    u.freq_x = two_pi * (u.m2 * lat.b2 - u.m1 * lat.a2) / det;
    u.freq_y = two_pi * (u.m1 * lat.a1 - u.m2 * lat.b1) / det;
    u.alpha = u.freq_x * u.freq_x + u.freq_y * u.freq_y;
    u.norm = std::sqrt((u.is_constant() ? 1.0 : 2.0) / lat.area());
    return u;
}

/// The first m eigenfunctions in shell order.
inline BasisEnumeration enumerate_basis(const Lattice& lat, int m) {
    if (m < 1) throw ParameterError("basis size m must be at least 1");
    mode_lengths(lat);  // shape check

    BasisEnumeration out;
    out.lattice = lat;
    out.functions.reserve(static_cast<std::size_t>(m));
    int index = 1;
    for (int s = 0; index <= m; ++s) {
        out.shells = s + 1;
        for (auto [kx, ky] : shell_modes(lat.parity, s)) {
            if (kx == 0 && ky == 0) {
                out.functions.push_back(make_basis_function(lat, index++, 0, 0, Phase::cosine));
                continue;
            }
            for (Phase ph : {Phase::sine, Phase::cosine}) {
                if (index > m) break;
                out.functions.push_back(make_basis_function(lat, index++, kx, ky, ph));
            }
            if (index > m) break;
        }
    }
    out.shell_complete = shell_complete_size(lat.parity, out.shells) == m;
    return out;
}

/// Basis functions at the given 1-based positions, enumerated as far as needed.
inline std::vector<BasisFunction> select_basis(const Lattice& lat, const std::vector<int>& indices) {
    if (indices.empty()) throw ParameterError("basis index list is empty");
    const int top = *std::max_element(indices.begin(), indices.end());
    if (*std::min_element(indices.begin(), indices.end()) < 1) throw ParameterError("basis indices start at 1");
    const BasisEnumeration all = enumerate_basis(lat, top);
    std::vector<BasisFunction> out;
    out.reserve(indices.size());
    for (int i : indices) out.push_back(all.at(i));
    return out;
}

struct AlphaEntry {
    double alpha;
    int kx;  // canonical mode
    int ky;
    Phase phase;
};

struct AlphaStream {
    std::vector<AlphaEntry> entries;  // every eigenvalue strictly below the limit, ascending
    int boundary_hits = 0;            // eigenvalues within `boundary_tol` of the limit
};

/// All Laplacian eigenvalues below `limit`, one entry per eigenfunction.
///
/// An eigenvalue is 4 pi^2 |M (m1, m2)|^2 / det^2 with M = [[-a2, b2], [a1, -b1]],
/// so alpha < limit confines |m1| and |m2| by the row norms of M^-1 times
/// R = sqrt(limit) |det| / (2 pi); that box is enumerated completely.
inline AlphaStream sorted_alpha_stream(const Lattice& lat, double limit, double boundary_tol = 1e-9) {
    if (!(limit > 0.0)) throw ParameterError("alpha stream limit must be positive");
    mode_lengths(lat);
    const double det = lat.determinant();
    const double radius = std::sqrt(limit + boundary_tol) * std::abs(det) / (2.0 * std::numbers::pi);
    const int max_m1 = static_cast<int>(std::floor(std::hypot(lat.b1, lat.b2) * radius / std::abs(det))) + 1;
    const int max_m2 = static_cast<int>(std::floor(std::hypot(lat.a1, lat.a2) * radius / std::abs(det))) + 1;

    AlphaStream out;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int m1 = -max_m1; m1 <= max_m1; ++m1) {
        for (int m2 = -max_m2; m2 <= max_m2; ++m2) {
            const double fx = two_pi * (m2 * lat.b2 - m1 * lat.a2) / det;
            const double fy = two_pi * (m1 * lat.a1 - m2 * lat.b1) / det;
            const double alpha = fx * fx + fy * fy;
            if (std::abs(alpha - limit) <= boundary_tol) ++out.boundary_hits;
            if (!(alpha < limit)) continue;
            int kx = lat.parity == Parity::odd ? m2 : 2 * m2 - m1;
            int ky = m1;
            // (m1, m2) and its negation carry the sine/cosine pair of one mode
            Phase phase = Phase::sine;
            if (kx < 0 || (kx == 0 && ky < 0)) {
                kx = -kx;
                ky = -ky;
                phase = Phase::cosine;
            }
            if (kx == 0 && ky == 0) phase = Phase::cosine;
            out.entries.push_back({alpha, kx, ky, phase});
        }
    }
    const Parity parity = lat.parity;
    auto key = [parity](const AlphaEntry& e) {
        return std::make_tuple(e.alpha, shell_of(parity, e.kx, e.ky), -e.kx, e.ky < 0, e.phase == Phase::cosine);
    };
    std::sort(out.entries.begin(), out.entries.end(),
              [&](const AlphaEntry& a, const AlphaEntry& b) { return key(a) < key(b); });
    return out;
}

/// Every eigenfunction with eigenvalue strictly below `limit`, ordered by
/// eigenvalue. Each function keeps its shell-order index.
inline std::vector<BasisFunction> alpha_window_basis(const Lattice& lat, double limit) {
    const AlphaStream stream = sorted_alpha_stream(lat, limit);
    int top_shell = 0;
    for (const auto& e : stream.entries) top_shell = std::max(top_shell, shell_of(lat.parity, e.kx, e.ky));
    const BasisEnumeration all = enumerate_basis(lat, shell_complete_size(lat.parity, top_shell + 1));
    std::map<std::tuple<int, int, Phase>, const BasisFunction*> by_mode;
    for (const auto& u : all.functions) by_mode[{u.kx, u.ky, u.phase}] = &u;
    std::vector<BasisFunction> out;
    out.reserve(stream.entries.size());
    for (const auto& e : stream.entries) out.push_back(*by_mode.at({e.kx, e.ky, e.phase}));
    return out;
}

}  // namespace wente
