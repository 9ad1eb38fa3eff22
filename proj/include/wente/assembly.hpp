// Galerkin matrix A = (alpha_i delta_ij - b_ij), b_ij = integral of V u_i u_j
// over the torus.
//
// V depends on (f g)^2 and f, g change sign over half their periods, so V has
// the rectangular period cell [0, x_period/2) x [0, y_period/2). That cell is
// what gets sampled. Two routes compute b_ij from the samples:
//
//  * fourier: the product u_i u_j is expanded into cosines of the difference
//    and sum modes, and b_ij is read off the cosine coefficients of V on the
//    cell. V is even in x and y, so only cosine-cosine coefficients survive.
//  * quadrature: the tensor trapezoid rule for V u_i u_j over the integration
//    rectangle [0, X) x [0, y_period), with X = n x_period for odd ell and
//    n x_period / 2 for even ell. For even ell that rectangle is a fundamental
//    domain of the sheared lattice, so it integrates periodic functions exactly
//    like the parallelogram does.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wente/basis.hpp"
#include "wente/cache.hpp"
#include "wente/matrix.hpp"
#include "wente/spectrum.hpp"
#include "wente/surface.hpp"

namespace wente {

struct MissingCoefficient : std::out_of_range {
    using std::out_of_range::out_of_range;
};

enum class Method { fourier, quadrature, both };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::fourier: return "fourier";
        case Method::quadrature: return "quadrature";
        case Method::both: return "both";
    }
    return "?";
}

inline Method parse_method(const std::string& s) {
    if (s == "fourier") return Method::fourier;
    if (s == "quadrature") return Method::quadrature;
    if (s == "both") return Method::both;
    throw ParameterError("unknown method '" + s + "' (expected fourier, quadrature or both)");
}

/// Where the sampled cell sits relative to the basis and the integration domain.
struct FieldGeometry {
    double cell_x = 0.0;  // sampled rectangle [0, cell_x) x [0, cell_y)
    double cell_y = 0.0;
    double mode_x = 0.0;  // basis mode lengths
    double mode_y = 0.0;
    int x_div = 1;  // mode_x / cell_x
    int y_div = 1;
    int reps_x = 1;  // integration rectangle / cell, per direction
    int reps_y = 1;

    double cell_area() const { return cell_x * cell_y; }
    double integration_area() const { return reps_x * cell_x * reps_y * cell_y; }
};

inline FieldGeometry wente_geometry(const SurfaceParams& p) {
    const Lattice lat = lattice(p);
    const ModeLengths ml = mode_lengths(lat);
    FieldGeometry g;
    g.cell_x = 0.5 * p.x_period;
    g.cell_y = 0.5 * p.y_period;
    g.mode_x = ml.x;
    g.mode_y = ml.y;
    g.x_div = 2 * p.n;
    g.y_div = 2;
    g.reps_x = lat.parity == Parity::odd ? 2 * p.n : p.n;
    g.reps_y = 2;
    return g;
}

struct FourierRange {
    int jmax = 0;
    int kmax = 0;
};

/// Samples of V on a uniform Nx x Ny grid over its period cell, with the
/// cosine coefficients c(j, k) = (1/cell area) * integral of V cos(2 pi j x/cell_x) cos(2 pi k y/cell_y).
struct PotentialField {
    FieldGeometry geometry;
    int nx = 0;
    int ny = 0;
    std::vector<double> samples;  // samples[b * nx + a] = V(a hx, b hy)
    FourierTable fourier;

    bool has_samples() const { return !samples.empty(); }
    double hx() const { return geometry.cell_x / nx; }
    double hy() const { return geometry.cell_y / ny; }
    double value(int a, int b) const { return samples[static_cast<std::size_t>(b) * nx + a]; }

    /// Mean of V cos(2 pi P x / mode_x) cos(2 pi Q y / mode_y). Frequencies
    /// outside V's own period lattice vanish identically.
    double coefficient(int P, int Q) const {
        P = std::abs(P);
        Q = std::abs(Q);
        if (P % geometry.x_div != 0 || Q % geometry.y_div != 0) return 0.0;
        const int j = P / geometry.x_div;
        const int k = Q / geometry.y_div;
        if (!fourier.covers(j, k)) {
            throw MissingCoefficient("Fourier coefficient (" + std::to_string(j) + ", " + std::to_string(k) +
                                     ") outside the computed range (" + std::to_string(fourier.jmax) + ", " +
                                     std::to_string(fourier.kmax) + ")");
        }
        return fourier.at(j, k);
    }

    /// Coefficient of one trig channel (cos or sin in x, cos or sin in y),
    /// computed directly from the samples.
    double channel_coefficient(int j, int k, Phase x_phase, Phase y_phase) const {
        const double two_pi = 2.0 * std::numbers::pi;
        double total = 0.0;
        for (int b = 0; b < ny; ++b) {
            const double ty = two_pi * static_cast<double>((static_cast<long long>(k) * b) % ny) / ny;
            const double wy = y_phase == Phase::cosine ? std::cos(ty) : std::sin(ty);
            double row = 0.0;
            for (int a = 0; a < nx; ++a) {
                const double tx = two_pi * static_cast<double>((static_cast<long long>(j) * a) % nx) / nx;
                row += value(a, b) * (x_phase == Phase::cosine ? std::cos(tx) : std::sin(tx));
            }
            total += row * wy;
        }
        return total / (static_cast<double>(nx) * ny);
    }
};

inline bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

inline void check_grid(int nx, int ny) {
    if (nx < 64 || ny < 64 || !is_power_of_two(nx) || !is_power_of_two(ny)) {
        throw ParameterError("grid sizes must be powers of two >= 64, got " + std::to_string(nx) + "x" +
                             std::to_string(ny));
    }
}

/// Truncated 2D cosine transform of the samples, separable in y then x.
inline FourierTable cosine_transform(const std::vector<double>& samples, int nx, int ny, FourierRange range) {
    if (range.jmax < 0 || range.kmax < 0 || 2 * range.jmax >= nx || 2 * range.kmax >= ny) {
        throw ParameterError("Fourier range exceeds the grid Nyquist limit");
    }
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> cos_x(static_cast<std::size_t>(nx)), cos_y(static_cast<std::size_t>(ny));
    for (int a = 0; a < nx; ++a) cos_x[a] = std::cos(two_pi * a / nx);
    for (int b = 0; b < ny; ++b) cos_y[b] = std::cos(two_pi * b / ny);

    FourierTable table;
    table.jmax = range.jmax;
    table.kmax = range.kmax;
    table.values.assign(static_cast<std::size_t>(range.jmax + 1) * (range.kmax + 1), 0.0);

    std::vector<double> partial(static_cast<std::size_t>(nx));
    for (int k = 0; k <= range.kmax; ++k) {
        std::fill(partial.begin(), partial.end(), 0.0);
        for (int b = 0; b < ny; ++b) {
            const double w = cos_y[static_cast<std::size_t>((static_cast<long long>(k) * b) % ny)];
            const double* row = samples.data() + static_cast<std::size_t>(b) * nx;
            for (int a = 0; a < nx; ++a) partial[a] += w * row[a];
        }
        for (int j = 0; j <= range.jmax; ++j) {
            double s = 0.0;
            for (int a = 0; a < nx; ++a) s += partial[a] * cos_x[static_cast<std::size_t>((static_cast<long long>(j) * a) % nx)];
            table.at(j, k) = s / (static_cast<double>(nx) * ny);
        }
    }
    return table;
}

/// Samples V over its period cell; f and g are tabulated once per axis.
inline std::vector<double> sample_grid(const SurfaceParams& p, int nx, int ny) {
    check_grid(nx, ny);
    const double hx = 0.5 * p.x_period / nx;
    const double hy = 0.5 * p.y_period / ny;
    std::vector<double> f(static_cast<std::size_t>(nx)), g(static_cast<std::size_t>(ny));
    for (int a = 0; a < nx; ++a) f[a] = f_factor(p, a * hx);
    for (int b = 0; b < ny; ++b) g[b] = g_factor(p, b * hy);
    std::vector<double> samples(static_cast<std::size_t>(nx) * ny);
    for (int b = 0; b < ny; ++b)
        for (int a = 0; a < nx; ++a) samples[static_cast<std::size_t>(b) * nx + a] = potential_from_product(p.H, f[a] * g[b]);
    return samples;
}

inline PotentialField sample_potential(const SurfaceParams& p, int nx, int ny, FourierRange range = {8, 8}) {
    PotentialField field;
    field.geometry = wente_geometry(p);
    field.nx = nx;
    field.ny = ny;
    field.samples = sample_grid(p, nx, ny);
    field.fourier = cosine_transform(field.samples, nx, ny, range);
    return field;
}

/// Field for an arbitrary potential on a given geometry (used for synthetic potentials).
inline PotentialField sample_field(const FieldGeometry& geometry, const std::function<double(double, double)>& v,
                                   int nx, int ny, FourierRange range = {8, 8}) {
    check_grid(nx, ny);
    PotentialField field;
    field.geometry = geometry;
    field.nx = nx;
    field.ny = ny;
    field.samples.resize(static_cast<std::size_t>(nx) * ny);
    for (int b = 0; b < ny; ++b)
        for (int a = 0; a < nx; ++a)
            field.samples[static_cast<std::size_t>(b) * nx + a] = v(a * field.hx(), b * field.hy());
    field.fourier = cosine_transform(field.samples, nx, ny, range);
    return field;
}

namespace detail {

inline void check_shared_lattice(const PotentialField& field, const BasisFunction& u) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double fx = two_pi * u.kx / field.geometry.mode_x;
    const double fy = two_pi * u.ky / field.geometry.mode_y;
    const double tol = 1e-9 * (1.0 + std::abs(fx) + std::abs(fy));
    if (std::abs(fx - u.freq_x) > tol || std::abs(fy - u.freq_y) > tol) {
        throw ParameterError("basis function " + std::to_string(u.index) + " does not belong to the field's lattice");
    }
}

}  // namespace detail

/// b_ij through the product-to-sum expansion
///   cos a cos b = (cos(a-b) + cos(a+b)) / 2,  sin a sin b = (cos(a-b) - cos(a+b)) / 2,
/// with mixed sine-cosine products integrating to zero against the even V.
inline double b_entry_fourier(const PotentialField& field, const BasisFunction& ui, const BasisFunction& uj) {
    if (ui.phase != uj.phase) return 0.0;
    detail::check_shared_lattice(field, ui);
    detail::check_shared_lattice(field, uj);
    const double diff = field.coefficient(ui.kx - uj.kx, ui.ky - uj.ky);
    const double sum = field.coefficient(ui.kx + uj.kx, ui.ky + uj.ky);
    const double scale = 0.5 * ui.norm * uj.norm * field.geometry.integration_area();
    return scale * (ui.phase == Phase::cosine ? diff + sum : diff - sum);
}

/// Tensor trapezoid rule for V u_i u_j on the integration rectangle. The rule
/// reuses the cell samples periodically; the trig factors are evaluated at
/// the true node coordinates.
inline double b_entry_quadrature(const PotentialField& field, const BasisFunction& ui, const BasisFunction& uj) {
    if (!field.has_samples()) throw ParameterError("quadrature needs a sampled potential");
    detail::check_shared_lattice(field, ui);
    detail::check_shared_lattice(field, uj);
    const FieldGeometry& g = field.geometry;
    const int mx = g.reps_x * field.nx;
    const int my = g.reps_y * field.ny;
    const double hx = field.hx();
    const double hy = field.hy();
    const double nyquist_x = std::numbers::pi / hx;
    const double nyquist_y = std::numbers::pi / hy;
    if (std::abs(ui.freq_x) + std::abs(uj.freq_x) >= nyquist_x || std::abs(ui.freq_y) + std::abs(uj.freq_y) >= nyquist_y) {
        throw ParameterError("grid too coarse for basis functions " + std::to_string(ui.index) + " and " +
                             std::to_string(uj.index));
    }

    auto tables = [](double freq, double h, int count) {
        std::pair<std::vector<double>, std::vector<double>> t;
        t.first.resize(static_cast<std::size_t>(count));
        t.second.resize(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            t.first[i] = std::sin(freq * (i * h));
            t.second[i] = std::cos(freq * (i * h));
        }
        return t;
    };
    const auto [sxi, cxi] = tables(ui.freq_x, hx, mx);
    const auto [syi, cyi] = tables(ui.freq_y, hy, my);
    const auto [sxj, cxj] = tables(uj.freq_x, hx, mx);
    const auto [syj, cyj] = tables(uj.freq_y, hy, my);
    const bool sine_i = ui.phase == Phase::sine;
    const bool sine_j = uj.phase == Phase::sine;

    double total = 0.0;
    for (int b = 0; b < my; ++b) {
        const double* vrow = field.samples.data() + static_cast<std::size_t>(b % field.ny) * field.nx;
        // sine: sx*cy + cx*sy ; cosine: cx*cy - sx*sy
        const double pi1 = sine_i ? cyi[b] : -syi[b];
        const double pi2 = sine_i ? syi[b] : cyi[b];
        const double pj1 = sine_j ? cyj[b] : -syj[b];
        const double pj2 = sine_j ? syj[b] : cyj[b];
        double row = 0.0;
        for (int a = 0; a < mx; ++a) {
            const double ti = sxi[a] * pi1 + cxi[a] * pi2;
            const double tj = sxj[a] * pj1 + cxj[a] * pj2;
            row += vrow[a % field.nx] * ti * tj;
        }
        total += row;
    }
    return ui.norm * uj.norm * total * hx * hy;
}

struct Provenance {
    int nx = 0;
    int ny = 0;
    Method method = Method::fourier;
    double tolerance = 1e-8;     // grid-convergence acceptance threshold
    double grid_change = 0.0;    // max entry change when the grid is doubled
    std::optional<double> method_discrepancy;  // max |fourier - quadrature| when both ran
    bool cache_hit = false;
};

struct GalerkinMatrix {
    int m = 0;
    Matrix entries;
    SurfaceParams surface;
    std::vector<BasisFunction> basis;
    Provenance provenance;
};

struct AssemblyConfig {
    Method method = Method::fourier;
    int nx = 1024;
    int ny = 1024;
    bool check_convergence = true;
    double convergence_tol = 1e-8;
    int max_grid = 8192;
    std::filesystem::path cache_dir;  // empty disables the cache
    unsigned threads = 1;
};

/// Coefficient range the Fourier route needs for every pair of `basis`.
inline FourierRange required_range(const FieldGeometry& g, const std::vector<BasisFunction>& basis) {
    int px = 0, qy = 0;
    for (const auto& u : basis) {
        px = std::max(px, std::abs(u.kx));
        qy = std::max(qy, std::abs(u.ky));
    }
    return {(2 * px) / g.x_div, (2 * qy) / g.y_div};
}

namespace detail {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Pairs (i <= j) whose b_ij can be nonzero; the rest are zero by parity.
inline std::vector<std::pair<std::size_t, std::size_t>> coupled_pairs(const std::vector<BasisFunction>& basis) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j)
            if (basis[i].phase == basis[j].phase) out.emplace_back(i, j);
    return out;
}

}  // namespace detail

/// A from a given field. Each unordered pair is computed once and mirrored, so
/// the result is exactly symmetric.
inline Matrix assemble_from_field(const std::vector<BasisFunction>& basis, const PotentialField& field, Method method,
                                  unsigned threads = 1) {
    const std::size_t m = basis.size();
    Matrix a(m);
    const auto pairs = detail::coupled_pairs(basis);
    std::vector<double> b(pairs.size());
    detail::parallel_for(pairs.size(), threads, [&](std::size_t t) {
        const auto [i, j] = pairs[t];
        b[t] = method == Method::fourier ? b_entry_fourier(field, basis[i], basis[j])
                                         : b_entry_quadrature(field, basis[i], basis[j]);
    });
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto [i, j] = pairs[t];
        a(i, j) = -b[t];
        a(j, i) = -b[t];
    }
    for (std::size_t i = 0; i < m; ++i) a(i, i) += basis[i].alpha;
    return a;
}

inline double max_abs_difference(const Matrix& x, const Matrix& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) d = std::max(d, std::abs(x(i, j) - y(i, j)));
    return d;
}

namespace detail {

struct FieldSource {
    const SurfaceParams& surface;
    const AssemblyConfig& cfg;
    FourierRange range;
    bool any_cache_hit = false;

    // Coefficients come from the cache when it covers the range; samples are
    // only produced when asked for.
    PotentialField get(int nx, bool need_samples) {
        PotentialField field;
        field.geometry = wente_geometry(surface);
        field.nx = nx;
        field.ny = nx * cfg.ny / cfg.nx;
        const CacheKey key{surface.ell, surface.n, surface.H, surface.theta_deg, field.nx, field.ny};
        if (auto cached = load_cached_table(cfg.cache_dir, key); cached && cached->jmax >= range.jmax &&
                                                                   cached->kmax >= range.kmax) {
            field.fourier = std::move(*cached);
            any_cache_hit = true;
            if (need_samples) field.samples = sample_grid(surface, field.nx, field.ny);
            return field;
        }
        field.samples = sample_grid(surface, field.nx, field.ny);
        field.fourier = cosine_transform(field.samples, field.nx, field.ny, range);
        store_cached_table(cfg.cache_dir, key, field.fourier);
        if (!need_samples) field.samples.clear();
        return field;
    }
};

}  // namespace detail

/// Galerkin matrix on an explicit list of basis functions of p's lattice.
///
/// The grid is accepted once doubling it moves no Fourier-route entry by more
/// than cfg.convergence_tol; otherwise it is doubled up to cfg.max_grid.
inline GalerkinMatrix assemble_basis(const SurfaceParams& p, std::vector<BasisFunction> basis, const AssemblyConfig& cfg) {
    check_grid(cfg.nx, cfg.ny);
    if (basis.empty()) throw ParameterError("cannot assemble an empty basis");
    const FieldGeometry geom = wente_geometry(p);
    FourierRange range = required_range(geom, basis);
    range.jmax = std::max(range.jmax, 2);
    range.kmax = std::max(range.kmax, 2);

    detail::FieldSource source{p, cfg, range};
    const bool need_samples = cfg.method != Method::fourier;

    GalerkinMatrix out;
    out.m = static_cast<int>(basis.size());
    out.surface = p;
    out.provenance.method = cfg.method;
    out.provenance.tolerance = cfg.convergence_tol;

    int nx = cfg.nx;
    PotentialField field = source.get(nx, need_samples);
    Matrix fourier = assemble_from_field(basis, field, Method::fourier);
    if (cfg.check_convergence) {
        for (;;) {
            if (2 * std::max(nx, field.ny) > cfg.max_grid) {
                throw NumericalError("potential grid did not converge below " + std::to_string(cfg.max_grid));
            }
            const PotentialField finer = source.get(2 * nx, false);
            const Matrix finer_a = assemble_from_field(basis, finer, Method::fourier);
            out.provenance.grid_change = max_abs_difference(fourier, finer_a);
            if (out.provenance.grid_change <= cfg.convergence_tol) break;
            nx *= 2;
            field = source.get(nx, need_samples);
            fourier = finer_a;
        }
    }
    out.provenance.nx = field.nx;
    out.provenance.ny = field.ny;

    if (cfg.method == Method::fourier) {
        out.entries = std::move(fourier);
    } else {
        Matrix quad = assemble_from_field(basis, field, Method::quadrature, cfg.threads);
        if (cfg.method == Method::both) out.provenance.method_discrepancy = max_abs_difference(fourier, quad);
        out.entries = cfg.method == Method::both ? std::move(fourier) : std::move(quad);
    }
    out.provenance.cache_hit = source.any_cache_hit;
    out.basis = std::move(basis);
    return out;
}

/// A_m on the first m basis functions.
inline GalerkinMatrix assemble(const SurfaceParams& p, int m, const AssemblyConfig& cfg = {}) {
    const BasisEnumeration en = enumerate_basis(lattice(p), m);
    return assemble_basis(p, en.functions, cfg);
}

/// A on the basis functions with the given 1-based indices, in the given order.
inline GalerkinMatrix assemble_subset(const SurfaceParams& p, const std::vector<int>& indices, const AssemblyConfig& cfg = {}) {
    return assemble_basis(p, select_basis(lattice(p), indices), cfg);
}

}  // namespace wente
