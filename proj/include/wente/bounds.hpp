// Analytic lower and upper bounds for the index and the combined report.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wente/assembly.hpp"
#include "wente/basis.hpp"
#include "wente/spectrum.hpp"
#include "wente/surface.hpp"

namespace wente {

struct InconsistentBounds : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lower bound from counting nodal domains of symmetry-forced eigenfunctions.
inline int courant_bound(int ell, int n) {
    validate_fraction(ell, n);
    return ell % 2 != 0 ? 2 * n - 2 : n - 2;
}

struct Sandwich {
    int mu = 0;  // #{alpha < V_min}
    int nu = 0;  // #{alpha < V_max}
    int lower = 0;  // mu - 1
    int upper = 0;  // nu
    bool min_boundary = false;  // some alpha within 1e-9 of V_min
    bool max_boundary = false;
};

/// Count Laplacian eigenvalues below two thresholds. With v_min <= V <= v_max the
/// counts sandwich the index.
inline Sandwich eigenvalue_sandwich(const Lattice& lat, double v_min, double v_max) {
    const AlphaStream below_min = sorted_alpha_stream(lat, v_min);
    const AlphaStream below_max = sorted_alpha_stream(lat, v_max);
    Sandwich s;
    s.mu = static_cast<int>(below_min.entries.size());
    s.nu = static_cast<int>(below_max.entries.size());
    s.lower = s.mu - 1;
    s.upper = s.nu;
    s.min_boundary = below_min.boundary_hits > 0;
    s.max_boundary = below_max.boundary_hits > 0;
    return s;
}

inline Sandwich potential_sandwich(const SurfaceParams& p) {
    const PotentialExtrema ext = potential_extrema(p);
    return eigenvalue_sandwich(lattice(p), ext.v_min, ext.v_max);
}

struct SubspaceResult {
    std::vector<int> indices;
    Matrix matrix;
    std::vector<double> eigenvalues;
    double max_eigenvalue = 0.0;
    bool negative_definite = false;
    int implied_lower = 0;  // N - 1 when negative definite, else 0
};

inline SubspaceResult classify_subspace(std::vector<int> indices, Matrix a) {
    SubspaceResult r;
    r.indices = std::move(indices);
    r.eigenvalues = eigen_decompose(a).values;
    r.matrix = std::move(a);
    r.max_eigenvalue = r.eigenvalues.back();
    r.negative_definite = r.max_eigenvalue < 0.0;
    r.implied_lower = r.negative_definite ? static_cast<int>(r.indices.size()) - 1 : 0;
    return r;
}

inline void check_indices(const std::vector<int>& indices) {
    if (indices.empty()) throw ParameterError("subspace index list is empty");
    std::set<int> seen;
    for (int i : indices) {
        if (i < 1) throw ParameterError("basis indices start at 1, got " + std::to_string(i));
        if (!seen.insert(i).second) throw ParameterError("duplicate basis index " + std::to_string(i));
    }
}

/// Quadratic form of the Jacobi operator on the span of the chosen basis functions.
inline SubspaceResult subspace_bound(const SurfaceParams& p, const std::vector<int>& indices,
                                     const AssemblyConfig& cfg = {}) {
    check_indices(indices);
    GalerkinMatrix g = assemble_subset(p, indices, cfg);
    return classify_subspace(indices, std::move(g.entries));
}

struct GreedyResult {
    std::vector<int> indices;  // in the order they were added
    double max_eigenvalue = 0.0;
    int implied_lower = 0;
};

/// Greedy growth inside an already assembled pool matrix (pool position i is
/// basis index i + 1). Each step adds the candidate that leaves the largest
/// eigenvalue most negative; ties go to the lowest index.
inline GreedyResult greedy_subspace_search(const Matrix& pool) {
    GreedyResult out;
    std::vector<std::size_t> chosen;
    std::vector<bool> used(pool.size(), false);
    for (;;) {
        std::optional<std::size_t> best;
        double best_max = 0.0;
        for (std::size_t c = 0; c < pool.size(); ++c) {
            if (used[c]) continue;
            auto trial = chosen;
            trial.push_back(c);
            const double top = eigen_decompose(pool.principal(trial)).values.back();
            if (top < 0.0 && (!best || top < best_max)) {
                best = c;
                best_max = top;
            }
        }
        if (!best) break;
        chosen.push_back(*best);
        used[*best] = true;
        out.max_eigenvalue = best_max;
    }
    for (std::size_t c : chosen) out.indices.push_back(static_cast<int>(c) + 1);
    out.implied_lower = out.indices.empty() ? 0 : static_cast<int>(out.indices.size()) - 1;
    return out;
}

inline GreedyResult greedy_subspace_search(const SurfaceParams& p, int pool_size, const AssemblyConfig& cfg = {}) {
    if (pool_size < 1) throw ParameterError("greedy pool size must be at least 1");
    return greedy_subspace_search(assemble(p, pool_size, cfg).entries);
}

struct ReportOptions {
    int m = 0;  // shell-order truncation; 0 takes every mode below V_max
    AssemblyConfig assembly;
    double zero_tol = -1.0;  // < 0: relative default
    std::vector<int> subspace_indices;
    int greedy_pool = 30;  // 0 disables the greedy search
    double theta_delta = 0.0;  // > 0: recount at theta +- delta
};

struct ThetaSensitivity {
    double delta = 0.0;
    int count_minus = 0;
    int count_plus = 0;
};

struct IndexReport {
    std::string label;
    int ell = 0;
    int n = 0;
    double H = 0.0;
    double theta_deg = 0.0;
    double x_period = 0.0;
    double y_period = 0.0;
    double v_min = 0.0;
    double v_max = 0.0;

    int courant_lower = 0;
    Sandwich sandwich;
    std::optional<SubspaceResult> subspace;
    std::optional<GreedyResult> greedy;
    std::optional<int> subspace_lower;

    std::string basis_kind;  // "shell" or "window"
    int m_used = 0;
    bool shell_complete = false;
    SpectrumEstimate spectrum;
    int galerkin_k = 0;
    std::pair<int, int> index_estimate;
    std::optional<std::pair<double, double>> negative_range;
    std::optional<std::pair<double, double>> positive_range;
    Provenance provenance;
    std::optional<ThetaSensitivity> theta_sensitivity;
    std::vector<std::string> notes;

    int max_lower() const {
        int lo = std::max(courant_lower, sandwich.lower);
        if (subspace_lower) lo = std::max(lo, *subspace_lower);
        return lo;
    }
};

inline GalerkinMatrix galerkin_matrix(const SurfaceParams& p, int m, const AssemblyConfig& cfg) {
    if (m > 0) return assemble(p, m, cfg);
    return assemble_basis(p, alpha_window_basis(lattice(p), potential_extrema(p).v_max), cfg);
}

/// All bounds plus the Galerkin estimate. Throws InconsistentBounds when a
/// lower bound exceeds the upper one, which can only come from a numerical fault.
inline IndexReport full_report(const SurfaceParams& p, const ReportOptions& opts) {
    if (opts.m < 0) throw ParameterError("basis size m must be positive");
    IndexReport r;
    r.label = p.label();
    r.ell = p.ell;
    r.n = p.n;
    r.H = p.H;
    r.theta_deg = p.theta_deg;
    r.x_period = p.x_period;
    r.y_period = p.y_period;
    const PotentialExtrema ext = potential_extrema(p);
    r.v_min = ext.v_min;
    r.v_max = ext.v_max;

    r.courant_lower = courant_bound(p.ell, p.n);
    r.sandwich = potential_sandwich(p);
    if (r.sandwich.min_boundary) r.notes.push_back("a Laplacian eigenvalue lies within 1e-9 of V_min");
    if (r.sandwich.max_boundary) r.notes.push_back("a Laplacian eigenvalue lies within 1e-9 of V_max");

    if (!opts.subspace_indices.empty()) {
        r.subspace = subspace_bound(p, opts.subspace_indices, opts.assembly);
        if (!r.subspace->negative_definite) r.notes.push_back("given subspace is not negative definite");
        r.subspace_lower = r.subspace->implied_lower;
    }
    if (opts.greedy_pool > 0) {
        r.greedy = greedy_subspace_search(p, opts.greedy_pool, opts.assembly);
        r.subspace_lower = std::max(r.subspace_lower.value_or(0), r.greedy->implied_lower);
    }

    const GalerkinMatrix g = galerkin_matrix(p, opts.m, opts.assembly);
    r.basis_kind = opts.m > 0 ? "shell" : "window";
    r.m_used = g.m;
    r.shell_complete = opts.m > 0 && enumerate_basis(lattice(p), opts.m).shell_complete;
    if (opts.m > 0 && !r.shell_complete) r.notes.push_back("m is not shell-complete");
    r.provenance = g.provenance;
    r.spectrum = eigen_symmetric(g.entries, opts.zero_tol);
    r.galerkin_k = r.spectrum.negative_count;
    r.index_estimate = {r.galerkin_k - 1, r.galerkin_k};
    if (r.spectrum.uncertain_count > 0) {
        r.notes.push_back(std::to_string(r.spectrum.uncertain_count) + " eigenvalue(s) within zero_tol of 0");
    }
    const auto& ev = r.spectrum.eigenvalues;
    if (r.galerkin_k > 0) r.negative_range = std::make_pair(ev.front(), ev[static_cast<std::size_t>(r.galerkin_k) - 1]);
    if (!r.spectrum.first_positive_six.empty()) {
        const auto& six = r.spectrum.first_positive_six;
        r.positive_range = std::make_pair(*std::min_element(six.begin(), six.end()), *std::max_element(six.begin(), six.end()));
    } else {
        r.notes.push_back("fewer than six eigenvalues above the negative block");
    }

    if (opts.theta_delta > 0.0) {
        ThetaSensitivity ts;
        ts.delta = opts.theta_delta;
        auto count_at = [&](double theta) {
            const SurfaceParams q = build_surface(p.ell, p.n, p.H, theta);
            const GalerkinMatrix gq = galerkin_matrix(q, opts.m, opts.assembly);
            return eigen_symmetric(gq.entries, opts.zero_tol).negative_count;
        };
        ts.count_minus = count_at(p.theta_deg - ts.delta);
        ts.count_plus = count_at(p.theta_deg + ts.delta);
        if (ts.count_minus != r.galerkin_k || ts.count_plus != r.galerkin_k) {
            r.notes.push_back("negative count changes within theta +- " + std::to_string(ts.delta));
        }
        r.theta_sensitivity = ts;
    }

    const int upper = r.sandwich.upper;
    if (r.max_lower() > upper || r.galerkin_k > upper) {
        throw InconsistentBounds("bounds for " + r.label + " are inconsistent: lower " + std::to_string(r.max_lower()) +
                                 ", Galerkin " + std::to_string(r.galerkin_k) + ", upper " + std::to_string(upper));
    }
    if (r.galerkin_k < r.max_lower()) {
        r.notes.push_back("Galerkin count below an analytic lower bound; the truncation is too small");
    }
    return r;
}

}  // namespace wente
