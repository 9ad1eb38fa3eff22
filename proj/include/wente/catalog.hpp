// The nineteen symmetric Wente tori with published rotational-period angles,
// plus loading of user-edited catalogs in the same "ell n theta" text form.
#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wente/surface.hpp"

namespace wente {

struct CatalogEntry {
    int ell = 0;
    int n = 0;
    double theta_deg = 0.0;
    int default_m = 0;  // Galerkin truncation of the published estimate; 0 takes every mode below V_max
    std::vector<int> subspace_indices;  // basis set known to give a negative definite form

    std::string label() const { return std::to_string(ell) + "/" + std::to_string(n); }
};

namespace detail {

inline std::vector<int> index_ranges(std::initializer_list<std::pair<int, int>> ranges) {
    std::vector<int> out;
    for (auto [lo, hi] : ranges) {
        for (int i = lo; i <= hi; ++i) out.push_back(i);
    }
    return out;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& builtin_catalog() {
    using detail::index_ranges;
    static const std::vector<CatalogEntry> rows = {
        {3, 2, 17.7324, 181, {1, 2, 3, 4, 5, 7, 8, 9, 17}},
        {4, 3, 12.7898, 81, index_ranges({{1, 9}, {13, 13}})},
        {5, 3, 21.4807, 85, index_ranges({{1, 3}, {5, 9}, {15, 17}, {29, 29}})},
        {5, 4, 9.9285, 145, index_ranges({{1, 23}, {27, 35}, {45, 45}})},
        {7, 4, 22.8449, 145, index_ranges({{1, 3}, {5, 9}, {14, 17}, {27, 29}, {45, 45}})},
        {6, 5, 8.0983, 81, index_ranges({{1, 19}, {29, 29}})},
        {7, 5, 14.8978, 145, index_ranges({{1, 11}, {14, 19}, {26, 31}, {43, 45}, {65, 65}})},
        {8, 5, 20.1374, 81, index_ranges({{1, 7}, {10, 13}, {29, 29}})},
        {9, 5, 23.4867, 145, index_ranges({{1, 3}, {5, 9}, {14, 17}, {26, 29}, {43, 45}, {65, 65}})},
        {7, 6, 6.8332, 145, {}},
        {11, 6, 23.8382, 181, {}},
        {8, 7, 5.9081, 81, index_ranges({{1, 5}, {10, 13}})},
        {9, 7, 11.1844, 145, {}},
        {10, 7, 15.7491, 81, index_ranges({{1, 5}, {10, 13}})},
        {11, 7, 19.4966, 145, {}},
        {12, 7, 22.3044, 81, index_ranges({{1, 5}, {10, 13}})},
        {13, 7, 24.0512, 181, {}},
        {21, 20, 2.1359, 0, {}},
        {73, 72, 0.6005, 0, {}},
    };
    return rows;
}

/// Parses "ell n theta_deg" lines; '#' starts a comment. Entries not present
/// in the built-in table carry no default truncation or subspace set.
inline std::vector<CatalogEntry> parse_catalog(std::istream& in) {
    std::vector<CatalogEntry> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        CatalogEntry e;
        if (!(ls >> e.ell)) continue;
        std::string extra;
        if (!(ls >> e.n >> e.theta_deg) || (ls >> extra)) {
            throw ParameterError("catalog line " + std::to_string(line_no) + ": expected 'ell n theta'");
        }
        validate_fraction(e.ell, e.n);
        for (const auto& b : builtin_catalog()) {
            if (b.ell == e.ell && b.n == e.n) {
                e.default_m = b.default_m;
                e.subspace_indices = b.subspace_indices;
            }
        }
        rows.push_back(std::move(e));
    }
    return rows;
}

inline std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open catalog file " + path);
    return parse_catalog(in);
}

inline std::optional<CatalogEntry> find_entry(const std::vector<CatalogEntry>& rows, int ell, int n) {
    for (const auto& e : rows) {
        if (e.ell == ell && e.n == n) return e;
    }
    return std::nullopt;
}

inline SurfaceParams build_surface(const CatalogEntry& e, double H = 0.5) {
    return build_surface(e.ell, e.n, H, e.theta_deg);
}

}  // namespace wente
