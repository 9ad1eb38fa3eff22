// On-disk cache of Fourier coefficient tables of the potential.
//
// One text file per (ell, n, H, theta, Nx, Ny). Doubles are written as
// hexadecimal floating point so a round trip is bit-exact:
//
//   wente-fourier-cache 1
//   ell 3
//   n 2
//   H 0x1p-1
//   theta 0x1.1bb9f559b3d07p+4
//   grid 1024 1024
//   range 4 9
//   c 0 0 0x1.6d6a1b0d9f3e1p+3
//   ...
#pragma once

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wente {

inline constexpr const char* kCacheMagic = "wente-fourier-cache";
inline constexpr int kCacheVersion = 1;
inline constexpr const char* kCacheDirEnv = "WENTE_CACHE_DIR";

/// Cosine coefficients c(j, k), 0 <= j <= jmax, 0 <= k <= kmax.
struct FourierTable {
    int jmax = -1;
    int kmax = -1;
    std::vector<double> values;

    bool empty() const { return values.empty(); }
    bool covers(int j, int k) const { return j >= 0 && k >= 0 && j <= jmax && k <= kmax; }
    double at(int j, int k) const { return values[static_cast<std::size_t>(j) * (kmax + 1) + k]; }
    double& at(int j, int k) { return values[static_cast<std::size_t>(j) * (kmax + 1) + k]; }

    friend bool operator==(const FourierTable&, const FourierTable&) = default;
};

struct CacheKey {
    int ell = 0;
    int n = 0;
    double H = 0.0;
    double theta_deg = 0.0;
    int nx = 0;
    int ny = 0;
};

inline std::string hex_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

inline double parse_hex_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw std::runtime_error("bad floating point field '" + s + "'");
    return v;
}

inline std::string cache_file_name(const CacheKey& key) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "fourier_%d_%d_H%016" PRIx64 "_t%016" PRIx64 "_%dx%d.txt", key.ell, key.n,
                  std::bit_cast<std::uint64_t>(key.H), std::bit_cast<std::uint64_t>(key.theta_deg), key.nx,
                  key.ny);
    return buf;
}

/// Directory named by WENTE_CACHE_DIR, or empty.
inline std::filesystem::path cache_dir_from_env() {
    const char* env = std::getenv(kCacheDirEnv);
    return env != nullptr ? std::filesystem::path(env) : std::filesystem::path();
}

inline void write_cache(std::ostream& out, const CacheKey& key, const FourierTable& table) {
    out << kCacheMagic << ' ' << kCacheVersion << '\n';
    out << "ell " << key.ell << '\n';
    out << "n " << key.n << '\n';
    out << "H " << hex_double(key.H) << '\n';
    out << "theta " << hex_double(key.theta_deg) << '\n';
    out << "grid " << key.nx << ' ' << key.ny << '\n';
    out << "range " << table.jmax << ' ' << table.kmax << '\n';
    for (int j = 0; j <= table.jmax; ++j)
        for (int k = 0; k <= table.kmax; ++k) out << "c " << j << ' ' << k << ' ' << hex_double(table.at(j, k)) << '\n';
}

/// Reads a cache record; returns nothing when the header or key does not match.
inline std::optional<FourierTable> read_cache(std::istream& in, const CacheKey& key) {
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kCacheMagic || version != kCacheVersion) return std::nullopt;

    std::string tag, h, t;
    CacheKey found;
    in >> tag >> found.ell >> tag >> found.n >> tag >> h >> tag >> t >> tag >> found.nx >> found.ny;
    if (!in) return std::nullopt;
    try {
        found.H = parse_hex_double(h);
        found.theta_deg = parse_hex_double(t);
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
    if (found.ell != key.ell || found.n != key.n || found.nx != key.nx || found.ny != key.ny ||
        std::bit_cast<std::uint64_t>(found.H) != std::bit_cast<std::uint64_t>(key.H) ||
        std::bit_cast<std::uint64_t>(found.theta_deg) != std::bit_cast<std::uint64_t>(key.theta_deg)) {
        return std::nullopt;
    }

    FourierTable table;
    if (!(in >> tag >> table.jmax >> table.kmax) || tag != "range" || table.jmax < 0 || table.kmax < 0) {
        return std::nullopt;
    }
    table.values.assign(static_cast<std::size_t>(table.jmax + 1) * (table.kmax + 1), 0.0);
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        int j = 0, k = 0;
        std::string v;
        if (!(in >> tag >> j >> k >> v) || tag != "c" || !table.covers(j, k)) return std::nullopt;
        try {
            table.at(j, k) = parse_hex_double(v);
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
    }
    return table;
}

inline std::optional<FourierTable> load_cached_table(const std::filesystem::path& dir, const CacheKey& key) {
    if (dir.empty()) return std::nullopt;
    std::ifstream in(dir / cache_file_name(key));
    if (!in) return std::nullopt;
    return read_cache(in, key);
}

inline void store_cached_table(const std::filesystem::path& dir, const CacheKey& key, const FourierTable& table) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    const auto final_path = dir / cache_file_name(key);
    const auto tmp_path = final_path.string() + ".tmp";
    {
        std::ofstream out(tmp_path);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp_path);
        write_cache(out, key, table);
    }
    std::filesystem::rename(tmp_path, final_path);
}

inline std::vector<std::filesystem::path> list_cache(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    if (dir.empty() || !std::filesystem::is_directory(dir)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("fourier_") && name.ends_with(".txt")) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Removes cache records only, never other files in the directory.
inline std::size_t clear_cache(const std::filesystem::path& dir) {
    std::size_t removed = 0;
    for (const auto& p : list_cache(dir)) removed += std::filesystem::remove(p) ? 1 : 0;
    return removed;
}

}  // namespace wente
