// Command-line front end: report, table2, table3, subspace, bounds, cache.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wente/wente.hpp"

#ifndef WENTE_DEFAULT_REFERENCE
#define WENTE_DEFAULT_REFERENCE "data/reference_values.json"
#endif

namespace {

enum Exit { ok = 0, inconsistent = 1, usage = 2, numerical = 3 };

struct Flags {
    std::string grid = "1024";
    std::string method = "fourier";
    std::string format = "json";
    std::string indices;
    bool strict = false;
};

void add_common(CLI::App* cmd, wente::RunConfig& cfg, Flags& f) {
    cmd->add_option("--surface", cfg.surface, "surface label ell/n, or 'all'");
    cmd->add_option("--H", cfg.H, "mean curvature")->capture_default_str();
    cmd->add_option("--format", f.format, "json, csv or text")->capture_default_str();
    cmd->add_option("--catalog", cfg.catalog_path, "catalog file with 'ell n theta' lines");
    cmd->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
}

void add_assembly(CLI::App* cmd, wente::RunConfig& cfg, Flags& f) {
    cmd->add_option("--grid", f.grid, "potential grid N or NxM (powers of two >= 64)")->capture_default_str();
    cmd->add_option("--method", f.method, "fourier, quadrature or both")->capture_default_str();
    cmd->add_option("--zero-tol", cfg.zero_tol, "absolute zero tolerance for eigenvalues (default 1e-6 ||A||)");
    cmd->add_option("--cache", cfg.cache_dir, "Fourier coefficient cache directory (env WENTE_CACHE_DIR)");
}

void finish_config(wente::RunConfig& cfg, const Flags& f) {
    std::tie(cfg.nx, cfg.ny) = wente::parse_grid(f.grid);
    cfg.method = wente::parse_method(f.method);
    cfg.format = wente::parse_format(f.format);
    if (!f.indices.empty()) cfg.indices = wente::parse_indices(f.indices);
    if (cfg.threads == 0) cfg.threads = 1;
}

bool all_pass(const std::vector<wente::TableRow>& rows) {
    for (const auto& r : rows)
        if (!r.pass()) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morse index bounds and Galerkin estimates for symmetric Wente tori"};
    app.require_subcommand(1);

    wente::RunConfig cfg;
    Flags f;
    std::string fixture = WENTE_DEFAULT_REFERENCE;

    auto* report = app.add_subcommand("report", "all bounds plus the Galerkin estimate");
    add_common(report, cfg, f);
    add_assembly(report, cfg, f);
    report->add_option("--m", cfg.m, "shell-order truncation (default: catalog value)");
    report->add_option("--indices", f.indices, "subspace basis indices, e.g. 1-5,10-13");
    report->add_option("--greedy-pool", cfg.greedy_pool, "pool size for the greedy subspace search, 0 to skip")
        ->capture_default_str();
    report->add_option("--theta-delta", cfg.theta_delta, "recount at theta +- delta degrees");

    auto* table2 = app.add_subcommand("table2", "periods, potential extrema and analytic bounds against reference");
    add_common(table2, cfg, f);
    table2->add_option("--fixture", fixture, "reference values file")->capture_default_str();
    table2->add_flag("--strict", f.strict, "exit nonzero when any cell is outside tolerance");

    auto* table3 = app.add_subcommand("table3", "Galerkin counts and eigenvalue ranges against reference");
    add_common(table3, cfg, f);
    add_assembly(table3, cfg, f);
    table3->add_option("--fixture", fixture, "reference values file")->capture_default_str();
    table3->add_flag("--strict", f.strict, "exit nonzero when any cell is outside tolerance");

    auto* subspace = app.add_subcommand("subspace", "definiteness of the form on chosen basis functions");
    add_common(subspace, cfg, f);
    add_assembly(subspace, cfg, f);
    subspace->add_option("--indices", f.indices, "basis indices, e.g. 1-5,7,17 (default: catalog set)");

    auto* bounds = app.add_subcommand("bounds", "Courant, sandwich and subspace bounds without the Galerkin step");
    add_common(bounds, cfg, f);
    add_assembly(bounds, cfg, f);
    bounds->add_option("--indices", f.indices, "subspace basis indices");

    auto* cache = app.add_subcommand("cache", "inspect or clear the Fourier coefficient cache");
    cache->require_subcommand(1);
    cache->add_option("--cache", cfg.cache_dir, "cache directory (env WENTE_CACHE_DIR)");
    auto* inspect = cache->add_subcommand("inspect", "list cache records");
    auto* clear = cache->add_subcommand("clear", "remove cache records");

    cfg.surface.clear();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }

    try {
        finish_config(cfg, f);
        if (cfg.surface.empty()) cfg.surface = (*report || *subspace) ? "3/2" : "all";

        if (*report) {
            std::cout << wente::render_reports(cfg, wente::compute_reports(cfg));
        } else if (*table2 || *table3) {
            cfg.fixture_path = fixture;
            const auto ref = wente::load_reference(fixture);
            const auto rows = *table2 ? wente::geometry_table(cfg, ref) : wente::galerkin_table(cfg, ref);
            std::cout << wente::render_table(cfg, *table2 ? "geometry_bounds" : "galerkin_estimates", rows);
            if (f.strict && !all_pass(rows)) return inconsistent;
        } else if (*subspace) {
            if (cfg.surface == "all") throw wente::ParameterError("subspace needs a single surface");
            const auto entry = wente::select_entries(cfg).front();
            const auto& idx = cfg.indices.empty() ? entry.subspace_indices : cfg.indices;
            if (idx.empty()) throw wente::ParameterError("no indices given and the catalog has no set for " + cfg.surface);
            const auto p = wente::build_surface(entry, cfg.H);
            std::cout << wente::render_subspace(cfg, p, wente::subspace_bound(p, idx, wente::assembly_config(cfg, cfg.threads)));
        } else if (*bounds) {
            std::cout << wente::render_bounds(cfg, wente::compute_bounds(cfg));
        } else if (*cache) {
            const auto dir = cfg.cache_dir.empty() ? wente::cache_dir_from_env() : std::filesystem::path(cfg.cache_dir);
            if (dir.empty()) throw wente::ParameterError("no cache directory (use --cache or WENTE_CACHE_DIR)");
            if (*inspect) {
                for (const auto& p : wente::list_cache(dir))
                    std::cout << p.filename().string() << ' ' << std::filesystem::file_size(p) << '\n';
            } else if (*clear) {
                std::cout << "removed " << wente::clear_cache(dir) << " record(s)\n";
            }
        }
    } catch (const wente::ParameterError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const wente::DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const wente::InconsistentBounds& e) {
        std::cerr << "consistency failure: " << e.what() << '\n';
        return inconsistent;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical;
    }
    return ok;
}
