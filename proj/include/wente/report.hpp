// Run configuration, report serialization (JSON, CSV, text) and the table
// reproduction commands shared by the command-line tool and the tests.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wente/bounds.hpp"
#include "wente/cache.hpp"
#include "wente/catalog.hpp"

namespace wente {

inline constexpr const char* kReportSchema = "wente-report/1";

using json = nlohmann::ordered_json;

enum class Format { json, csv, text };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    throw ParameterError("unknown format '" + s + "' (expected json, csv or text)");
}

inline const char* to_string(Format f) {
    switch (f) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        case Format::text: return "text";
    }
    return "?";
}

struct RunConfig {
    std::string surface = "3/2";  // "ell/n" or "all"
    int m = 0;                    // 0: the catalog truncation for the surface
    int nx = 1024;
    int ny = 1024;
    double H = 0.5;
    Method method = Method::fourier;
    double zero_tol = -1.0;  // < 0: 1e-6 ||A||
    Format format = Format::json;
    std::string cache_dir;
    std::string catalog_path;  // empty: built-in catalog
    std::string fixture_path;
    unsigned threads = 1;
    int greedy_pool = 30;
    double theta_delta = 0.0;
    std::vector<int> indices;
};

inline json to_json(const RunConfig& c) {
    json j;
    j["surface"] = c.surface;
    j["m"] = c.m;
    j["grid"] = {c.nx, c.ny};
    j["H"] = c.H;
    j["method"] = to_string(c.method);
    j["zero_tol"] = c.zero_tol < 0.0 ? json("relative 1e-6") : json(c.zero_tol);
    j["format"] = to_string(c.format);
    j["cache"] = c.cache_dir;
    j["catalog"] = c.catalog_path.empty() ? std::string("builtin") : c.catalog_path;
    j["threads"] = c.threads;
    j["greedy_pool"] = c.greedy_pool;
    j["theta_delta"] = c.theta_delta;
    if (!c.indices.empty()) j["indices"] = c.indices;
    return j;
}

inline std::pair<int, int> parse_label(const std::string& label) {
    const auto slash = label.find('/');
    auto as_int = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ParameterError("surface must look like 'ell/n', got '" + label + "'");
        }
        return std::stoi(s);
    };
    if (slash == std::string::npos) throw ParameterError("surface must look like 'ell/n', got '" + label + "'");
    const int ell = as_int(label.substr(0, slash));
    const int n = as_int(label.substr(slash + 1));
    validate_fraction(ell, n);
    return {ell, n};
}

inline std::vector<CatalogEntry> active_catalog(const RunConfig& c) {
    return c.catalog_path.empty() ? builtin_catalog() : load_catalog(c.catalog_path);
}

inline std::vector<CatalogEntry> select_entries(const RunConfig& c) {
    const auto catalog = active_catalog(c);
    if (c.surface == "all") return catalog;
    const auto [ell, n] = parse_label(c.surface);
    auto e = find_entry(catalog, ell, n);
    if (!e) throw ParameterError("surface " + c.surface + " is not in the catalog (add it with --catalog)");
    return {*e};
}

inline AssemblyConfig assembly_config(const RunConfig& c, unsigned threads) {
    AssemblyConfig a;
    a.method = c.method;
    a.nx = c.nx;
    a.ny = c.ny;
    a.cache_dir = c.cache_dir.empty() ? cache_dir_from_env() : std::filesystem::path(c.cache_dir);
    a.threads = threads;
    return a;
}

/// Bounded fan-out; result slots keep the input order.
template <typename T, typename Fn>
std::vector<T> run_ordered(std::size_t count, unsigned workers, Fn&& fn) {
    std::vector<std::optional<T>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<T> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

inline json range_json(const std::optional<std::pair<double, double>>& r) {
    return r ? json::array({r->first, r->second}) : json(nullptr);
}

inline json provenance_json(const Provenance& p) {
    json j;
    j["grid"] = {p.nx, p.ny};
    j["method"] = to_string(p.method);
    j["convergence_tol"] = p.tolerance;
    j["grid_change"] = p.grid_change;
    j["method_discrepancy"] = p.method_discrepancy ? json(*p.method_discrepancy) : json(nullptr);
    j["cache_hit"] = p.cache_hit;
    return j;
}

inline json report_json(const IndexReport& r) {
    json j;
    j["surface"] = r.label;
    j["ell"] = r.ell;
    j["n"] = r.n;
    j["H"] = r.H;
    j["theta_deg"] = r.theta_deg;
    j["x_period"] = r.x_period;
    j["y_period"] = r.y_period;
    j["v_min"] = r.v_min;
    j["v_max"] = r.v_max;
    j["courant_lower"] = r.courant_lower;
    j["sandwich_lower"] = r.sandwich.lower;
    j["sandwich_upper"] = r.sandwich.upper;
    j["subspace_lower"] = r.subspace_lower ? json(*r.subspace_lower) : json(nullptr);
    if (r.subspace) {
        j["subspace"] = {{"indices", r.subspace->indices},
                         {"max_eigenvalue", r.subspace->max_eigenvalue},
                         {"negative_definite", r.subspace->negative_definite}};
    }
    if (r.greedy) {
        j["greedy_subspace"] = {{"indices", r.greedy->indices}, {"max_eigenvalue", r.greedy->max_eigenvalue}};
    }
    j["basis"] = r.basis_kind;
    j["m_used"] = r.m_used;
    j["shell_complete"] = r.shell_complete;
    j["galerkin_k"] = r.galerkin_k;
    j["index_estimate"] = {r.index_estimate.first, r.index_estimate.second};
    j["uncertain_count"] = r.spectrum.uncertain_count;
    j["zero_tol"] = r.spectrum.zero_tol;
    j["negative_range"] = range_json(r.negative_range);
    j["positive_range"] = range_json(r.positive_range);
    j["first_positive_six"] = r.spectrum.first_positive_six;
    j["spectral_norm"] = r.spectrum.norm;
    j["eigen_residual"] = r.spectrum.residual;
    j["provenance"] = provenance_json(r.provenance);
    if (r.theta_sensitivity) {
        j["theta_sensitivity"] = {{"delta_deg", r.theta_sensitivity->delta},
                                  {"count_minus", r.theta_sensitivity->count_minus},
                                  {"count_plus", r.theta_sensitivity->count_plus}};
    }
    j["notes"] = r.notes;
    return j;
}

inline std::string fmt6(double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
}

inline std::string range_text(const std::optional<std::pair<double, double>>& r) {
    return r ? "(" + fmt6(r->first) + ", " + fmt6(r->second) + ")" : std::string("-");
}

inline std::string render_reports(const RunConfig& cfg, const std::vector<IndexReport>& reports) {
    std::ostringstream out;
    switch (cfg.format) {
        case Format::json: {
            json doc;
            doc["schema"] = kReportSchema;
            doc["config"] = to_json(cfg);
            doc["reports"] = json::array();
            for (const auto& r : reports) doc["reports"].push_back(report_json(r));
            out << doc.dump(2) << '\n';
            break;
        }
        case Format::csv: {
            out << "surface,m,courant_lower,sandwich_lower,sandwich_upper,subspace_lower,galerkin_k,estimate_low,"
                   "estimate_high,neg_min,neg_max,pos_min,pos_max,grid\n";
            for (const auto& r : reports) {
                out << r.label << ',' << r.m_used << ',' << r.courant_lower << ',' << r.sandwich.lower << ','
                    << r.sandwich.upper << ',' << (r.subspace_lower ? std::to_string(*r.subspace_lower) : "") << ','
                    << r.galerkin_k << ',' << r.index_estimate.first << ',' << r.index_estimate.second << ','
                    << std::setprecision(17) << (r.negative_range ? r.negative_range->first : NAN) << ','
                    << (r.negative_range ? r.negative_range->second : NAN) << ','
                    << (r.positive_range ? r.positive_range->first : NAN) << ','
                    << (r.positive_range ? r.positive_range->second : NAN) << ',' << r.provenance.nx << '\n';
            }
            break;
        }
        case Format::text: {
            for (const auto& r : reports) {
                out << "W " << r.label << "  (H=" << fmt6(r.H) << ", theta=" << fmt6(r.theta_deg) << ")\n";
                out << "  periods x, y          " << fmt6(r.x_period) << ", " << fmt6(r.y_period) << '\n';
                out << "  V_min, V_max          " << fmt6(r.v_min) << ", " << fmt6(r.v_max) << '\n';
                out << "  Courant lower         " << r.courant_lower << '\n';
                out << "  sandwich lower/upper  " << r.sandwich.lower << " / " << r.sandwich.upper << '\n';
                out << "  subspace lower        " << (r.subspace_lower ? std::to_string(*r.subspace_lower) : "-") << '\n';
                out << "  Galerkin m            " << r.m_used << " (" << r.basis_kind << ")\n";
                out << "  index estimate        " << r.index_estimate.first << " or " << r.index_estimate.second << '\n';
                out << "  negative eigenvalues  " << range_text(r.negative_range) << '\n';
                out << "  first six positive    " << range_text(r.positive_range) << '\n';
                out << "  grid                  " << r.provenance.nx << "x" << r.provenance.ny << '\n';
                if (r.provenance.method_discrepancy) {
                    out << "  method discrepancy    " << fmt6(*r.provenance.method_discrepancy) << '\n';
                }
                for (const auto& note : r.notes) out << "  note: " << note << '\n';
            }
            break;
        }
    }
    return out.str();
}

inline ReportOptions report_options(const RunConfig& cfg, const CatalogEntry& e, unsigned assembly_threads) {
    ReportOptions o;
    o.m = cfg.m > 0 ? cfg.m : e.default_m;
    o.assembly = assembly_config(cfg, assembly_threads);
    o.zero_tol = cfg.zero_tol;
    o.subspace_indices = cfg.indices.empty() ? e.subspace_indices : cfg.indices;
    o.greedy_pool = cfg.greedy_pool;
    o.theta_delta = cfg.theta_delta;
    return o;
}

inline std::vector<IndexReport> compute_reports(const RunConfig& cfg) {
    const auto entries = select_entries(cfg);
    const unsigned workers = entries.size() > 1 ? cfg.threads : 1;
    const unsigned inner = entries.size() > 1 ? 1 : cfg.threads;
    return run_ordered<IndexReport>(entries.size(), workers, [&](std::size_t i) {
        const auto& e = entries[i];
        return full_report(build_surface(e, cfg.H), report_options(cfg, e, inner));
    });
}

// ---- reference values -------------------------------------------------------

struct GeometryRef {
    int row = 0;
    std::string label;
    double theta_deg = 0.0;
    double x_period = 0.0;
    double y_period = 0.0;
    double v_min = 0.0;
    double v_max = 0.0;
    int courant_lower = 0;
    int sandwich_lower = 0;
    int sandwich_upper = 0;
};

struct GalerkinRef {
    int row = 0;
    std::string label;
    std::optional<int> subspace_lower;
    std::pair<int, int> index_estimate;
    int m = 0;
    std::pair<double, double> negative_range;
    std::pair<double, double> positive_range;
};

struct SubspaceRef {
    std::string label;
    std::vector<int> indices;
    int lower_bound = 0;
    std::vector<std::vector<double>> entries;  // empty when not published
    std::optional<bool> diagonal;
};

struct ReferenceData {
    double H = 0.5;
    std::vector<GeometryRef> geometry;
    std::vector<GalerkinRef> galerkin;
    std::vector<SubspaceRef> matrices;
    std::vector<SubspaceRef> subspace_bounds;
};

inline ReferenceData parse_reference(const json& doc) {
    if (doc.value("format", "") != "wente-reference/1") throw ParameterError("unrecognized reference file format");
    ReferenceData d;
    d.H = doc.at("H").get<double>();
    for (const auto& r : doc.at("geometry_bounds").at("rows")) {
        GeometryRef g;
        g.row = r.at("row");
        g.label = r.at("label");
        g.theta_deg = r.at("theta_deg");
        g.x_period = r.at("x_period");
        g.y_period = r.at("y_period");
        g.v_min = r.at("v_min");
        g.v_max = r.at("v_max");
        g.courant_lower = r.at("courant_lower");
        g.sandwich_lower = r.at("sandwich_lower");
        g.sandwich_upper = r.at("sandwich_upper");
        d.geometry.push_back(g);
    }
    for (const auto& r : doc.at("galerkin_estimates").at("rows")) {
        GalerkinRef g;
        g.row = r.at("row");
        g.label = r.at("label");
        if (!r.at("subspace_lower").is_null()) g.subspace_lower = r.at("subspace_lower").get<int>();
        g.index_estimate = {r.at("index_estimate")[0], r.at("index_estimate")[1]};
        g.m = r.at("m");
        g.negative_range = {r.at("negative_range")[0], r.at("negative_range")[1]};
        g.positive_range = {r.at("positive_range")[0], r.at("positive_range")[1]};
        d.galerkin.push_back(g);
    }
    auto subspace = [](const json& r) {
        SubspaceRef s;
        s.label = r.at("label");
        s.indices = r.at("indices").get<std::vector<int>>();
        s.lower_bound = r.at("lower_bound");
        if (r.contains("entries")) s.entries = r.at("entries").get<std::vector<std::vector<double>>>();
        if (r.contains("diagonal")) s.diagonal = r.at("diagonal").get<bool>();
        return s;
    };
    for (const auto& r : doc.at("subspace_matrices")) d.matrices.push_back(subspace(r));
    for (const auto& r : doc.at("subspace_bounds")) d.subspace_bounds.push_back(subspace(r));
    return d;
}

inline ReferenceData load_reference(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open reference file " + path);
    return parse_reference(json::parse(in));
}

inline double relative_difference(double computed, double expected) {
    return std::abs(computed - expected) / std::abs(expected);
}

// Tolerances for comparing against values printed to a few digits.
inline constexpr double kPeriodTol = 0.01;       // absolute, periods
inline constexpr double kVmaxRelTol = 1e-3;      // relative, V_max
inline constexpr double kRangeRelTol = 0.02;     // relative, eigenvalue range endpoints
inline constexpr double kMatrixEntryTol = 0.05;  // absolute, subspace matrix entries

struct Cell {
    std::string column;
    json computed;
    json expected;
    json difference;
    bool pass = false;
};

struct TableRow {
    std::string label;
    int reference_row = 0;
    std::vector<Cell> cells;
    bool pass() const {
        return std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c.pass; });
    }
};

inline Cell abs_cell(std::string col, double computed, double expected, double tol) {
    const double d = computed - expected;
    return {std::move(col), computed, expected, d, std::abs(d) <= tol};
}

inline Cell rel_cell(std::string col, double computed, double expected, double tol) {
    const double d = relative_difference(computed, expected);
    return {std::move(col), computed, expected, d, d <= tol};
}

inline Cell int_cell(std::string col, int computed, int expected) {
    return {std::move(col), computed, expected, computed - expected, computed == expected};
}

inline TableRow geometry_row(const SurfaceParams& p, const GeometryRef& ref) {
    TableRow row;
    row.label = p.label();
    row.reference_row = ref.row;
    const auto ext = potential_extrema(p);
    const Sandwich s = potential_sandwich(p);
    row.cells.push_back(abs_cell("x_period", p.x_period, ref.x_period, kPeriodTol));
    row.cells.push_back(abs_cell("y_period", p.y_period, ref.y_period, kPeriodTol));
    row.cells.push_back(abs_cell("v_min", ext.v_min, ref.v_min, 0.0));
    row.cells.push_back(rel_cell("v_max", ext.v_max, ref.v_max, kVmaxRelTol));
    row.cells.push_back(int_cell("courant_lower", courant_bound(p.ell, p.n), ref.courant_lower));
    row.cells.push_back(int_cell("sandwich_lower", s.lower, ref.sandwich_lower));
    row.cells.push_back(int_cell("sandwich_upper", s.upper, ref.sandwich_upper));
    return row;
}

/// One row per surface that has published estimates; reruns the Galerkin
/// pipeline at the published truncation.
inline TableRow galerkin_row(const SurfaceParams& p, const GalerkinRef& ref, const std::vector<int>& subspace,
                             const AssemblyConfig& cfg, double zero_tol = -1.0) {
    TableRow row;
    row.label = p.label();
    row.reference_row = ref.row;
    if (ref.subspace_lower && !subspace.empty()) {
        row.cells.push_back(int_cell("subspace_lower", subspace_bound(p, subspace, cfg).implied_lower, *ref.subspace_lower));
    }
    const GalerkinMatrix g = assemble(p, ref.m, cfg);
    const SpectrumEstimate est = eigen_symmetric(g.entries, zero_tol);
    const int k = est.negative_count;
    row.cells.push_back(int_cell("galerkin_k", k, ref.index_estimate.second));
    const auto& ev = est.eigenvalues;
    if (k > 0) {
        row.cells.push_back(rel_cell("negative_min", ev.front(), ref.negative_range.first, kRangeRelTol));
        row.cells.push_back(rel_cell("negative_max", ev[static_cast<std::size_t>(k) - 1], ref.negative_range.second, kRangeRelTol));
    }
    if (!est.first_positive_six.empty()) {
        const auto& six = est.first_positive_six;
        row.cells.push_back(rel_cell("positive_min", *std::min_element(six.begin(), six.end()), ref.positive_range.first, kRangeRelTol));
        row.cells.push_back(rel_cell("positive_max", *std::max_element(six.begin(), six.end()), ref.positive_range.second, kRangeRelTol));
    }
    return row;
}

inline std::string render_table(const RunConfig& cfg, const std::string& name, const std::vector<TableRow>& rows) {
    std::ostringstream out;
    switch (cfg.format) {
        case Format::json: {
            json doc;
            doc["schema"] = kReportSchema;
            doc["table"] = name;
            doc["config"] = to_json(cfg);
            doc["rows"] = json::array();
            for (const auto& r : rows) {
                json jr;
                jr["surface"] = r.label;
                jr["reference_row"] = r.reference_row;
                jr["pass"] = r.pass();
                jr["cells"] = json::array();
                for (const auto& c : r.cells) {
                    jr["cells"].push_back({{"column", c.column},
                                           {"computed", c.computed},
                                           {"expected", c.expected},
                                           {"difference", c.difference},
                                           {"pass", c.pass}});
                }
                doc["rows"].push_back(jr);
            }
            out << doc.dump(2) << '\n';
            break;
        }
        case Format::csv: {
            out << "surface,reference_row,column,computed,expected,difference,pass\n";
            for (const auto& r : rows)
                for (const auto& c : r.cells)
                    out << r.label << ',' << r.reference_row << ',' << c.column << ',' << c.computed.dump() << ','
                        << c.expected.dump() << ',' << c.difference.dump() << ',' << (c.pass ? "pass" : "FAIL") << '\n';
            break;
        }
        case Format::text: {
            for (const auto& r : rows) {
                out << "W " << r.label << (r.pass() ? "  pass" : "  FAIL") << '\n';
                for (const auto& c : r.cells) {
                    auto show = [](const json& v) { return v.is_number_float() ? fmt6(v.get<double>()) : v.dump(); };
                    out << "  " << std::left << std::setw(16) << c.column << std::right << std::setw(12)
                        << show(c.computed) << "  expected " << std::setw(10) << show(c.expected)
                        << (c.pass ? "" : "  FAIL") << '\n';
                }
            }
            break;
        }
    }
    return out.str();
}

inline std::vector<TableRow> geometry_table(const RunConfig& cfg, const ReferenceData& ref) {
    std::vector<TableRow> rows;
    for (const auto& e : select_entries(cfg)) {
        for (const auto& g : ref.geometry) {
            if (g.label == e.label()) rows.push_back(geometry_row(build_surface(e, ref.H), g));
        }
    }
    return rows;
}

inline std::vector<TableRow> galerkin_table(const RunConfig& cfg, const ReferenceData& ref) {
    std::vector<std::pair<CatalogEntry, GalerkinRef>> work;
    for (const auto& e : select_entries(cfg)) {
        for (const auto& g : ref.galerkin) {
            if (g.label == e.label()) work.emplace_back(e, g);
        }
    }
    return run_ordered<TableRow>(work.size(), cfg.threads, [&](std::size_t i) {
        const auto& [e, g] = work[i];
        return galerkin_row(build_surface(e, ref.H), g, e.subspace_indices, assembly_config(cfg, 1), cfg.zero_tol);
    });
}

/// Value rounded to three significant figures, the way matrices are displayed.
inline std::string three_sig(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline std::string render_subspace(const RunConfig& cfg, const SurfaceParams& p, const SubspaceResult& s) {
    std::ostringstream out;
    const std::size_t n = s.indices.size();
    if (cfg.format == Format::json) {
        json doc;
        doc["schema"] = kReportSchema;
        doc["config"] = to_json(cfg);
        doc["surface"] = p.label();
        doc["indices"] = s.indices;
        json rows = json::array(), rounded = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            json r = json::array(), rr = json::array();
            for (std::size_t j = 0; j < n; ++j) {
                r.push_back(s.matrix(i, j));
                rr.push_back(three_sig(s.matrix(i, j)));
            }
            rows.push_back(r);
            rounded.push_back(rr);
        }
        doc["matrix"] = rows;
        doc["matrix_rounded"] = rounded;
        doc["eigenvalues"] = s.eigenvalues;
        doc["max_eigenvalue"] = s.max_eigenvalue;
        doc["negative_definite"] = s.negative_definite;
        doc["implied_lower"] = s.implied_lower;
        out << doc.dump(2) << '\n';
    } else if (cfg.format == Format::csv) {
        out << "row_index,col_index,entry\n";
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out << s.indices[i] << ',' << s.indices[j] << ',' << std::setprecision(17) << s.matrix(i, j) << '\n';
    } else {
        out << "W " << p.label() << " on basis functions";
        for (int i : s.indices) out << ' ' << i;
        out << "\n";
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) out << std::setw(8) << three_sig(s.matrix(i, j));
            out << '\n';
        }
        out << "largest eigenvalue " << fmt6(s.max_eigenvalue) << '\n';
        out << (s.negative_definite ? "negative definite, index >= " + std::to_string(s.implied_lower)
                                    : std::string("not negative definite"))
            << '\n';
    }
    return out.str();
}

struct BoundsRow {
    std::string label;
    int courant = 0;
    Sandwich sandwich;
    std::optional<SubspaceResult> subspace;
};

/// "1-5,10,13-15" style lists of 1-based indices.
inline std::vector<int> parse_indices(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    auto number = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ParameterError("bad index list '" + text + "'");
        }
        return std::stoi(s);
    };
    while (std::getline(ss, part, ',')) {
        part.erase(std::remove(part.begin(), part.end(), ' '), part.end());
        if (part.empty()) continue;
        if (auto dash = part.find('-'); dash != std::string::npos) {
            const int lo = number(part.substr(0, dash));
            const int hi = number(part.substr(dash + 1));
            if (hi < lo) throw ParameterError("bad index range '" + part + "'");
            for (int i = lo; i <= hi; ++i) out.push_back(i);
        } else {
            out.push_back(number(part));
        }
    }
    if (out.empty()) throw ParameterError("index list is empty");
    return out;
}

/// "N" or "NxM".
inline std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    try {
        std::size_t used = 0;
        if (x == std::string::npos) {
            const int n = std::stoi(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {n, n};
        }
        const std::string a = text.substr(0, x), b = text.substr(x + 1);
        const int nx = std::stoi(a, &used);
        if (used != a.size()) throw std::invalid_argument(text);
        const int ny = std::stoi(b, &used);
        if (used != b.size()) throw std::invalid_argument(text);
        return {nx, ny};
    } catch (const std::logic_error&) {
        throw ParameterError("grid must be N or NxM, got '" + text + "'");
    }
}

inline std::vector<BoundsRow> compute_bounds(const RunConfig& cfg) {
    const auto entries = select_entries(cfg);
    return run_ordered<BoundsRow>(entries.size(), cfg.threads, [&](std::size_t i) {
        const auto& e = entries[i];
        const SurfaceParams p = build_surface(e, cfg.H);
        BoundsRow b;
        b.label = e.label();
        b.courant = courant_bound(e.ell, e.n);
        b.sandwich = potential_sandwich(p);
        const auto& idx = cfg.indices.empty() ? e.subspace_indices : cfg.indices;
        if (!idx.empty()) b.subspace = subspace_bound(p, idx, assembly_config(cfg, 1));
        return b;
    });
}

inline std::string render_bounds(const RunConfig& cfg, const std::vector<BoundsRow>& rows) {
    std::ostringstream out;
    if (cfg.format == Format::json) {
        json doc;
        doc["schema"] = kReportSchema;
        doc["config"] = to_json(cfg);
        doc["bounds"] = json::array();
        for (const auto& b : rows) {
            doc["bounds"].push_back({{"surface", b.label},
                                     {"courant_lower", b.courant},
                                     {"sandwich_lower", b.sandwich.lower},
                                     {"sandwich_upper", b.sandwich.upper},
                                     {"sandwich_boundary", b.sandwich.min_boundary || b.sandwich.max_boundary},
                                     {"subspace_lower", b.subspace ? json(b.subspace->implied_lower) : json(nullptr)}});
        }
        out << doc.dump(2) << '\n';
    } else if (cfg.format == Format::csv) {
        out << "surface,courant_lower,sandwich_lower,sandwich_upper,subspace_lower\n";
        for (const auto& b : rows) {
            out << b.label << ',' << b.courant << ',' << b.sandwich.lower << ',' << b.sandwich.upper << ','
                << (b.subspace ? std::to_string(b.subspace->implied_lower) : "") << '\n';
        }
    } else {
        out << std::left << std::setw(8) << "surface" << std::right << std::setw(10) << "courant" << std::setw(10)
            << "mu-1" << std::setw(10) << "nu" << std::setw(10) << "subspace" << '\n';
        for (const auto& b : rows) {
            out << std::left << std::setw(8) << b.label << std::right << std::setw(10) << b.courant << std::setw(10)
                << b.sandwich.lower << std::setw(10) << b.sandwich.upper << std::setw(10)
                << (b.subspace ? std::to_string(b.subspace->implied_lower) : "-") << '\n';
        }
    }
    return out.str();
}

}  // namespace wente
