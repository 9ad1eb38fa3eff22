#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "wente/report.hpp"

namespace {

const std::string kReference = WENTE_DATA_DIR "/reference_values.json";

}  // namespace

TEST(ParseLabel, AcceptsAndRejects) {
    EXPECT_EQ(wente::parse_label("3/2"), (std::pair{3, 2}));
    EXPECT_EQ(wente::parse_label("73/72"), (std::pair{73, 72}));
    for (const char* bad : {"9/9", "3-2", "a/2", "3/", "/2", "-3/2", "2/3", "4/2"}) {
        EXPECT_THROW(wente::parse_label(bad), wente::ParameterError) << bad;
    }
}

TEST(ParseIndices, RangesAndErrors) {
    EXPECT_EQ(wente::parse_indices("1-5,10"), (std::vector<int>{1, 2, 3, 4, 5, 10}));
    EXPECT_EQ(wente::parse_indices(" 7 , 3"), (std::vector<int>{7, 3}));
    for (const char* bad : {"", ",", "5-3", "x", "1-", "1.5"}) {
        EXPECT_THROW(wente::parse_indices(bad), wente::ParameterError) << bad;
    }
}

TEST(ParseGrid, SquareAndRectangular) {
    EXPECT_EQ(wente::parse_grid("512"), (std::pair{512, 512}));
    EXPECT_EQ(wente::parse_grid("256x1024"), (std::pair{256, 1024}));
    for (const char* bad : {"", "abc", "12x", "x12", "64y64"}) {
        EXPECT_THROW(wente::parse_grid(bad), wente::ParameterError) << bad;
    }
}

TEST(ParseFormat, KnownNames) {
    EXPECT_EQ(wente::parse_format("csv"), wente::Format::csv);
    EXPECT_THROW(wente::parse_format("xml"), wente::ParameterError);
    EXPECT_EQ(wente::parse_method("both"), wente::Method::both);
    EXPECT_THROW(wente::parse_method("fft"), wente::ParameterError);
}

TEST(SelectEntries, AllOneOrUnknown) {
    wente::RunConfig cfg;
    cfg.surface = "all";
    EXPECT_EQ(wente::select_entries(cfg).size(), 19u);
    cfg.surface = "13/7";
    ASSERT_EQ(wente::select_entries(cfg).size(), 1u);
    EXPECT_EQ(wente::select_entries(cfg)[0].default_m, 181);
    cfg.surface = "9/8";
    EXPECT_THROW(wente::select_entries(cfg), wente::ParameterError);
}

TEST(RenderReports, JsonIsStableAndComplete) {
    wente::RunConfig cfg;
    cfg.surface = "4/3";
    cfg.m = 81;
    cfg.greedy_pool = 0;
    const std::string first = wente::render_reports(cfg, wente::compute_reports(cfg));
    const std::string second = wente::render_reports(cfg, wente::compute_reports(cfg));
    EXPECT_EQ(first, second);

    const auto doc = wente::json::parse(first);
    EXPECT_EQ(doc.at("schema"), wente::kReportSchema);
    EXPECT_EQ(doc.at("config").at("m"), 81);
    const auto& r = doc.at("reports").at(0);
    EXPECT_EQ(r.at("surface"), "4/3");
    EXPECT_EQ(r.at("index_estimate"), wente::json::array({9, 10}));
    EXPECT_EQ(r.at("courant_lower"), 1);
    EXPECT_EQ(r.at("subspace_lower"), 9);
    EXPECT_EQ(r.at("provenance").at("grid").at(0), 1024);
    EXPECT_EQ(r.at("first_positive_six").size(), 6u);
    EXPECT_EQ(wente::json::parse(r.dump()), r);
}

TEST(RenderReports, CsvAndText) {
    wente::RunConfig cfg;
    cfg.surface = "3/2";
    cfg.m = 41;
    cfg.greedy_pool = 0;
    const auto reports = wente::compute_reports(cfg);
    cfg.format = wente::Format::csv;
    const std::string csv = wente::render_reports(cfg, reports);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
    EXPECT_TRUE(csv.starts_with("surface,m,"));
    cfg.format = wente::Format::text;
    EXPECT_NE(wente::render_reports(cfg, reports).find("index estimate"), std::string::npos);
}

TEST(RunOrdered, KeepsOrderAndRethrows) {
    const auto v = wente::run_ordered<int>(50, 4, [](std::size_t i) { return static_cast<int>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], static_cast<int>(i * i));
    EXPECT_THROW(wente::run_ordered<int>(5, 3,
                                         [](std::size_t i) {
                                             if (i == 3) throw wente::ParameterError("boom");
                                             return 0;
                                         }),
                 wente::ParameterError);
}

TEST(Reference, LoadsShippedFile) {
    const auto ref = wente::load_reference(kReference);
    EXPECT_EQ(ref.geometry.size(), 19u);
    EXPECT_EQ(ref.galerkin.size(), 17u);
    EXPECT_EQ(ref.matrices.size(), 2u);
    EXPECT_FALSE(ref.subspace_bounds.empty());
    EXPECT_THROW(wente::parse_reference(wente::json{{"format", "other"}}), wente::ParameterError);
    EXPECT_THROW(wente::load_reference("/nonexistent/ref.json"), wente::ParameterError);
}

TEST(Reference, GeometryTableAgreesToPrintedPrecision) {
    wente::RunConfig cfg;
    cfg.surface = "all";
    const auto rows = wente::geometry_table(cfg, wente::load_reference(kReference));
    ASSERT_EQ(rows.size(), 19u);
    // a few long periods are printed to one decimal only; those must agree once rounded the same way
    auto rounds_to = [](double computed, double printed) {
        return std::abs(std::round(computed * 10.0) / 10.0 - printed) < 1e-12;
    };
    for (const auto& r : rows) {
        for (const auto& c : r.cells) {
            const bool period = c.column == "x_period" || c.column == "y_period";
            EXPECT_TRUE(c.pass || (period && rounds_to(c.computed.get<double>(), c.expected.get<double>())))
                << r.label << ' ' << c.column << ' ' << c.computed.dump();
        }
    }
}

TEST(Reference, GalerkinRowFourThirds) {
    const auto ref = wente::load_reference(kReference);
    const auto it = std::find_if(ref.galerkin.begin(), ref.galerkin.end(), [](const auto& g) { return g.label == "4/3"; });
    ASSERT_NE(it, ref.galerkin.end());
    const auto row = wente::galerkin_row(wente::build_surface(4, 3, 0.5, 12.7898), *it,
                                         wente::builtin_catalog()[1].subspace_indices, {});
    EXPECT_TRUE(row.pass());
}

TEST(RenderSubspace, ThreeSignificantFigures) {
    EXPECT_EQ(wente::three_sig(-9.4987), "-9.5");
    EXPECT_EQ(wente::three_sig(-13.24), "-13.2");
    EXPECT_EQ(wente::three_sig(0.0), "0");
    wente::RunConfig cfg;
    cfg.format = wente::Format::text;
    const auto p = wente::build_surface(3, 2, 0.5, 17.7324);
    const auto text = wente::render_subspace(cfg, p, wente::subspace_bound(p, {1, 2, 3, 4, 5, 7, 8, 9, 17}));
    EXPECT_NE(text.find("negative definite, index >= 8"), std::string::npos);
}

TEST(Bounds, CsvRows) {
    wente::RunConfig cfg;
    cfg.surface = "all";
    cfg.format = wente::Format::csv;
    cfg.threads = 4;
    const auto rows = wente::compute_bounds(cfg);
    ASSERT_EQ(rows.size(), 19u);
    EXPECT_EQ(rows[0].label, "3/2");
    EXPECT_EQ(rows[0].subspace->implied_lower, 8);
    const auto csv = wente::render_bounds(cfg, rows);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 20);
}
