#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wente/assembly.hpp"
#include "wente/catalog.hpp"

namespace {

wente::SurfaceParams three_halves() { return wente::build_surface(3, 2, 0.5, 17.7324); }
wente::SurfaceParams four_thirds() { return wente::build_surface(4, 3, 0.5, 12.7898); }

}  // namespace

TEST(SamplePotential, RejectsBadGrids) {
    const auto p = three_halves();
    EXPECT_THROW(wente::sample_potential(p, 32, 64), wente::ParameterError);
    EXPECT_THROW(wente::sample_potential(p, 96, 64), wente::ParameterError);
    EXPECT_NO_THROW(wente::sample_potential(p, 64, 128));
}

TEST(SamplePotential, ConstantFieldHasOnlyMeanCoefficient) {
    const auto geom = wente::wente_geometry(three_halves());
    const auto field = wente::sample_field(geom, [](double, double) { return 3.5; }, 64, 64, {6, 6});
    for (int j = 0; j <= 6; ++j)
        for (int k = 0; k <= 6; ++k) EXPECT_NEAR(field.fourier.at(j, k), j == 0 && k == 0 ? 3.5 : 0.0, 1e-14);
}

TEST(SamplePotential, MeanAgreesAcrossResolutions) {
    const auto p = three_halves();
    const auto coarse = wente::sample_potential(p, 256, 256);
    const auto fine = wente::sample_potential(p, 512, 512);
    EXPECT_NEAR(coarse.fourier.at(0, 0), fine.fourier.at(0, 0), 1e-9);
    // mean of V over the whole torus by direct parallelogram quadrature
    const auto lat = wente::lattice(p);
    const double mean =
        oracle::parallelogram_integral(lat, [&](double x, double y) { return wente::potential(p, x, y); }, 1024, 512) /
        lat.area();
    EXPECT_NEAR(fine.fourier.at(0, 0), mean, 1e-9);
}

TEST(SamplePotential, SineChannelsVanish) {
    const auto field = wente::sample_potential(four_thirds(), 128, 128);
    for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k) {
            EXPECT_LT(std::abs(field.channel_coefficient(j, k, wente::Phase::sine, wente::Phase::cosine)), 1e-10);
            EXPECT_LT(std::abs(field.channel_coefficient(j, k, wente::Phase::cosine, wente::Phase::sine)), 1e-10);
            EXPECT_LT(std::abs(field.channel_coefficient(j, k, wente::Phase::sine, wente::Phase::sine)), 1e-10);
        }
}

TEST(SamplePotential, OffLatticeFrequenciesVanish) {
    const auto field = wente::sample_potential(three_halves(), 128, 128);
    EXPECT_EQ(field.coefficient(1, 0), 0.0);
    EXPECT_EQ(field.coefficient(4, 1), 0.0);
    EXPECT_NE(field.coefficient(4, 2), 0.0);
    EXPECT_THROW(field.coefficient(4 * 100, 0), wente::MissingCoefficient);
}

TEST(BEntry, ConstantPotentialOnConstantFunction) {
    const auto p = three_halves();
    const auto geom = wente::wente_geometry(p);
    const auto field = wente::sample_field(geom, [](double, double) { return 2.25; }, 64, 64);
    const auto u1 = wente::enumerate_basis(wente::lattice(p), 1).functions[0];
    EXPECT_NEAR(wente::b_entry_quadrature(field, u1, u1), 2.25, 1e-12);
    EXPECT_NEAR(wente::b_entry_fourier(field, u1, u1), 2.25, 1e-12);
}

TEST(BEntry, MixedPhaseIsZero) {
    const auto p = three_halves();
    const auto field = wente::sample_potential(p, 256, 256);
    const auto en = wente::enumerate_basis(wente::lattice(p), 41);
    EXPECT_EQ(wente::b_entry_fourier(field, en.at(1), en.at(2)), 0.0);
    EXPECT_NEAR(wente::b_entry_quadrature(field, en.at(1), en.at(2)), 0.0, 1e-10);
}

TEST(BEntry, FirstDiagonalOfThreeHalves) {
    const auto p = three_halves();
    const auto field = wente::sample_potential(p, 512, 512);
    const auto u1 = wente::enumerate_basis(wente::lattice(p), 1).functions[0];
    EXPECT_NEAR(0.0 - wente::b_entry_quadrature(field, u1, u1), -9.50, 0.005);
}

TEST(BEntry, FourierMatchesParallelogramOracle) {
    // the oracle integrates V u_i u_j over the lattice parallelogram directly
    for (auto p : {three_halves(), four_thirds()}) {
        const auto field = wente::sample_potential(p, 512, 512, {8, 8});
        const auto en = wente::enumerate_basis(wente::lattice(p), 25);
        for (auto [i, j] : {std::pair{1, 1}, std::pair{1, 9}, std::pair{4, 6}, std::pair{5, 7}, std::pair{13, 13}, std::pair{2, 2}}) {
            const double f = wente::b_entry_fourier(field, en.at(i), en.at(j));
            const double o = oracle::b_entry(p, en.at(i), en.at(j), 2048, 1024);
            EXPECT_NEAR(f, o, 1e-8 * std::max(1.0, std::abs(o))) << p.label() << " " << i << "," << j;
        }
    }
}

TEST(BEntry, FourierEqualsQuadratureOnRandomPairs) {
    std::mt19937 rng(12345);
    for (auto p : {three_halves(), four_thirds()}) {
        const auto field = wente::sample_potential(p, 256, 256, {8, 8});
        const auto en = wente::enumerate_basis(wente::lattice(p), 41);
        std::uniform_int_distribution<int> pick(1, 41);
        for (int t = 0; t < 20; ++t) {
            const int i = pick(rng), j = pick(rng);
            const double f = wente::b_entry_fourier(field, en.at(i), en.at(j));
            const double q = wente::b_entry_quadrature(field, en.at(i), en.at(j));
            EXPECT_NEAR(f, q, 1e-9 * std::max(1.0, std::abs(f))) << i << "," << j;
        }
    }
}

TEST(BEntry, QuadratureRejectsNyquistViolation) {
    const auto p = three_halves();
    const auto field = wente::sample_potential(p, 64, 64);
    const auto u = wente::make_basis_function(wente::lattice(p), 1, 0, 60, wente::Phase::cosine);
    EXPECT_THROW(wente::b_entry_quadrature(field, u, u), wente::ParameterError);
}

TEST(BEntry, RejectsForeignBasisFunction) {
    const auto field = wente::sample_potential(three_halves(), 64, 64);
    const auto other = wente::enumerate_basis(wente::lattice(four_thirds()), 3);
    EXPECT_THROW(wente::b_entry_fourier(field, other.at(2), other.at(2)), wente::ParameterError);
}

TEST(Assemble, ThreeHalvesSubspaceIsDiagonal) {
    const auto g = wente::assemble_subset(three_halves(), {1, 2, 3, 4, 5, 7, 8, 9, 17});
    const double expected[9] = {-9.50, -7.99, -7.99, -1.36, -13.2, -8.70, -5.76, -5.76, -5.50};
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_NEAR(g.entries(i, i), expected[i], 0.05) << i;
        for (std::size_t j = 0; j < 9; ++j)
            if (i != j) EXPECT_NEAR(g.entries(i, j), 0.0, 1e-12);
    }
}

TEST(Assemble, FourThirdsOffDiagonals) {
    const auto g = wente::assemble_subset(four_thirds(), {1, 2, 3, 4, 5, 6, 7, 8, 9, 13});
    EXPECT_NEAR(g.entries(0, 8), -3.23, 0.05);
    EXPECT_NEAR(g.entries(3, 5), -2.29, 0.05);
    EXPECT_NEAR(g.entries(4, 6), -2.29, 0.05);
    EXPECT_NEAR(g.entries(7, 7), -0.25, 0.05);
}

TEST(Assemble, ZeroPotentialGivesLaplacianDiagonal) {
    const auto p = three_halves();
    const auto en = wente::enumerate_basis(wente::lattice(p), 41);
    const auto field = wente::sample_field(wente::wente_geometry(p), [](double, double) { return 0.0; }, 64, 64, {4, 4});
    const auto a = wente::assemble_from_field(en.functions, field, wente::Method::fourier);
    for (std::size_t i = 0; i < 41; ++i)
        for (std::size_t j = 0; j < 41; ++j) EXPECT_EQ(a(i, j), i == j ? en.functions[i].alpha : 0.0);
}

TEST(Assemble, BitExactSymmetryAndZeroRule) {
    const auto g = wente::assemble(four_thirds(), 81);
    EXPECT_EQ(g.entries, g.entries.transpose());
    for (std::size_t i = 0; i < 81; ++i)
        for (std::size_t j = 0; j < 81; ++j)
            if ((i + j) % 2 == 1) EXPECT_EQ(g.entries(i, j), 0.0);
}

TEST(Assemble, GridConvergenceRecorded) {
    const auto g = wente::assemble(three_halves(), 41);
    EXPECT_EQ(g.provenance.nx, 1024);
    EXPECT_LE(g.provenance.grid_change, 1e-8);
    EXPECT_FALSE(g.provenance.method_discrepancy.has_value());
}

TEST(Assemble, EscalatesWhenToleranceUnmet) {
    wente::AssemblyConfig cfg;
    cfg.nx = cfg.ny = 64;
    const auto g = wente::assemble(wente::build_surface(13, 7, 0.5, 24.0512), 25, cfg);
    EXPECT_GT(g.provenance.nx, 64);
    cfg.max_grid = 64;
    EXPECT_THROW(wente::assemble(wente::build_surface(13, 7, 0.5, 24.0512), 25, cfg), wente::NumericalError);
}

TEST(Assemble, BothMethodsAgree) {
    wente::AssemblyConfig cfg;
    cfg.method = wente::Method::both;
    cfg.nx = cfg.ny = 256;
    cfg.threads = 2;
    const auto g = wente::assemble(four_thirds(), 25, cfg);
    ASSERT_TRUE(g.provenance.method_discrepancy.has_value());
    EXPECT_LE(*g.provenance.method_discrepancy, 1e-9);
}

TEST(Assemble, ThreadCountDoesNotChangeBits) {
    wente::AssemblyConfig one, four;
    one.method = four.method = wente::Method::quadrature;
    one.nx = one.ny = four.nx = four.ny = 128;
    four.threads = 4;
    const auto p = three_halves();
    EXPECT_EQ(wente::assemble(p, 13, one).entries, wente::assemble(p, 13, four).entries);
}

TEST(Cache, RoundTripIsBitExact) {
    wente::FourierTable t;
    t.jmax = 2;
    t.kmax = 3;
    t.values = {0.1, -1e-300, 3.0 / 7.0, 123.456, 0.0, -0.0, 1e300, 5e-324, 2.5, -7.25, 1.0 / 3.0, 42.0};
    const wente::CacheKey key{3, 2, 0.5, 17.7324, 1024, 1024};
    std::stringstream s;
    wente::write_cache(s, key, t);
    const auto back = wente::read_cache(s, key);
    ASSERT_TRUE(back.has_value());
    ASSERT_EQ(back->values.size(), t.values.size());
    for (std::size_t i = 0; i < t.values.size(); ++i)
        EXPECT_EQ(std::bit_cast<std::uint64_t>(back->values[i]), std::bit_cast<std::uint64_t>(t.values[i]));
}

TEST(Cache, KeyMismatchIsMiss) {
    wente::FourierTable t{0, 0, {1.0}};
    const wente::CacheKey key{3, 2, 0.5, 17.7324, 1024, 1024};
    std::stringstream s;
    wente::write_cache(s, key, t);
    auto other = key;
    other.theta_deg = 17.7325;
    EXPECT_FALSE(wente::read_cache(s, other).has_value());
    std::stringstream junk("not a cache\n");
    EXPECT_FALSE(wente::read_cache(junk, key).has_value());
}

TEST(Cache, HitReproducesColdRun) {
    const auto dir = std::filesystem::temp_directory_path() / "wente_cache_test";
    std::filesystem::remove_all(dir);
    wente::AssemblyConfig cfg;
    cfg.nx = cfg.ny = 256;
    cfg.cache_dir = dir;
    const auto p = four_thirds();
    const auto cold = wente::assemble(p, 41, cfg);
    EXPECT_FALSE(cold.provenance.cache_hit);
    EXPECT_EQ(wente::list_cache(dir).size(), 2u);
    const auto warm = wente::assemble(p, 41, cfg);
    EXPECT_TRUE(warm.provenance.cache_hit);
    EXPECT_EQ(cold.entries, warm.entries);
    EXPECT_EQ(wente::clear_cache(dir), 2u);
    std::filesystem::remove_all(dir);
}
