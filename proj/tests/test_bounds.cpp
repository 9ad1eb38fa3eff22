#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wente/bounds.hpp"
#include "wente/catalog.hpp"

TEST(CourantBound, ByParity) {
    EXPECT_EQ(wente::courant_bound(3, 2), 2);
    EXPECT_EQ(wente::courant_bound(4, 3), 1);
    EXPECT_EQ(wente::courant_bound(21, 20), 38);
    EXPECT_EQ(wente::courant_bound(73, 72), 142);
    EXPECT_THROW(wente::courant_bound(9, 9), wente::ParameterError);
}

TEST(PotentialSandwich, KnownSurfaces) {
    const auto a = wente::potential_sandwich(wente::build_surface(3, 2, 0.5, 17.7324));
    EXPECT_EQ(a.lower, 2);
    EXPECT_EQ(a.upper, 213);
    const auto b = wente::potential_sandwich(wente::build_surface(73, 72, 0.5, 0.6005));
    EXPECT_EQ(b.lower, 1962);
    EXPECT_EQ(b.upper, 2353);
    EXPECT_FALSE(b.min_boundary);
}

TEST(PotentialSandwich, EqualThresholdsCollapse) {
    const auto lat = wente::lattice(wente::build_surface(3, 2, 0.5, 17.7324));
    const auto s = wente::eigenvalue_sandwich(lat, 5.0, 5.0);
    EXPECT_EQ(s.mu, s.nu);
    EXPECT_EQ(s.lower, s.upper - 1);
}

TEST(SubspaceBound, ThreeHalves) {
    const auto r = wente::subspace_bound(wente::build_surface(3, 2, 0.5, 17.7324), {1, 2, 3, 4, 5, 7, 8, 9, 17});
    EXPECT_TRUE(r.negative_definite);
    EXPECT_EQ(r.implied_lower, 8);
}

TEST(SubspaceBound, FourThirds) {
    const auto r = wente::subspace_bound(wente::build_surface(4, 3, 0.5, 12.7898), {1, 2, 3, 4, 5, 6, 7, 8, 9, 13});
    EXPECT_TRUE(r.negative_definite);
    EXPECT_EQ(r.implied_lower, 9);
}

TEST(SubspaceBound, ThreeHalvesFirstTenIsNotDefinite) {
    const auto r = wente::subspace_bound(wente::build_surface(3, 2, 0.5, 17.7324), {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    EXPECT_FALSE(r.negative_definite);
    EXPECT_EQ(r.implied_lower, 0);
    EXPECT_GE(r.max_eigenvalue, 0.0);
}

TEST(SubspaceBound, VerdictAgreesWithSpectrum) {
    const auto r = wente::subspace_bound(wente::build_surface(6, 5, 0.5, 8.0983), wente::builtin_catalog()[5].subspace_indices);
    const auto ref = oracle::jacobi_eigenvalues(r.matrix);
    EXPECT_NEAR(r.max_eigenvalue, ref.back(), 1e-10);
    EXPECT_EQ(r.negative_definite, ref.back() < 0.0);
}

TEST(SubspaceBound, RejectsBadIndexLists) {
    const auto p = wente::build_surface(3, 2, 0.5, 17.7324);
    EXPECT_THROW(wente::subspace_bound(p, {}), wente::ParameterError);
    EXPECT_THROW(wente::subspace_bound(p, {1, 1}), wente::ParameterError);
    EXPECT_THROW(wente::subspace_bound(p, {0}), wente::ParameterError);
}

TEST(GreedySearch, PoolOfOne) {
    for (const auto& e : wente::builtin_catalog()) {
        const auto g = wente::greedy_subspace_search(wente::build_surface(e), 1);
        ASSERT_EQ(g.indices.size(), 1u) << e.label();
        EXPECT_EQ(g.indices[0], 1);
        EXPECT_EQ(g.implied_lower, 0);
    }
}

TEST(GreedySearch, ReachesHandPickedFloors) {
    EXPECT_GE(wente::greedy_subspace_search(wente::build_surface(3, 2, 0.5, 17.7324), 30).implied_lower, 8);
    EXPECT_GE(wente::greedy_subspace_search(wente::build_surface(8, 7, 0.5, 5.9081), 30).implied_lower, 8);
}

TEST(GreedySearch, Deterministic) {
    const auto p = wente::build_surface(4, 3, 0.5, 12.7898);
    EXPECT_EQ(wente::greedy_subspace_search(p, 20).indices, wente::greedy_subspace_search(p, 20).indices);
}

TEST(FullReport, ThreeHalves) {
    wente::ReportOptions o;
    o.m = 181;
    o.subspace_indices = {1, 2, 3, 4, 5, 7, 8, 9, 17};
    const auto r = wente::full_report(wente::build_surface(3, 2, 0.5, 17.7324), o);
    EXPECT_EQ(r.index_estimate, (std::pair{10, 11}));
    ASSERT_TRUE(r.negative_range.has_value());
    EXPECT_NEAR(r.negative_range->first, -35.4, 0.1);
    EXPECT_NEAR(r.negative_range->second, -1.47, 0.01);
    EXPECT_EQ(r.courant_lower, 2);
    EXPECT_GE(*r.subspace_lower, 8);
    EXPECT_TRUE(r.shell_complete);
}

TEST(FullReport, SevenSixthsAndThirteenSevenths) {
    wente::ReportOptions o;
    o.greedy_pool = 0;
    o.m = 145;
    EXPECT_EQ(wente::full_report(wente::build_surface(7, 6, 0.5, 6.8332), o).index_estimate, (std::pair{53, 54}));
    o.m = 181;
    const auto r = wente::full_report(wente::build_surface(13, 7, 0.5, 24.0512), o);
    EXPECT_EQ(r.index_estimate, (std::pair{27, 28}));
}

TEST(FullReport, NotesSmallTruncation) {
    wente::ReportOptions o;
    o.m = 13;
    o.greedy_pool = 0;
    const auto r = wente::full_report(wente::build_surface(21, 20, 0.5, 2.1359), o);
    EXPECT_LT(r.galerkin_k, r.max_lower());
    EXPECT_FALSE(r.notes.empty());
}

TEST(FullReport, WindowBasisOnWideTorus) {
    wente::ReportOptions o;
    o.greedy_pool = 0;
    const auto r = wente::full_report(wente::build_surface(21, 20, 0.5, 2.1359), o);
    EXPECT_EQ(r.basis_kind, "window");
    EXPECT_EQ(r.m_used, 491);
    EXPECT_GE(r.galerkin_k, r.sandwich.lower);
    EXPECT_LE(r.galerkin_k, r.sandwich.upper);
}

TEST(FullReport, ThetaSensitivity) {
    wente::ReportOptions o;
    o.m = 81;
    o.greedy_pool = 0;
    o.theta_delta = 5e-5;
    const auto r = wente::full_report(wente::build_surface(4, 3, 0.5, 12.7898), o);
    ASSERT_TRUE(r.theta_sensitivity.has_value());
    EXPECT_EQ(r.theta_sensitivity->count_minus, 10);
    EXPECT_EQ(r.theta_sensitivity->count_plus, 10);
}

TEST(FullReport, PropertyConsistencyOnCatalog) {
    for (const auto& e : wente::builtin_catalog()) {
        wente::ReportOptions o;
        o.m = e.default_m;
        o.subspace_indices = e.subspace_indices;
        o.greedy_pool = 0;
        const auto r = wente::full_report(wente::build_surface(e), o);
        EXPECT_LE(r.courant_lower, r.galerkin_k) << e.label();
        EXPECT_LE(r.max_lower(), r.galerkin_k) << e.label();
        EXPECT_LE(r.galerkin_k, r.sandwich.upper) << e.label();
    }
}
