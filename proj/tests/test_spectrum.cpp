#include <catch2/catch.hpp>

#include "quaqua/spectrum.hpp"

using namespace quaqua;

TEST_CASE("eigenvalue clustering") {
    SECTION("well separated values stay separate") {
        const auto clusters = cluster_eigenvalues({{0.5, 0}, {0.125, 0}, {0.25, 0}});
        REQUIRE(clusters.size() == 3);
        REQUIRE(clusters[0].value.real() == Approx(0.125));
        REQUIRE(clusters[1].value.real() == Approx(0.25));
        REQUIRE(clusters[2].value.real() == Approx(0.5));
        for (const auto& c : clusters) REQUIRE(c.multiplicity == 1);
    }
    SECTION("values within tolerance merge with the right spread") {
        const auto clusters =
            cluster_eigenvalues({{0.25 - 4e-8, 0}, {0.25 + 4e-8, 0}, {0.5, 0}});
        REQUIRE(clusters.size() == 2);
        REQUIRE(clusters[0].multiplicity == 2);
        REQUIRE(clusters[0].spread == Approx(4e-8).epsilon(1e-3));
    }
    SECTION("chains merge by single linkage") {
        // 0, 0.6 tol, 1.2 tol: pairwise gaps are each below tolerance.
        const double t = kClusterTol;
        const auto clusters = cluster_eigenvalues({{0, 0}, {0.6 * t, 0}, {1.2 * t, 0}});
        REQUIRE(clusters.size() == 1);
        REQUIRE(clusters[0].multiplicity == 3);
    }
    SECTION("tiny imaginary parts are dropped from the centroid") {
        const auto clusters = cluster_eigenvalues({{0.5, 1e-12}});
        REQUIRE(clusters[0].value.imag() == 0.0);
    }
}

TEST_CASE("block spectrum at tiny k") {
    SECTION("trivial representation") {
        const SpectrumReport r = block_spectrum(Irrep(0));
        REQUIRE(r.clusters.size() == 1);
        REQUIRE(r.clusters[0].value.real() == Approx(1.0).margin(1e-12));
        REQUIRE(r.clusters[0].multiplicity == 1);
    }
    SECTION("k=1 golden spectrum") {
        const SpectrumReport r = block_spectrum(Irrep(1));
        REQUIRE(r.clusters.size() == 3);
        REQUIRE(r.clusters[0].value.real() == Approx(0.125).margin(1e-10));
        REQUIRE(r.clusters[1].value.real() == Approx(0.25).margin(1e-10));
        REQUIRE(r.clusters[2].value.real() == Approx(0.5).margin(1e-10));
        REQUIRE(r.realness_residual == 0.0);
        REQUIRE(r.spectral_radius == Approx(0.5).margin(1e-10));

        Complex sum(0, 0);
        for (const auto& c : r.clusters) sum += c.value * double(c.multiplicity);
        REQUIRE(std::abs(sum - Complex(7.0 / 8.0, 0)) < 1e-12);
    }
}

TEST_CASE("dense spectrum agrees with the block path") {
    SECTION("k=1") {
        const SpectrumReport r = dense_spectrum(Irrep(1));
        REQUIRE(r.realness_residual < 1e-10);
        REQUIRE(r.clusters.size() == 3);
        REQUIRE(r.clusters[0].value.real() == Approx(0.125).margin(1e-10));
    }
    SECTION("multiset distance across k") {
        for (int k : {2, 7, 16, 40}) {
            const auto dense = cluster_values_expanded(dense_spectrum(Irrep(k)));
            const auto block = cluster_values_expanded(block_spectrum(Irrep(k)));
            REQUIRE(dense.size() == block.size());
            REQUIRE(spectrum_distance(dense, block) < 1e-8);
        }
    }
}

TEST_CASE("spectrum reports validate against trace moments on both paths") {
    for (int k : {1, 3, 12, 31, 60}) {
        const Irrep rep(k);
        for (const SpectrumReport& r : {block_spectrum(rep), dense_spectrum(rep)}) {
            REQUIRE(r.total_multiplicity() == rep.dim());
            REQUIRE(r.trace_moment_residuals.size() == 6);
            for (double res : r.trace_moment_residuals) REQUIRE(res < 1e-8 * rep.dim());
        }
    }
}

TEST_CASE("the dense spectrum is real and moment-consistent across the sweep range") {
    for (int k = 1; k <= 60; ++k) {
        const SpectrumReport r = dense_spectrum(Irrep(k));
        INFO("k = " << k);
        REQUIRE(r.realness_residual < 1e-8);
        for (double res : r.trace_moment_residuals) REQUIRE(res < 1e-8 * (2 * k + 1));
    }
}

TEST_CASE("multiplicity predictions") {
    SECTION("k=1") {
        const auto p = predicted_multiplicities(Irrep(1));
        REQUIRE(p.d == 1);
        REQUIRE(p.q == 1);
        REQUIRE(p.floor_quarter == 1);
        REQUIRE(p.floor_half == 1);
        REQUIRE(p.floor_eighth == 1);
        REQUIRE(p.div5_formula == 1);
        REQUIRE(p.mod6_count == 1);
        REQUIRE(p.q_matches_div5_formula);
        REQUIRE(p.q_matches_mod6_count);
    }
    SECTION("k=2") {
        const auto p = predicted_multiplicities(Irrep(2));
        REQUIRE(p.d == 1);
        REQUIRE(p.div5_formula == 1);
        REQUIRE(p.q == 1);
    }
    SECTION("k=5 separates the two closed-form candidates") {
        // floor((5+4)/5) = 1 but the weight count in the residue class is 2;
        // the numeric q sides with the weight count.
        const auto p = predicted_multiplicities(Irrep(5));
        REQUIRE(p.div5_formula == 1);
        REQUIRE(p.mod6_count == 2);
        REQUIRE(p.q == 2);
        REQUIRE_FALSE(p.q_matches_div5_formula);
        REQUIRE(p.q_matches_mod6_count);
    }
    SECTION("the numeric count always equals the weight count") {
        for (int k = 1; k <= 40; ++k) {
            const auto p = predicted_multiplicities(Irrep(k));
            REQUIRE(p.q == p.mod6_count);
        }
    }
    REQUIRE_THROWS_AS(predicted_multiplicities(Irrep(0)), std::invalid_argument);
}

TEST_CASE("multiplicity floors hold") {
    SECTION("k=1 exactly") {
        const auto c = check_multiplicities(Irrep(1));
        REQUIRE(c.pass);
        REQUIRE(c.observed_quarter == 1);
        REQUIRE(c.observed_half == 1);
        REQUIRE(c.observed_eighth == 1);
    }
    SECTION("k=2") {
        const auto c = check_multiplicities(Irrep(2));
        REQUIRE(c.pass);
        REQUIRE(c.observed_quarter >= 1);
        REQUIRE(c.observed_half >= 1);
    }
    SECTION("sweep") {
        for (int k = 1; k <= 40; ++k) {
            const auto c = check_multiplicities(Irrep(k));
            INFO("k = " << k);
            REQUIRE(c.error.empty());
            REQUIRE(c.pass);
        }
    }
    SECTION("the half eigenvalue actually reaches the stronger floor 2d - q") {
        for (int k : {5, 9, 20}) {
            const auto p = predicted_multiplicities(Irrep(k));
            const auto r = block_spectrum(Irrep(k));
            REQUIRE(r.multiplicity_near(0.5) >= p.floor_half);
        }
    }
}

TEST_CASE("range of the unanalyzed block") {
    SECTION("empty at k=1") { REQUIRE_FALSE(first_block_range(Irrep(1)).has_value()); }
    SECTION("exactly one at k=0") {
        const auto range = first_block_range(Irrep(0));
        REQUIRE(range.has_value());
        REQUIRE(range->first == Approx(1.0).margin(1e-12));
        REQUIRE(range->second == Approx(1.0).margin(1e-12));
    }
    SECTION("always inside the unit interval") {
        for (int k : {2, 5, 11, 30, 60}) {
            const auto range = first_block_range(Irrep(k));
            REQUIRE(range.has_value());
            REQUIRE(range->first >= -1e-9);
            REQUIRE(range->second <= 1.0 + 1e-9);
            REQUIRE(range->first <= range->second);
        }
    }
}

TEST_CASE("gap scan") {
    SECTION("single row at k=1") {
        const auto rows = gap_scan(1);
        REQUIRE(rows.size() == 1);
        REQUIRE(rows[0].spectral_radius == Approx(0.5).margin(1e-10));
        REQUIRE(rows[0].gap == Approx(0.5).margin(1e-10));
    }
    SECTION("rows stay strictly below one and the running max is monotone") {
        const auto rows = gap_scan(25);
        REQUIRE(rows.size() == 25);
        double prev = 0.0;
        for (const auto& row : rows) {
            REQUIRE(row.spectral_radius < 1.0);
            REQUIRE(row.running_max_radius >= prev);
            REQUIRE(row.running_max_radius >= row.spectral_radius);
            REQUIRE(row.gap == Approx(1.0 - row.spectral_radius).margin(1e-14));
            prev = row.running_max_radius;
        }
    }
    REQUIRE_THROWS_AS(gap_scan(0), std::invalid_argument);
}
