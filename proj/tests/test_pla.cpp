#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fastsax/pla.hpp"
#include "oracle.hpp"
#include "testgen.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("per-frame least-squares fit") {
    SECTION("a straight line is recovered exactly") {
        const auto p = fastsax::fit_pla(std::vector<double>{0.0, 1.0, 2.0}, 1);
        REQUIRE_THAT(p.segments[0].slope, WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(p.segments[0].intercept, WithinAbs(0.0, 1e-12));
        REQUIRE(fastsax::residual(std::vector<double>{0.0, 1.0, 2.0}, p) <= 1e-12);
    }
    SECTION("the tent series gets the flat best line") {
        const std::vector<double> v{0.0, 1.0, 0.0};
        const auto p = fastsax::fit_pla(v, 1);
        REQUIRE_THAT(p.segments[0].slope, WithinAbs(0.0, 1e-15));
        REQUIRE_THAT(p.segments[0].intercept, WithinAbs(1.0 / 3.0, 1e-15));
        REQUIRE_THAT(fastsax::residual(v, p), WithinAbs(std::sqrt(2.0 / 3.0), 1e-12));
    }
    SECTION("constant frames get slope zero, intercept the constant") {
        const auto p = fastsax::fit_pla(std::vector<double>{0.7, 0.7, -1.2, -1.2}, 2);
        REQUIRE(p.segments[0].slope == 0.0);
        REQUIRE(p.segments[0].intercept == 0.7);
        REQUIRE(p.segments[1].slope == 0.0);
        REQUIRE(p.segments[1].intercept == -1.2);
    }
    SECTION("frames of one point are that point with no slope") {
        const std::vector<double> v{2.0, -3.0, 0.5};
        const auto p = fastsax::fit_pla(v, 3);
        for (std::size_t f = 0; f < 3; ++f) {
            REQUIRE(p.segments[f].slope == 0.0);
            REQUIRE(p.segments[f].intercept == v[f]);
        }
        REQUIRE(fastsax::residual(v, p) == 0.0);
    }
    SECTION("non-divisor frame counts are rejected") {
        REQUIRE_THROWS_AS(fastsax::fit_pla(std::vector<double>(10, 0.0), 3),
                          std::invalid_argument);
    }
    SECTION("matches a brute-force grid search") {
        // At the optimum no nearby line does better.
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 50; ++trial) {
            const auto v = testgen::noise(rng, 8);
            const auto p = fastsax::fit_pla(v, 1);
            const double best = fastsax::residual(v, p);
            for (double ds : {-0.05, 0.05}) {
                for (double di : {-0.05, 0.05}) {
                    fastsax::PlaApprox q = p;
                    q.segments[0].slope += ds;
                    q.segments[0].intercept += di;
                    REQUIRE(best <= fastsax::residual(v, q) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("evaluate expands the fit") {
    const auto p = fastsax::fit_pla(std::vector<double>{0.0, 2.0, 10.0, 10.0}, 2);
    const auto fitted = fastsax::evaluate(p);
    REQUIRE(fitted.size() == 4);
    REQUIRE_THAT(fitted[0], WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(fitted[1], WithinAbs(2.0, 1e-12));
    REQUIRE_THAT(fitted[2], WithinAbs(10.0, 1e-12));
    REQUIRE_THAT(fitted[3], WithinAbs(10.0, 1e-12));
}

TEST_CASE("residual is the distance to the fitted curve") {
    SECTION("shape mismatch is rejected") {
        const auto p = fastsax::fit_pla(std::vector<double>(8, 0.0), 2);
        REQUIRE_THROWS_AS(fastsax::residual(std::vector<double>(6, 0.0), p),
                          std::invalid_argument);
    }
    SECTION("piecewise linear series have zero residual at the matching level") {
        std::mt19937_64 rng(29);
        for (std::size_t frames : {4UL, 8UL}) {
            std::vector<double> v(32);
            const std::size_t m = v.size() / frames;
            for (std::size_t f = 0; f < frames; ++f) {
                const double slope = 4.0 * testgen::u01(rng) - 2.0;
                const double intercept = 4.0 * testgen::u01(rng) - 2.0;
                for (std::size_t j = 0; j < m; ++j) {
                    v[f * m + j] = slope * static_cast<double>(j) + intercept;
                }
            }
            REQUIRE(fastsax::residual(v, fastsax::fit_pla(v, frames)) <= 1e-12);
        }
    }
    SECTION("agrees with a direct computation") {
        std::mt19937_64 rng(31);
        const auto v = testgen::walk(rng, 24);
        const auto p = fastsax::fit_pla(v, 4);
        REQUIRE_THAT(fastsax::residual(v, p),
                     WithinAbs(oracle::euclid(v, fastsax::evaluate(p)), 1e-12));
    }
}

TEST_CASE("the fit is the nearest piecewise linear curve") {
    // Distance from a series to its own fit never exceeds its distance to
    // any other series' fit on the same frame grid.
    std::mt19937_64 rng(37);
    for (std::size_t frames : {4UL, 8UL, 16UL}) {
        for (int trial = 0; trial < 400; ++trial) {
            const auto u = fastsax::znormalize(
                trial % 2 ? testgen::walk(rng, 64) : testgen::noise(rng, 64));
            const auto q = fastsax::znormalize(
                trial % 3 ? testgen::noise(rng, 64) : testgen::walk(rng, 64));
            const double own = fastsax::residual(u, fastsax::fit_pla(u, frames));
            const double other =
                fastsax::euclidean(u, fastsax::evaluate(fastsax::fit_pla(q, frames)));
            REQUIRE(own <= other + 1e-9);
        }
    }
}

TEST_CASE("residuals shrink as frames multiply on nested grids") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const auto v = fastsax::znormalize(testgen::walk(rng, 64));
        const double fine = fastsax::residual(v, fastsax::fit_pla(v, 16));
        const double mid = fastsax::residual(v, fastsax::fit_pla(v, 8));
        const double coarse = fastsax::residual(v, fastsax::fit_pla(v, 4));
        REQUIRE(fine <= mid + 1e-9);
        REQUIRE(mid <= coarse + 1e-9);
    }
}

TEST_CASE("frame-aligned block shuffles keep the residual") {
    std::mt19937_64 rng(43);
    const auto v = testgen::walk(rng, 32);
    const std::size_t frames = 8, m = 4;
    const double before = fastsax::residual(v, fastsax::fit_pla(v, frames));
    std::vector<double> shuffled(v.size());
    // Rotate whole frames by one position.
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t j = 0; j < m; ++j) {
            shuffled[((f + 1) % frames) * m + j] = v[f * m + j];
        }
    }
    REQUIRE_THAT(fastsax::residual(shuffled, fastsax::fit_pla(shuffled, frames)),
                 WithinAbs(before, 1e-9));
}
