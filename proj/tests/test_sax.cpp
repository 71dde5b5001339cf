#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <thread>

#include "fastsax/sax.hpp"
#include "oracle.hpp"
#include "testgen.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("breakpoints split the normal into equiprobable intervals") {
    SECTION("every supported alphabet against the bisection reference") {
        for (int a = fastsax::kMinAlphabet; a <= fastsax::kMaxAlphabet; ++a) {
            const fastsax::BreakpointTable t(a);
            const auto& b = t.betas();
            REQUIRE(b.size() == static_cast<std::size_t>(a - 1));
            for (int i = 1; i < a; ++i) {
                const double expected = oracle::norm_quantile(static_cast<double>(i) / a);
                REQUIRE_THAT(b[i - 1], WithinAbs(expected, 1e-9));
                REQUIRE_THAT(oracle::norm_cdf(b[i - 1]),
                             WithinAbs(static_cast<double>(i) / a, 1e-6));
            }
            for (int i = 1; i + 1 < a; ++i) REQUIRE(b[i - 1] < b[i]);
            for (int i = 1; i < a; ++i) {
                REQUIRE_THAT(b[i - 1] + b[a - 1 - i], WithinAbs(0.0, 1e-9));
            }
            if (a % 2 == 0) REQUIRE(b[a / 2 - 1] == 0.0);
        }
    }
    SECTION("known values") {
        const fastsax::BreakpointTable t3(3);
        REQUIRE_THAT(t3.betas()[0], WithinAbs(-0.4307, 1e-4));
        REQUIRE_THAT(t3.betas()[1], WithinAbs(0.4307, 1e-4));
        const fastsax::BreakpointTable t4(4);
        REQUIRE_THAT(t4.betas()[0], WithinAbs(-0.6745, 1e-4));
        REQUIRE(t4.betas()[1] == 0.0);
        REQUIRE_THAT(t4.betas()[2], WithinAbs(0.6745, 1e-4));
    }
    SECTION("alphabet bounds are enforced") {
        REQUIRE_THROWS_AS(fastsax::BreakpointTable(2), std::invalid_argument);
        REQUIRE_THROWS_AS(fastsax::BreakpointTable(21), std::invalid_argument);
    }
    SECTION("cache hands out one stable table per alphabet") {
        const auto* p1 = &fastsax::breakpoint_table(7);
        const auto* p2 = &fastsax::breakpoint_table(7);
        REQUIRE(p1 == p2);
        std::vector<std::thread> threads;
        std::vector<const fastsax::BreakpointTable*> seen(8, nullptr);
        for (int i = 0; i < 8; ++i) {
            threads.emplace_back(
                [&seen, i] { seen[i] = &fastsax::breakpoint_table(13); });
        }
        for (auto& th : threads) th.join();
        for (const auto* p : seen) REQUIRE(p == seen[0]);
    }
}

TEST_CASE("paa averages equal frames") {
    SECTION("six points into three frames") {
        const auto p = fastsax::paa(std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, 3);
        REQUIRE(p.means == std::vector<double>{1.5, 3.5, 5.5});
        REQUIRE(p.length == 6);
    }
    SECTION("one frame per point reproduces the series") {
        const std::vector<double> v{0.5, -1.0, 2.0, 0.0};
        REQUIRE(fastsax::paa(v, 4).means == v);
    }
    SECTION("non-divisor frame counts name both numbers") {
        REQUIRE_THROWS_WITH(fastsax::paa(std::vector<double>(6, 0.0), 4),
                            Catch::Matchers::ContainsSubstring("N=4") &&
                                Catch::Matchers::ContainsSubstring("n=6"));
        REQUIRE_THROWS_AS(fastsax::paa(std::vector<double>(6, 0.0), 0),
                          std::invalid_argument);
    }
    SECTION("op tally") {
        fastsax::OpCounts ops;
        fastsax::paa(std::vector<double>(12, 1.0), 3, &ops);
        REQUIRE(ops.adds == 9);
        REQUIRE(ops.mults == 3);
    }
}

TEST_CASE("symbolize maps means through the breakpoints") {
    const auto& t3 = fastsax::breakpoint_table(3);
    const auto& t4 = fastsax::breakpoint_table(4);
    SECTION("one mean per interval") {
        const fastsax::PaaVector p{{-1.0, 0.0, 1.0}, 3};
        const auto w = fastsax::symbolize(p, t3);
        REQUIRE(w.symbols == std::vector<std::uint8_t>{0, 1, 2});
        REQUIRE(w.alphabet_size == 3);
        REQUIRE(w.length == 3);
    }
    SECTION("zero lands in the upper middle interval for even alphabets") {
        const fastsax::PaaVector p{{0.0}, 1};
        REQUIRE(fastsax::symbolize(p, t4).symbols[0] == 2);
    }
    SECTION("a mean exactly on a breakpoint takes the interval above it") {
        const fastsax::PaaVector p{{t4.betas()[2]}, 1};
        REQUIRE(fastsax::symbolize(p, t4).symbols[0] == 3);
    }
    SECTION("extremes hit the outer symbols") {
        const fastsax::PaaVector p{{-100.0, 100.0}, 2};
        const auto w = fastsax::symbolize(p, t4);
        REQUIRE(w.symbols[0] == 0);
        REQUIRE(w.symbols[1] == 3);
    }
    SECTION("count of breakpoints at or below the mean, all alphabets") {
        std::mt19937_64 rng(4);
        for (int a : {3, 5, 10, 20}) {
            const auto& t = fastsax::breakpoint_table(a);
            for (int trial = 0; trial < 200; ++trial) {
                const double v = 6.0 * testgen::u01(rng) - 3.0;
                const auto w = fastsax::symbolize(fastsax::PaaVector{{v}, 1}, t);
                int expected = 0;
                for (double b : t.betas()) {
                    if (b <= v) ++expected;
                }
                REQUIRE(w.symbols[0] == expected);
            }
        }
    }
}

TEST_CASE("cell distance between symbols") {
    const auto& t4 = fastsax::breakpoint_table(4);
    SECTION("identical and adjacent symbols cost nothing") {
        for (int i = 0; i < 4; ++i) {
            REQUIRE(fastsax::cell_dist(i, i, t4) == 0.0);
            if (i + 1 < 4) REQUIRE(fastsax::cell_dist(i, i + 1, t4) == 0.0);
        }
    }
    SECTION("two intervals apart equals the gap between their edges") {
        REQUIRE_THAT(fastsax::cell_dist(0, 2, t4), WithinAbs(0.6745, 1e-4));
        REQUIRE(fastsax::cell_dist(0, 2, t4) == t4.betas()[1] - t4.betas()[0]);
        REQUIRE(fastsax::cell_dist(0, 3, t4) == t4.betas()[2] - t4.betas()[0]);
    }
    SECTION("symmetry and growth with separation") {
        for (int a : {3, 10, 20}) {
            const auto& t = fastsax::breakpoint_table(a);
            for (int i = 0; i < a; ++i) {
                for (int j = 0; j < a; ++j) {
                    REQUIRE(fastsax::cell_dist(i, j, t) == fastsax::cell_dist(j, i, t));
                }
                for (int j = i + 1; j + 1 < a; ++j) {
                    REQUIRE(fastsax::cell_dist(i, j, t) <=
                            fastsax::cell_dist(i, j + 1, t));
                }
            }
        }
    }
    SECTION("symbols outside the alphabet are rejected") {
        REQUIRE_THROWS_AS(fastsax::cell_dist(0, 4, t4), std::invalid_argument);
        REQUIRE_THROWS_AS(fastsax::cell_dist(-1, 0, t4), std::invalid_argument);
    }
}

namespace {

fastsax::SaxWord word_of(std::vector<std::uint8_t> symbols, int a, std::size_t n) {
    return fastsax::SaxWord{std::move(symbols), a, n};
}

}  // namespace

TEST_CASE("mindist lower-bounds the true distance") {
    const auto& t4 = fastsax::breakpoint_table(4);
    SECTION("identical words") {
        const auto w = word_of({0, 1, 2, 3}, 4, 16);
        REQUIRE(fastsax::mindist(w, w, t4) == 0.0);
    }
    SECTION("worked example: two cells two intervals apart, frames of four") {
        const auto x = word_of({0, 0, 2, 2}, 4, 16);
        const auto y = word_of({2, 2, 0, 0}, 4, 16);
        const double gap = t4.betas()[1] - t4.betas()[0];
        const double expected = 2.0 * std::sqrt(4.0 * gap * gap);
        REQUIRE_THAT(fastsax::mindist(x, y, t4), WithinAbs(expected, 1e-12));
        REQUIRE_THAT(fastsax::mindist(x, y, t4), WithinAbs(2.698, 1e-3));
    }
    SECTION("adjacent-only differences vanish") {
        const auto x = word_of({0, 1, 2, 3}, 4, 8);
        const auto y = word_of({1, 2, 3, 2}, 4, 8);
        REQUIRE(fastsax::mindist(x, y, t4) == 0.0);
    }
    SECTION("shape and alphabet mismatches are rejected") {
        const auto x = word_of({0, 1}, 4, 8);
        REQUIRE_THROWS_AS(fastsax::mindist(x, word_of({0, 1, 2}, 4, 12), t4),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(fastsax::mindist(x, word_of({0, 1}, 3, 8), t4),
                          std::invalid_argument);
    }
    SECTION("symmetric and triangle-like on random words") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<std::uint8_t> s1(8), s2(8);
            for (int f = 0; f < 8; ++f) {
                s1[f] = static_cast<std::uint8_t>(rng() % 4);
                s2[f] = static_cast<std::uint8_t>(rng() % 4);
            }
            const auto x = word_of(s1, 4, 32);
            const auto y = word_of(s2, 4, 32);
            REQUIRE(fastsax::mindist(x, y, t4) == fastsax::mindist(y, x, t4));
        }
    }
}

TEST_CASE("paa distance") {
    SECTION("worked example: frames of four, unit gap per frame") {
        const fastsax::PaaVector x{{0.0, 0.0}, 8};
        const fastsax::PaaVector y{{3.0, 4.0}, 8};
        REQUIRE_THAT(fastsax::paa_dist(x, y), WithinAbs(10.0, 1e-12));
    }
    SECTION("with one frame per point it is the euclidean distance") {
        std::mt19937_64 rng(6);
        const auto a = testgen::noise(rng, 16);
        const auto b = testgen::noise(rng, 16);
        REQUIRE_THAT(fastsax::paa_dist(fastsax::paa(a, 16), fastsax::paa(b, 16)),
                     WithinAbs(fastsax::euclidean(a, b), 1e-12));
    }
    SECTION("shape mismatch is rejected") {
        REQUIRE_THROWS_AS(fastsax::paa_dist(fastsax::PaaVector{{0.0}, 4},
                                            fastsax::PaaVector{{0.0, 1.0}, 4}),
                          std::invalid_argument);
    }
}

TEST_CASE("lower-bounding chain holds on random data") {
    std::mt19937_64 rng(17);
    for (std::size_t frames : {4UL, 8UL, 16UL}) {
        for (int a : {3, 10, 20}) {
            const auto& t = fastsax::breakpoint_table(a);
            for (int trial = 0; trial < 300; ++trial) {
                const auto u = fastsax::znormalize(
                    trial % 2 ? testgen::walk(rng, 64) : testgen::noise(rng, 64));
                const auto v = fastsax::znormalize(
                    trial % 3 ? testgen::walk(rng, 64) : testgen::noise(rng, 64));
                const auto pu = fastsax::paa(u, frames);
                const auto pv = fastsax::paa(v, frames);
                const double md =
                    fastsax::mindist(fastsax::symbolize(pu, t), fastsax::symbolize(pv, t), t);
                const double pd = fastsax::paa_dist(pu, pv);
                const double e = fastsax::euclidean(u, v);
                REQUIRE(md <= pd + 1e-9);
                REQUIRE(pd <= e + 1e-9);
                if (e > 0.0) {
                    const double ratio = md / e;
                    REQUIRE(ratio >= 0.0);
                    REQUIRE(ratio <= 1.0 + 1e-12);
                }
            }
        }
    }
}
