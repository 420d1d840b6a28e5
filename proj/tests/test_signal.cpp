#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <dps/signal.hpp>

TEST_CASE("gen_sine produces offset + half-amplitude sine at fs", "[signal]") {
    const auto sig = dps::gen_sine(10.0, 0.3, 0.9, 1000.0, 1.0);
    REQUIRE(sig.samples.size() == 1000u);
    CHECK(sig.fs_hz == 1000.0);
    CHECK(sig.duration_s() == 1.0);
    for (std::size_t i : {0u, 1u, 25u, 137u, 999u}) {
        const double expect =
            0.9 + 0.15 * std::sin(2.0 * std::numbers::pi * 10.0 * static_cast<double>(i) / 1000.0);
        CHECK(sig.samples[i] == Catch::Approx(expect).margin(1e-15));
    }
}

TEST_CASE("gen_sine with zero amplitude is DC at the offset", "[signal]") {
    const auto sig = dps::gen_sine(1.0, 0.0, 0.9, 1000.0, 1.0);
    for (const double v : sig.samples)
        CHECK(v == 0.9);
}

TEST_CASE("generator argument validation", "[signal]") {
    CHECK_THROWS_AS(dps::gen_sine(1.0, 0.3, 0.9, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(dps::gen_sine(1.0, 0.3, 0.9, 1000.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(dps::gen_sine(1.0, 0.3, 0.9, 1000.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(dps::gen_lpf_square(5.0, 0.8, 0.9, 0.0, 1000.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(dps::gen_lpf_square(5.0, 0.8, 0.9, -50.0, 1000.0, 1.0), std::invalid_argument);
}

TEST_CASE("gen_lpf_square starts settled high and tracks the plateaus", "[signal]") {
    // 5 Hz square at fs 1000: plateaus flip every 100 samples. fc 50 Hz
    // gives a time constant of ~3.2 samples, so mid-plateau samples sit
    // on the rail.
    const auto sig = dps::gen_lpf_square(5.0, 0.8, 0.9, 50.0, 1000.0, 1.0);
    REQUIRE(sig.samples.size() == 1000u);
    CHECK(sig.samples[0] == Catch::Approx(1.3).margin(1e-12));
    CHECK(sig.samples[99] == Catch::Approx(1.3).margin(1e-9));
    CHECK(sig.samples[199] == Catch::Approx(0.5).margin(1e-9));
    CHECK(sig.samples[299] == Catch::Approx(1.3).margin(1e-9));

    // First-order step response right after the 100-sample edge.
    const double alpha = 1.0 - std::exp(-2.0 * std::numbers::pi * 50.0 / 1000.0);
    const double expect_101 = 1.3 + (0.5 - 1.3) * (1.0 - std::pow(1.0 - alpha, 2.0));
    CHECK(sig.samples[101] == Catch::Approx(expect_101).margin(1e-9));

    const auto [lo, hi] = std::minmax_element(sig.samples.begin(), sig.samples.end());
    CHECK(*lo >= 0.5 - 1e-9);
    CHECK(*hi <= 1.3 + 1e-9);
}

TEST_CASE("sample count rounds to the nearest integer", "[signal]") {
    CHECK(dps::gen_sine(1.0, 0.0, 0.0, 1000.0, 0.0015).samples.size() == 2u);
    CHECK(dps::gen_sine(1.0, 0.0, 0.0, 3.0, 1.0).samples.size() == 3u);
}
