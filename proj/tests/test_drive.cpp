#include <doctest.h>

#include "ionx/drive.hpp"

using namespace ionx;

TEST_CASE("step drive follows the 0 / V_sig case split") {
    const DriveSignal sig = DriveSignal::step(5.0);
    CHECK(sig.eval(0.0) == 0.0);
    CHECK(sig.eval(0.01) == 5.0);
    CHECK(sig.eval(100.0) == 5.0);
    CHECK_THROWS_AS(sig.eval(-0.1), std::out_of_range);
}

TEST_CASE("square drive duty cycle") {
    const double period = 40.0;
    const DriveSignal sig = DriveSignal::square(5.0, period, 0.5);
    CHECK(sig.eval(0.75 * period) == 0.0);   // second half-period off
    CHECK(sig.eval(0.25 * period) == 5.0);
    CHECK(sig.eval(1.25 * period) == 5.0);
    // Right continuity at the off edge and the period boundary.
    CHECK(sig.eval(0.5 * period) == 0.0);
    CHECK(sig.eval(period) == 5.0);
}

TEST_CASE("piecewise drive holds the last breakpoint value") {
    const DriveSignal sig =
        DriveSignal::piecewise({{0.0, 0.0}, {10.0, 5.0}, {50.0, 0.0}});
    CHECK(sig.eval(0.0) == 0.0);
    CHECK(sig.eval(9.999) == 0.0);
    CHECK(sig.eval(10.0) == 5.0);  // right-continuous
    CHECK(sig.eval(30.0) == 5.0);
    CHECK(sig.eval(50.0) == 0.0);
    CHECK(sig.eval(1000.0) == 0.0);
    CHECK_THROWS_AS(DriveSignal::piecewise({{1.0, 0.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("right continuity at sampled discontinuities") {
    const DriveSignal signals[] = {
        DriveSignal::step(3.0),
        DriveSignal::square(2.0, 10.0, 0.3),
        DriveSignal::piecewise({{0.0, 1.0}, {4.0, -2.0}, {8.0, 0.5}}),
    };
    for (const auto& sig : signals) {
        for (double t : sig.breakpoints_between(0.0, 30.0)) {
            CHECK(sig.eval(t) == doctest::Approx(sig.eval(t + 1e-12)));
        }
    }
}

TEST_CASE("square with duty near 1 approaches the step for tau > 0") {
    const DriveSignal step = DriveSignal::step(5.0);
    const DriveSignal square = DriveSignal::square(5.0, 40.0, 1.0 - 1e-12);
    for (double t : {0.01, 5.0, 15.0, 39.0, 41.0, 75.0}) {
        CHECK(square.eval(t) == step.eval(t));
    }
}

TEST_CASE("breakpoints are enumerated in order") {
    const DriveSignal sig = DriveSignal::square(5.0, 40.0, 0.5);
    const auto bps = sig.breakpoints_between(0.0, 100.0);
    REQUIRE(bps.size() == 5);
    CHECK(bps[0] == doctest::Approx(20.0));
    CHECK(bps[1] == doctest::Approx(40.0));
    CHECK(bps[2] == doctest::Approx(60.0));
    CHECK(bps[3] == doctest::Approx(80.0));
    CHECK(bps[4] == doctest::Approx(100.0));
    CHECK(DriveSignal::step(5.0).breakpoints_between(0.0, 100.0).empty());
}

TEST_CASE("config syntax round trips") {
    for (const char* text : {"step(5)", "square(5, 40, 0.5)", "piecewise(0:0, 10:5, 50:0)"}) {
        const DriveSignal sig = DriveSignal::parse(text);
        const DriveSignal again = DriveSignal::parse(sig.to_string());
        for (double t : {0.0, 0.5, 10.0, 25.0, 60.0}) {
            CHECK(sig.eval(t) == again.eval(t));
        }
    }
    CHECK_THROWS_AS(DriveSignal::parse("sawtooth(1)"), std::invalid_argument);
    CHECK_THROWS_AS(DriveSignal::parse("step(1,2)"), std::invalid_argument);
    CHECK_THROWS_AS(DriveSignal::parse("square(1, -5, 0.5)"), std::invalid_argument);
}
