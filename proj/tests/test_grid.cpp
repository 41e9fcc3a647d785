#include <doctest.h>

#include <sstream>

#include "ionx/grid.hpp"
#include "ionx/state.hpp"

using namespace ionx;

TEST_CASE("verbatim grid: width classes, counts, and extent") {
    const CompartmentGrid g = build_paper_grid();
    REQUIRE(g.size() == 480);

    // delta_k = 3 for k = 1..30 and 451..480 (1-based).
    for (std::size_t k = 0; k < 30; ++k) CHECK(g.width(k) == 3.0);
    for (std::size_t k = 450; k < 480; ++k) CHECK(g.width(k) == 3.0);
    // delta_k = 0.6 for k = 31..40, 201..210, 271..280, 441..450.
    for (std::size_t k : {30u, 39u, 200u, 209u, 270u, 279u, 440u, 449u}) {
        CHECK(g.width(k) == 0.6);
    }
    // delta_k = 0.05 for k = 41..200 and 281..440.
    for (std::size_t k : {40u, 120u, 199u, 280u, 350u, 439u}) CHECK(g.width(k) == 0.05);
    // delta_k = 1.5 for k = 211..270.
    for (std::size_t k = 210; k < 270; ++k) CHECK(g.width(k) == 1.5);

    // The widths sum to 310 lambda (60*3 + 40*0.6 + 320*0.05 + 60*1.5).
    CHECK(g.total_width() == doctest::Approx(310.0).epsilon(1e-12));

    // Both bath blocks span exactly 100 lambda; the membrane block spans the
    // inner 110, with each interface centered in a fine zone.
    CHECK(g.left_edge() == doctest::Approx(-100.0).epsilon(1e-12));
    CHECK(g.face_position(g.membrane_begin()) == doctest::Approx(0.0));
    CHECK(g.face_position(g.membrane_end()) == doctest::Approx(110.0).epsilon(1e-12));
    CHECK(g.membrane_begin() == 120);
    CHECK(g.membrane_end() == 360);
    CHECK(g.right_edge() == doctest::Approx(210.0).epsilon(1e-12));
}

TEST_CASE("grid widths partition the axis") {
    const CompartmentGrid g = build_paper_grid();
    for (std::size_t k = 0; k + 1 < g.size(); ++k) {
        CHECK(g.center(k + 1) - g.center(k) ==
              doctest::Approx(0.5 * (g.width(k) + g.width(k + 1))).epsilon(1e-12));
        CHECK(g.center(k + 1) > g.center(k));
    }
    CHECK(g.face_position(0) == doctest::Approx(g.center(0) - 0.5 * g.width(0)));
}

TEST_CASE("scaled grid matches the nominal geometry exactly") {
    const CompartmentGrid g = build_scaled_grid(50.0, 100.0);
    CHECK(g.membrane_width() == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(g.left_edge() == doctest::Approx(-100.0).epsilon(1e-12));
    CHECK(g.right_edge() == doctest::Approx(150.0).epsilon(1e-12));
    CHECK(g.face_position(g.membrane_begin()) == doctest::Approx(0.0));
}

TEST_CASE("fixed-charge profile theta_at") {
    const DimensionlessSystem s = DimensionlessSystem::reference();  // X=1, d=50, delta=100

    CHECK(theta_at(s, 25.0) == 1.0);     // d/(2 lambda), inside the membrane
    CHECK(theta_at(s, -50.0) == 0.0);    // -delta/(2 lambda), solution side
    CHECK(theta_at(s, 0.0) == 1.0);      // closed interval at xi = 0
    CHECK(theta_at(s, 50.0) == 1.0);     // closed interval at xi = d
    CHECK(theta_at(s, 50.0 + 1e-9) == 0.0);
    CHECK_THROWS_AS(theta_at(s, -100.0 - 1e-6), std::out_of_range);
    CHECK_THROWS_AS(theta_at(s, 150.0 + 1e-6), std::out_of_range);

    SUBCASE("piecewise constant with exactly two discontinuities") {
        int jumps = 0;
        double prev = theta_at(s, -100.0);
        for (double xi = -100.0; xi <= 150.0; xi += 0.01) {
            const double cur = theta_at(s, xi);
            if (cur != prev) ++jumps;
            prev = cur;
        }
        CHECK(jumps == 2);
    }
}

TEST_CASE("network element values") {
    const DimensionlessSystem s = DimensionlessSystem::reference();
    const CompartmentGrid g = build_paper_grid();
    StateVector st(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        st.c(0, k) = 1.0;
        st.c(1, k) = 1.0;
        st.phi(k) = 0.0;
    }
    const NetworkElements e = network_elements(g, s, st);

    SUBCASE("R_d = delta/(2 D): 0.05 with D=1 gives 0.025") {
        CHECK(e.diffusion_resistance[0][40] == doctest::Approx(0.025));  // solution fine zone
        // membrane fine zone, D_M = 0.1 -> 0.25
        CHECK(e.diffusion_resistance[0][130] == doctest::Approx(0.25));
    }
    SUBCASE("C_d equals the compartment width everywhere") {
        for (std::size_t k = 0; k < g.size(); ++k) CHECK(e.capacitance[k] == g.width(k));
    }
    SUBCASE("R_p = delta/(2 eps): width 3 with eps=1 gives 1.5") {
        CHECK(e.medium_resistance[0] == doctest::Approx(1.5));
    }
    SUBCASE("stored-charge source vanishes where the state is electroneutral") {
        // c1 = c2 = 1 is electroneutral in solution but leaves the fixed
        // charge unbalanced in the membrane: GJ_p = +delta_k * X there.
        CHECK(e.stored_charge_source[0] == doctest::Approx(0.0));
        CHECK(e.stored_charge_source[200] ==
              doctest::Approx(g.width(200) * s.fixed_charge));
    }
    SUBCASE("elements depend only on the (width, region, state) triple") {
        // Compartments 0 and 479 share width, region class (solution), and state.
        CHECK(e.diffusion_resistance[0][0] == e.diffusion_resistance[0][479]);
        CHECK(e.medium_resistance[0] == e.medium_resistance[479]);
        CHECK(e.capacitance[0] == e.capacitance[479]);
        CHECK(e.stored_charge_source[0] == e.stored_charge_source[479]);
        // Same within the membrane core.
        CHECK(e.diffusion_resistance[1][215] == e.diffusion_resistance[1][260]);
    }
}

TEST_CASE("grid CSV dump has the documented columns") {
    const CompartmentGrid g = build_uniform_grid(2, 2, 1.0);
    std::ostringstream os;
    g.write_csv(os);
    const std::string text = os.str();
    CHECK(text.rfind("k,xi_k,delta_k,region\n", 0) == 0);
    CHECK(text.find("SolutionLeft") != std::string::npos);
    CHECK(text.find("Membrane") != std::string::npos);
    CHECK(text.find("SolutionRight") != std::string::npos);
}

TEST_CASE("malformed grids are rejected") {
    CHECK_THROWS_AS(CompartmentGrid({1.0, -1.0}, {Region::SolutionLeft, Region::Membrane}),
                    std::invalid_argument);
    // Membrane block missing.
    CHECK_THROWS_AS(CompartmentGrid({1.0, 1.0}, {Region::SolutionLeft, Region::SolutionRight}),
                    std::invalid_argument);
    // Non-contiguous regions.
    CHECK_THROWS_AS(
        CompartmentGrid({1.0, 1.0, 1.0},
                        {Region::Membrane, Region::SolutionLeft, Region::Membrane}),
        std::invalid_argument);
}
