#include <doctest.h>

#include <cmath>
#include <random>

#include "ionx/dimensionless.hpp"

using namespace ionx;

namespace {

PhysicalParams sample_params() {
    PhysicalParams p;
    p.permittivity = 6.95e-10;
    p.temperature = 298.0;
    p.bulk_concentration = 100.0;
    p.diffusion_solution = {2e-9, 2e-9};
    p.diffusion_membrane = {2e-10, 2e-10};
    p.membrane_thickness = 50e-9;
    p.boundary_layer_width = 100e-9;
    p.fixed_charge = 100.0;
    return p;
}

}  // namespace

TEST_CASE("Debye length matches a direct evaluation of the formula") {
    const PhysicalParams p = sample_params();
    // Independent hand evaluation: sqrt(eps*R*T / (F^2*c)) with the same
    // constants typed out literally.
    const double expected =
        std::sqrt(6.95e-10 * 8.31446 * 298.0 / (96485.33212 * 96485.33212 * 100.0));
    const double lambda = compute_debye_length(p);
    CHECK(lambda == doctest::Approx(expected).epsilon(1e-12));
    CHECK(lambda == doctest::Approx(1.36e-9).epsilon(0.01));
}

TEST_CASE("Debye length scaling laws") {
    PhysicalParams p = sample_params();
    const double lambda = compute_debye_length(p);

    SUBCASE("quadrupling the concentration halves lambda") {
        p.bulk_concentration *= 4.0;
        CHECK(compute_debye_length(p) == doctest::Approx(0.5 * lambda).epsilon(1e-12));
    }
    SUBCASE("homogeneity: scaling permittivity and concentration together is neutral") {
        std::mt19937 rng(1234);
        std::uniform_real_distribution<double> factor(0.1, 10.0);
        for (int trial = 0; trial < 20; ++trial) {
            PhysicalParams q = sample_params();
            const double k = factor(rng);
            q.permittivity *= k;
            q.bulk_concentration *= k;
            CHECK(compute_debye_length(q) == doctest::Approx(lambda).epsilon(1e-12));
        }
    }
    SUBCASE("non-positive parameters are rejected") {
        p.bulk_concentration = 0.0;
        CHECK_THROWS_AS(compute_debye_length(p), std::invalid_argument);
    }
}

TEST_CASE("nondimensionalize reproduces the reference scaled parameters") {
    const PhysicalParams p = sample_params();
    const ScalingBasis b = basis_from_params(p, p.diffusion_solution[0]);
    const DimensionlessSystem s = nondimensionalize(p, b);

    CHECK(s.bulk_concentration == doctest::Approx(1.0));      // c' = c_bulk -> c0 = 1
    CHECK(s.diff_membrane[0] == doctest::Approx(0.1));        // D'_1M = 0.1 D_a
    CHECK(s.diff_solution[0] == doctest::Approx(1.0));
    CHECK(s.fixed_charge == doctest::Approx(1.0));
    // With lambda computed from the same parameters, epsilon is exactly 1.
    CHECK(s.permittivity == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("round trip nondimensionalize -> redimensionalize is the identity") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> mag(0.2, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        PhysicalParams p = sample_params();
        p.permittivity *= mag(rng);
        p.temperature *= mag(rng);
        p.bulk_concentration *= mag(rng);
        p.membrane_thickness *= mag(rng);
        p.boundary_layer_width *= mag(rng);
        p.fixed_charge *= mag(rng);
        for (int i = 0; i < 2; ++i) {
            p.diffusion_solution[i] *= mag(rng);
            p.diffusion_membrane[i] = p.diffusion_solution[i] * 0.1;
        }
        ScalingBasis b = basis_from_params(p, p.diffusion_solution[0] * mag(rng));
        const PhysicalParams back = redimensionalize(nondimensionalize(p, b), b);

        CHECK(back.permittivity == doctest::Approx(p.permittivity).epsilon(1e-12));
        CHECK(back.bulk_concentration ==
              doctest::Approx(p.bulk_concentration).epsilon(1e-12));
        CHECK(back.membrane_thickness ==
              doctest::Approx(p.membrane_thickness).epsilon(1e-12));
        CHECK(back.boundary_layer_width ==
              doctest::Approx(p.boundary_layer_width).epsilon(1e-12));
        CHECK(back.fixed_charge == doctest::Approx(p.fixed_charge).epsilon(1e-12));
        for (int i = 0; i < 2; ++i) {
            CHECK(back.diffusion_solution[i] ==
                  doctest::Approx(p.diffusion_solution[i]).epsilon(1e-12));
            CHECK(back.diffusion_membrane[i] ==
                  doctest::Approx(p.diffusion_membrane[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("unit maps invert the normalization relations") {
    const PhysicalParams p = sample_params();
    const ScalingBasis b = basis_from_params(p, 2e-9);
    // J = 1 maps back to D_a * c_bulk / lambda.
    CHECK(b.flux_to_physical(1.0) ==
          doctest::Approx(b.diffusion * b.concentration / b.length).epsilon(1e-14));
    CHECK(b.tau_to_time(b.time_to_tau(12.5)) == doctest::Approx(12.5).epsilon(1e-14));
    // A redimensionalized c0 = 1 recovers the bulk concentration.
    DimensionlessSystem s = DimensionlessSystem::reference();
    const PhysicalParams back = redimensionalize(s, b);
    CHECK(back.bulk_concentration == doctest::Approx(b.concentration).epsilon(1e-14));
}

TEST_CASE("zero basis components are rejected") {
    ScalingBasis b;
    b.diffusion = 0.0;
    b.concentration = 100.0;
    b.length = 1e-9;
    CHECK_THROWS_AS(b.validate(), std::invalid_argument);
}
