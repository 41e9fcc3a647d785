#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ionx/banded.hpp"

using namespace ionx;

namespace {

/// Dense Gaussian elimination with partial pivoting (oracle).
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t p = j;
        for (std::size_t i = j + 1; i < n; ++i) {
            if (std::abs(a[i][j]) > std::abs(a[p][j])) p = i;
        }
        std::swap(a[j], a[p]);
        std::swap(b[j], b[p]);
        for (std::size_t i = j + 1; i < n; ++i) {
            const double m = a[i][j] / a[j][j];
            for (std::size_t c = j; c < n; ++c) a[i][c] -= m * a[j][c];
            b[i] -= m * b[j];
        }
    }
    std::vector<double> x(n);
    for (std::size_t jj = n; jj-- > 0;) {
        double acc = b[jj];
        for (std::size_t c = jj + 1; c < n; ++c) acc -= a[jj][c] * x[c];
        x[jj] = acc / a[jj][jj];
    }
    return x;
}

}  // namespace

TEST_CASE("banded LU agrees with dense elimination on random band systems") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(rng() % 60);
        const std::size_t kl = rng() % 4;
        const std::size_t ku = rng() % 6;
        BandedMatrix band(n, kl, ku);
        std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(j) -
                                           static_cast<std::ptrdiff_t>(i);
                if (off < -static_cast<std::ptrdiff_t>(kl) ||
                    off > static_cast<std::ptrdiff_t>(ku)) {
                    continue;
                }
                double v = val(rng);
                if (i == j) v += 3.0;  // keep the oracle comparison well conditioned
                dense[i][j] = v;
                band.at(i, j) = v;
            }
        }
        std::vector<double> rhs(n);
        for (auto& r : rhs) r = val(rng);

        REQUIRE(band.factorize());
        std::vector<double> x = rhs;
        band.solve(x);
        const std::vector<double> expected = dense_solve(dense, rhs);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(x[i] == doctest::Approx(expected[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("banded LU pivots rows when the diagonal vanishes") {
    // Tridiagonal with a zero pivot that plain (unpivoted) LU cannot pass.
    BandedMatrix band(3, 1, 1);
    band.at(0, 0) = 0.0;
    band.at(0, 1) = 2.0;
    band.at(1, 0) = 1.0;
    band.at(1, 1) = 1.0;
    band.at(1, 2) = 1.0;
    band.at(2, 1) = 4.0;
    band.at(2, 2) = -1.0;
    REQUIRE(band.factorize());
    std::vector<double> b = {2.0, 3.0, 3.0};  // solution (1, 1, 1)
    band.solve(b);
    CHECK(b[0] == doctest::Approx(1.0));
    CHECK(b[1] == doctest::Approx(1.0));
    CHECK(b[2] == doctest::Approx(1.0));
}

TEST_CASE("singular matrices are reported") {
    BandedMatrix band(2, 1, 1);
    band.at(0, 0) = 1.0;
    band.at(0, 1) = 2.0;
    band.at(1, 0) = 0.5;
    band.at(1, 1) = 1.0;
    CHECK_FALSE(band.factorize());
}
