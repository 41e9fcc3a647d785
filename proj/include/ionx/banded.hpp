#pragma once

/**
 * @file banded.hpp
 * @brief Banded LU factorization with partial pivoting (LAPACK-style band
 *        storage with kl extra superdiagonals for pivot fill-in).
 */

#include <cstddef>
#include <vector>

namespace ionx {

class BandedMatrix {
  public:
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const { return n_; }
    std::size_t lower_bandwidth() const { return kl_; }
    std::size_t upper_bandwidth() const { return ku_; }

    /// Entry (i, j); only positions within the (fill-extended) band are
    /// addressable. add() is a no-op target outside the logical band check.
    double& at(std::size_t i, std::size_t j);
    double get(std::size_t i, std::size_t j) const;
    void add(std::size_t i, std::size_t j, double v) { at(i, j) += v; }

    void clear();

    /// In-place LU with partial pivoting; returns false when singular.
    bool factorize();

    /// Solve A x = b using the stored factors; b is overwritten with x.
    void solve(std::vector<double>& b) const;

  private:
    std::size_t n_, kl_, ku_;
    std::size_t stride_;              // rows in band storage = 2*kl + ku + 1
    std::vector<double> data_;
    std::vector<std::size_t> ipiv_;
    bool factorized_ = false;

    std::size_t index(std::size_t i, std::size_t j) const;
};

}  // namespace ionx
