#include "ionx/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ionx {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), stride_(2 * kl + ku + 1),
      data_(stride_ * n, 0.0), ipiv_(n, 0) {
    if (n == 0) throw std::invalid_argument("banded matrix needs n > 0");
}

std::size_t BandedMatrix::index(std::size_t i, std::size_t j) const {
    // Row i of column j sits at band row kl + ku + i - j; pivoting fills up to
    // kl + ku superdiagonals, so the addressable range is j - (kl+ku) .. j + kl.
    const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(kl_ + ku_) +
                             static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j);
    if (r < 0 || r >= static_cast<std::ptrdiff_t>(stride_) || i >= n_ || j >= n_) {
        throw std::out_of_range("banded matrix index outside band");
    }
    return static_cast<std::size_t>(r) * n_ + j;
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
    factorized_ = false;
    return data_[index(i, j)];
}

double BandedMatrix::get(std::size_t i, std::size_t j) const {
    const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(kl_ + ku_) +
                             static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j);
    if (r < 0 || r >= static_cast<std::ptrdiff_t>(stride_) || i >= n_ || j >= n_) return 0.0;
    return data_[static_cast<std::size_t>(r) * n_ + j];
}

void BandedMatrix::clear() {
    std::fill(data_.begin(), data_.end(), 0.0);
    factorized_ = false;
}

bool BandedMatrix::factorize() {
    const std::size_t width = kl_ + ku_;  // widest reachable superdiagonal
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t ilast = std::min(n_ - 1, j + kl_);
        std::size_t p = j;
        double best = std::abs(data_[index(j, j)]);
        for (std::size_t i = j + 1; i <= ilast; ++i) {
            const double v = std::abs(data_[index(i, j)]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0 || !std::isfinite(best)) return false;
        ipiv_[j] = p;
        const std::size_t clast = std::min(n_ - 1, j + width);
        if (p != j) {
            for (std::size_t c = j; c <= clast; ++c) {
                std::swap(data_[index(p, c)], data_[index(j, c)]);
            }
        }
        const double piv = data_[index(j, j)];
        for (std::size_t i = j + 1; i <= ilast; ++i) {
            const double m = data_[index(i, j)] / piv;
            data_[index(i, j)] = m;
            if (m != 0.0) {
                for (std::size_t c = j + 1; c <= clast; ++c) {
                    data_[index(i, c)] -= m * data_[index(j, c)];
                }
            }
        }
    }
    factorized_ = true;
    return true;
}

void BandedMatrix::solve(std::vector<double>& b) const {
    if (!factorized_) throw std::logic_error("solve() before factorize()");
    if (b.size() != n_) throw std::invalid_argument("rhs size mismatch");
    const std::size_t width = kl_ + ku_;
    for (std::size_t j = 0; j < n_; ++j) {
        if (ipiv_[j] != j) std::swap(b[j], b[ipiv_[j]]);
        const std::size_t ilast = std::min(n_ - 1, j + kl_);
        for (std::size_t i = j + 1; i <= ilast; ++i) {
            b[i] -= data_[(kl_ + ku_ + i - j) * n_ + j] * b[j];
        }
    }
    for (std::size_t jj = n_; jj-- > 0;) {
        const std::size_t clast = std::min(n_ - 1, jj + width);
        double acc = b[jj];
        for (std::size_t c = jj + 1; c <= clast; ++c) {
            acc -= data_[(kl_ + ku_ + jj - c) * n_ + c] * b[c];
        }
        b[jj] = acc / data_[(kl_ + ku_) * n_ + jj];
    }
}

}  // namespace ionx
