// Shared generators for the test suites. All randomness is seeded, so every run
// exercises the same cases.

#pragma once

#include "spinbath/operator_algebra.hpp"

#include <random>

namespace spinbath::testing {

inline Vector basis_state(Eigen::Index dim, Eigen::Index index) {
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return v;
}

inline Matrix random_hermitian(Eigen::Index dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            a(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    return (a + a.adjoint()) / 2.0;
}

inline Matrix random_unitary(Eigen::Index dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            a(i, j) = Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(dim, dim);
}

inline Vector random_state(Eigen::Index dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = Complex(gauss(rng), gauss(rng));
    }
    v.normalize();
    return v;
}

}  // namespace spinbath::testing
