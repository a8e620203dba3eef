// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qmld/eigen.hpp"

using namespace qmld;
using Catch::Approx;

namespace {
SymmetricMatrix random_symmetric(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    SymmetricMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) m.set(i, j, gauss(rng));
    return m;
}

double residual_norm(const SymmetricMatrix& m, const EigenDecomposition& eig,
                     int which) {
    double total = 0.0;
    for (int row = 0; row < m.dim; ++row) {
        double mv = 0.0;
        for (int col = 0; col < m.dim; ++col)
            mv += m.at(row, col) * eig.vector_entry(col, which);
        const double r = mv - eig.eigenvalues[static_cast<std::size_t>(which)] *
                                  eig.vector_entry(row, which);
        total += r * r;
    }
    return std::sqrt(total);
}
}  // namespace

TEST_CASE("identity and Pauli-X spectra") {
    SymmetricMatrix eye(2);
    eye.set(0, 0, 1.0);
    eye.set(1, 1, 1.0);
    const auto eig_eye = symmetric_eigendecomposition(eye);
    REQUIRE(eig_eye.eigenvalues[0] == Approx(1.0));
    REQUIRE(eig_eye.eigenvalues[1] == Approx(1.0));

    SymmetricMatrix pauli_x(2);
    pauli_x.set(0, 1, 1.0);
    const auto eig_x = symmetric_eigendecomposition(pauli_x);
    REQUIRE(eig_x.eigenvalues[0] == Approx(-1.0).margin(1e-12));
    REQUIRE(eig_x.eigenvalues[1] == Approx(1.0).margin(1e-12));
}

TEST_CASE("one-qubit interpolation midpoint matches the closed form") {
    // full-form constants of the scalar instance h = 1.2416, y = 1.5739
    const double a = 1.2416 * 1.2416;
    const double b = 1.5739 * 1.2416;
    const double c = 1.5739 * 1.5739;
    const double tau = 0.5;

    SymmetricMatrix h(2);
    h.set(0, 0, (a - 2.0 * b + c) * tau);
    h.set(1, 1, (a + 2.0 * b + c) * tau);
    h.set(0, 1, 1.0 - tau);
    const auto eig = symmetric_eigendecomposition(h);

    const double root = std::sqrt(1.0 - 2.0 * tau + (1.0 + 4.0 * b * b) * tau * tau);
    REQUIRE(eig.eigenvalues[0] == Approx((a + c) * tau - root).margin(1e-9));
    REQUIRE(eig.eigenvalues[1] == Approx((a + c) * tau + root).margin(1e-9));
}

TEST_CASE("residuals and orthonormality on random matrices") {
    std::mt19937_64 rng(21);
    for (int dim : {2, 3, 5, 8, 16, 33, 64}) {
        const SymmetricMatrix m = random_symmetric(dim, rng);
        const auto eig = symmetric_eigendecomposition(m);
        const double scale = m.frobenius_norm();

        for (int i = 1; i < dim; ++i)
            REQUIRE(eig.eigenvalues[static_cast<std::size_t>(i - 1)] <=
                    eig.eigenvalues[static_cast<std::size_t>(i)]);
        for (int i = 0; i < dim; ++i)
            REQUIRE(residual_norm(m, eig, i) <= 1e-8 * scale);

        for (int i = 0; i < dim; ++i) {
            for (int j = i; j < dim; ++j) {
                double dot = 0.0;
                for (int row = 0; row < dim; ++row)
                    dot += eig.vector_entry(row, i) * eig.vector_entry(row, j);
                REQUIRE(dot == Approx(i == j ? 1.0 : 0.0).margin(1e-8));
            }
        }
    }
}

TEST_CASE("degenerate spectra are handled") {
    // two-fold degeneracy by construction
    SymmetricMatrix m(3);
    m.set(0, 0, 2.0);
    m.set(1, 1, 2.0);
    m.set(2, 2, -1.0);
    const auto eig = symmetric_eigendecomposition(m);
    REQUIRE(eig.eigenvalues[0] == Approx(-1.0));
    REQUIRE(eig.eigenvalues[1] == Approx(2.0));
    REQUIRE(eig.eigenvalues[2] == Approx(2.0));
}

TEST_CASE("dimension cap") {
    REQUIRE_THROWS_AS(SymmetricMatrix(4097), std::invalid_argument);
    REQUIRE_THROWS_AS(SymmetricMatrix(0), std::invalid_argument);
}
