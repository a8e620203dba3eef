// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmld {

/// Analysis-scale cap on dense matrices (2^12, i.e. 12 qubits).
inline constexpr int kMaxEigenDim = 4096;

/// Dense real symmetric matrix, row-major. Constructed symmetric; `set`
/// writes both (i,j) and (j,i) so the invariant holds exactly.
struct SymmetricMatrix {
    int dim = 0;
    std::vector<double> entries;

    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int d) : dim(d) {
        if (d < 1 || d > kMaxEigenDim)
            throw std::invalid_argument("matrix dimension " +
                                        std::to_string(d) +
                                        " outside [1, 4096]");
        entries.assign(static_cast<std::size_t>(d) * d, 0.0);
    }

    double at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * dim + j];
    }
    void set(int i, int j, double value) {
        entries[static_cast<std::size_t>(i) * dim + j] = value;
        entries[static_cast<std::size_t>(j) * dim + i] = value;
    }

    double frobenius_norm() const {
        double total = 0.0;
        for (double e : entries) total += e * e;
        return std::sqrt(total);
    }
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    /// Row-major d x d matrix whose COLUMNS are the orthonormal eigenvectors,
    /// column i paired with eigenvalues[i].
    std::vector<double> eigenvectors;
    int dim = 0;

    double vector_entry(int row, int which) const {
        return eigenvectors[static_cast<std::size_t>(row) * dim + which];
    }
};

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
///
/// Sweeps rotate away the largest off-diagonal mass until
/// off(A) <= 1e-15 * ||A||_F. Degenerate eigenvalues are fine; the sort is
/// stable and never assumes distinct values. Residuals land near machine
/// epsilon, well inside the 1e-8 * ||M|| contract.
inline EigenDecomposition symmetric_eigendecomposition(
    const SymmetricMatrix& matrix) {
    const int d = matrix.dim;
    if (d < 1 || d > kMaxEigenDim)
        throw std::invalid_argument("matrix dimension " + std::to_string(d) +
                                    " outside [1, 4096]");

    std::vector<double> a = matrix.entries;
    std::vector<double> v(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i) * d + i] = 1.0;

    auto idx = [d](int i, int j) {
        return static_cast<std::size_t>(i) * d + j;
    };

    const double scale = matrix.frobenius_norm();
    const double threshold = (scale > 0.0) ? 1e-15 * scale : 0.0;

    auto off_diagonal_norm = [&]() {
        double total = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) total += 2.0 * a[idx(i, j)] * a[idx(i, j)];
        return std::sqrt(total);
    };

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm() <= threshold) break;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double apq = a[idx(p, q)];
                if (std::abs(apq) <= threshold / (d * d + 1.0)) continue;

                const double theta = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) +
                                  std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a[idx(p, p)];
                const double aqq = a[idx(q, q)];
                a[idx(p, p)] = app - t * apq;
                a[idx(q, q)] = aqq + t * apq;
                a[idx(p, q)] = 0.0;
                a[idx(q, p)] = 0.0;

                for (int r = 0; r < d; ++r) {
                    if (r != p && r != q) {
                        const double arp = a[idx(r, p)];
                        const double arq = a[idx(r, q)];
                        a[idx(r, p)] = a[idx(p, r)] = arp - s * (arq + tau * arp);
                        a[idx(r, q)] = a[idx(q, r)] = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v[idx(r, p)];
                    const double vrq = v[idx(r, q)];
                    v[idx(r, p)] = vrp - s * (vrq + tau * vrp);
                    v[idx(r, q)] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return a[idx(i, i)] < a[idx(j, j)];
    });

    EigenDecomposition result;
    result.dim = d;
    result.eigenvalues.resize(static_cast<std::size_t>(d));
    result.eigenvectors.resize(static_cast<std::size_t>(d) * d);
    for (int col = 0; col < d; ++col) {
        result.eigenvalues[col] = a[idx(order[col], order[col])];
        for (int row = 0; row < d; ++row)
            result.eigenvectors[idx(row, col)] = v[idx(row, order[col])];
    }
    return result;
}

}  // namespace qmld
