// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qmld/eigen.hpp"
#include "qmld/ising.hpp"
#include "qmld/statevector.hpp"

namespace qmld {

/// Dense analysis is limited to 12 qubits (4096-dimensional matrices).
inline constexpr int kMaxAnalysisQubits = 12;

/// Eigenvalue table over a uniform tau grid, plus the minimum gap between
/// the two lowest levels and where it occurs.
struct SpectrumTrace {
    std::vector<double> tau_grid;
    std::vector<std::vector<double>> eigenvalues;  // per tau, ascending
    double min_gap = 0.0;
    double gap_location = 0.0;
};

struct EvolutionResult {
    StateVector final_state;
    double ground_overlap = 0.0;  // |<ground of H_f | psi(T)>|^2
    double total_time = 0.0;
    int slices = 0;
    int trotter_substeps = 0;
};

namespace detail {
inline void require_full_form(const IsingModel& model, const char* where) {
    if (model.form != IsingForm::full)
        throw std::invalid_argument(std::string(where) +
                                    " requires the full-form model");
}

inline void check_analysis_size(int num_spins) {
    if (num_spins < 1 || num_spins > kMaxAnalysisQubits)
        throw std::invalid_argument(
            "dense analysis supports 1 to 12 qubits, got " +
            std::to_string(num_spins));
}
}  // namespace detail

/// (1 - tau) * H_B + tau * diag(H_f) as a dense symmetric matrix. H_B is the
/// transverse-field sum: entry 1 between indices differing in exactly one
/// bit, 0 elsewhere.
inline SymmetricMatrix interpolated_hamiltonian(const IsingModel& model,
                                                double tau) {
    detail::require_full_form(model, "interpolated_hamiltonian");
    detail::check_analysis_size(model.num_spins);
    if (tau < 0.0 || tau > 1.0)
        throw std::invalid_argument("tau must lie in [0, 1], got " +
                                    std::to_string(tau));

    const std::vector<double> energies = diagonal(model);
    const int dim = 1 << model.num_spins;
    SymmetricMatrix h(dim);
    for (int i = 0; i < dim; ++i) {
        h.set(i, i, tau * energies[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < dim; ++j)
            if (std::popcount(static_cast<unsigned>(i ^ j)) == 1)
                h.set(i, j, 1.0 - tau);
    }
    return h;
}

/// Eigenvalues of the interpolation on a uniform grid over [0, 1]. The gap
/// is reported straight off the grid, no interpolation; refine the grid to
/// tighten it. Grid points are independent and are solved on worker threads
/// for larger matrices.
inline SpectrumTrace spectrum_trace(const IsingModel& model, int grid_points) {
    detail::require_full_form(model, "spectrum_trace");
    detail::check_analysis_size(model.num_spins);
    if (grid_points < 2)
        throw std::invalid_argument("spectrum grid needs at least 2 points");

    SpectrumTrace trace;
    trace.tau_grid.resize(static_cast<std::size_t>(grid_points));
    trace.eigenvalues.resize(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i)
        trace.tau_grid[static_cast<std::size_t>(i)] =
            static_cast<double>(i) / (grid_points - 1);

    auto solve_point = [&](int i) {
        const SymmetricMatrix h =
            interpolated_hamiltonian(model, trace.tau_grid[static_cast<std::size_t>(i)]);
        trace.eigenvalues[static_cast<std::size_t>(i)] =
            symmetric_eigendecomposition(h).eigenvalues;
    };

    const int dim = 1 << model.num_spins;
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned workers =
        (dim >= 64 && hw > 1) ? std::min<unsigned>(hw, static_cast<unsigned>(grid_points)) : 1;
    if (workers <= 1) {
        for (int i = 0; i < grid_points; ++i) solve_point(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w]() {
                for (int i = static_cast<int>(w); i < grid_points;
                     i += static_cast<int>(workers))
                    solve_point(i);
            });
        for (auto& t : pool) t.join();
    }

    trace.min_gap = trace.eigenvalues.front()[1] - trace.eigenvalues.front()[0];
    trace.gap_location = trace.tau_grid.front();
    for (int i = 1; i < grid_points; ++i) {
        const auto& levels = trace.eigenvalues[static_cast<std::size_t>(i)];
        const double gap = levels[1] - levels[0];
        if (gap < trace.min_gap) {
            trace.min_gap = gap;
            trace.gap_location = trace.tau_grid[static_cast<std::size_t>(i)];
        }
    }
    return trace;
}

/// Closed-form eigenvalue pair of the one-qubit interpolation with full-form
/// constants (a, b, c): (a+c)*tau -/+ sqrt(1 - 2 tau + (1 + 4 b^2) tau^2).
inline std::pair<double, double> single_qubit_spectrum_closed_form(
    double a, double b, double c, double tau) {
    if (tau < 0.0 || tau > 1.0)
        throw std::invalid_argument("tau must lie in [0, 1]");
    const double root =
        std::sqrt(1.0 - 2.0 * tau + (1.0 + 4.0 * b * b) * tau * tau);
    const double mid = (a + c) * tau;
    return {mid - root, mid + root};
}

/// Adiabatic runtime scale xi / g^2.
inline double runtime_bound(const SpectrumTrace& spectrum, double xi) {
    if (spectrum.min_gap <= 0.0)
        throw std::invalid_argument(
            "runtime bound undefined for a degenerate (zero) minimum gap");
    return xi / (spectrum.min_gap * spectrum.min_gap);
}

/// Trotterized sweep of the interpolation, linear schedule, midpoint tau per
/// slice. Each of the p slices advances time by dt = T/p, split into r
/// first-order substeps: a diagonal phase with energies tau_j * diag(H_f)
/// followed by the mixer pass scaled by (1 - tau_j) * dt / r.
///
/// The mixer is applied with the negated sign, so the uniform superposition
/// is the ground state of the tau = 0 generator and the sweep tracks the
/// ground-state branch into the ground state of H_f. The spectrum path above
/// keeps the unnegated transverse field; the two differ only by conjugation
/// with Z on every qubit, which leaves all eigenvalues and gaps unchanged.
inline EvolutionResult trotter_evolve(const IsingModel& model,
                                      double total_time, int slices,
                                      int substeps) {
    detail::require_full_form(model, "trotter_evolve");
    detail::check_analysis_size(model.num_spins);
    if (slices < 1) throw std::invalid_argument("slice count must be >= 1");
    if (substeps < 1) throw std::invalid_argument("substep count must be >= 1");
    if (total_time < 0.0)
        throw std::invalid_argument("total_time must be >= 0");

    const std::vector<double> energies = diagonal(model);
    StateVector state = uniform_superposition(model.num_spins);

    const double dt = total_time / slices;
    for (int j = 1; j <= slices; ++j) {
        const double tau = (j - 0.5) / slices;
        const double phase_angle = tau * dt / substeps;
        const double mixer_angle = -(1.0 - tau) * dt / substeps;
        for (int step = 0; step < substeps; ++step) {
            apply_diagonal_phase(state, energies, phase_angle);
            apply_x_rotations(state, mixer_angle);
        }
    }

    EvolutionResult result;
    result.ground_overlap =
        std::norm(state.amplitudes[argmin_index(energies)]);
    result.final_state = std::move(state);
    result.total_time = total_time;
    result.slices = slices;
    result.trotter_substeps = substeps;
    return result;
}

}  // namespace qmld
