// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmld/ising.hpp"
#include "qmld/statevector.hpp"

namespace qmld {

/// Level-p angle set. Construction wraps gamma into [0, 2*pi) and beta into
/// [0, pi); the objective has period pi in beta exactly, so the beta wrap is
/// value-preserving.
struct QaoaParams {
    int level = 1;
    std::vector<double> gammas;
    std::vector<double> betas;

    QaoaParams() = default;
    QaoaParams(std::vector<double> gamma_angles, std::vector<double> beta_angles)
        : level(static_cast<int>(gamma_angles.size())),
          gammas(std::move(gamma_angles)),
          betas(std::move(beta_angles)) {
        if (level < 1 || betas.size() != gammas.size())
            throw std::invalid_argument(
                "gamma and beta sequences must have equal positive length");
        for (double& g : gammas) g = wrap(g, 2.0 * std::numbers::pi);
        for (double& b : betas) b = wrap(b, std::numbers::pi);
    }

    static double wrap(double angle, double period) {
        double r = std::fmod(angle, period);
        if (r < 0.0) r += period;
        return r;
    }
};

/// F1 samples on a gamma x beta grid.
struct LandscapeGrid {
    std::vector<double> gamma_axis;
    std::vector<double> beta_axis;
    std::vector<std::vector<double>> values;  // [i][j] = F1(gamma_i, beta_j)
};

namespace detail {
/// Builds the level-p ansatz into `state`, reusing its storage: uniform
/// superposition, then alternately exp(-i*gamma_j*H_f) and the mixer pass
/// for j = 1..p. Angles are taken as given, without wrapping.
inline void prepare_ansatz_into(StateVector& state, const IsingModel& model,
                                std::span<const double> energies,
                                std::span<const double> gammas,
                                std::span<const double> betas) {
    check_qubit_count(model.num_spins);
    const std::size_t dim = std::size_t{1} << model.num_spins;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    state.num_qubits = model.num_spins;
    state.amplitudes.assign(dim, cplx{amp, 0.0});
    for (std::size_t j = 0; j < gammas.size(); ++j) {
        apply_diagonal_phase(state, energies, gammas[j]);
        apply_x_rotations(state, betas[j]);
    }
}

inline double expectation_fp_raw(const IsingModel& model,
                                 std::span<const double> gammas,
                                 std::span<const double> betas) {
    const std::vector<double> energies = diagonal(model);
    StateVector state;
    prepare_ansatz_into(state, model, energies, gammas, betas);
    return expectation_diagonal(state, energies);
}
}  // namespace detail

/// |psi_p(gamma, beta)> for the given (simplified-form) model.
inline StateVector prepare_ansatz(const IsingModel& model,
                                  const QaoaParams& params) {
    const std::vector<double> energies = diagonal(model);
    StateVector state;
    detail::prepare_ansatz_into(state, model, energies, params.gammas,
                                params.betas);
    return state;
}

/// F_p = <psi_p| H_f |psi_p>, evaluated exactly from the amplitudes.
inline double expectation_fp(const IsingModel& model,
                             const QaoaParams& params) {
    return detail::expectation_fp_raw(model, params.gammas, params.betas);
}

/// Closed-form level-1 expectation for a single spin with field b:
/// F1 = b * sin(2*beta) * sin(2*b*gamma).
inline double analytic_f1_single(double b, double gamma, double beta) {
    return b * std::sin(2.0 * beta) * std::sin(2.0 * b * gamma);
}

/// Level-1 expectation assembled term by term:
/// F1 = sum_{l>k} J_{k,l} <sz_k sz_l> - sum_k h_k <sz_k>, each Pauli term
/// evaluated as a diagonal expectation of its +-1 pattern in the ansatz
/// state. Linearity makes this equal to the direct expectation; it exists as
/// an independent evaluation route.
inline double f1_factored(const IsingModel& model, double gamma, double beta) {
    const std::vector<double> energies = diagonal(model);
    StateVector state;
    const double gammas[1] = {gamma};
    const double betas[1] = {beta};
    detail::prepare_ansatz_into(state, model, energies, gammas, betas);

    std::vector<double> probabilities(state.dim());
    for (std::size_t z = 0; z < state.dim(); ++z)
        probabilities[z] = std::norm(state.amplitudes[z]);

    double value = 0.0;
    for (const auto& [pair, coupling] : model.couplings) {
        double term = 0.0;
        for (std::size_t z = 0; z < probabilities.size(); ++z)
            term += probabilities[z] *
                    detail::spin_at(z, model.num_spins, pair.first) *
                    detail::spin_at(z, model.num_spins, pair.second);
        value += coupling * term;
    }
    for (int k = 0; k < model.num_spins; ++k) {
        double term = 0.0;
        for (std::size_t z = 0; z < probabilities.size(); ++z)
            term += probabilities[z] * detail::spin_at(z, model.num_spins, k);
        value -= model.fields[k] * term;
    }
    return value;
}

/// Level-1 expectation over a grid; axes must stay within [0, pi], the range
/// the even symmetry F_p(gamma, beta) = F_p(-gamma, -beta) justifies.
inline LandscapeGrid landscape(const IsingModel& model,
                               std::span<const double> gamma_axis,
                               std::span<const double> beta_axis) {
    for (double g : gamma_axis)
        if (g < 0.0 || g > std::numbers::pi)
            throw std::invalid_argument("landscape gamma axis must lie in [0, pi]");
    for (double b : beta_axis)
        if (b < 0.0 || b > std::numbers::pi)
            throw std::invalid_argument("landscape beta axis must lie in [0, pi]");

    const std::vector<double> energies = diagonal(model);
    LandscapeGrid grid;
    grid.gamma_axis.assign(gamma_axis.begin(), gamma_axis.end());
    grid.beta_axis.assign(beta_axis.begin(), beta_axis.end());
    grid.values.assign(gamma_axis.size(),
                       std::vector<double>(beta_axis.size(), 0.0));
    StateVector state;
    for (std::size_t i = 0; i < gamma_axis.size(); ++i) {
        for (std::size_t j = 0; j < beta_axis.size(); ++j) {
            const double gammas[1] = {gamma_axis[i]};
            const double betas[1] = {beta_axis[j]};
            detail::prepare_ansatz_into(state, model, energies, gammas, betas);
            grid.values[i][j] = expectation_diagonal(state, energies);
        }
    }
    return grid;
}

/// Gate budget of the level-p circuit: (N+3)N/2 unitaries per level for the
/// phase and mixer passes, N Hadamards for state preparation, (N+5)Np/2
/// gates in total.
struct GateCount {
    std::uint64_t per_level = 0;
    std::uint64_t hadamard = 0;
    std::uint64_t total = 0;
};

inline GateCount gate_count(int num_qubits, int level) {
    if (num_qubits < 1 || level < 1)
        throw std::invalid_argument("gate_count needs N >= 1 and p >= 1");
    const std::uint64_t n = static_cast<std::uint64_t>(num_qubits);
    const std::uint64_t p = static_cast<std::uint64_t>(level);
    GateCount counts;
    counts.per_level = (n + 3) * n / 2;
    counts.hadamard = n;
    counts.total = (n + 5) * n * p / 2;
    return counts;
}

/// Classical-simulation footprint: 2^(N+3) bytes for one state (2^N complex
/// doubles at single precision per the 8-bytes-per-amplitude accounting),
/// 2^(2N+3) bytes for one dense unitary.
struct MemoryEstimate {
    std::uint64_t state_bytes = 0;
    std::uint64_t dense_unitary_bytes = 0;
};

inline MemoryEstimate memory_estimate(int num_qubits) {
    if (num_qubits < 1)
        throw std::invalid_argument("memory_estimate needs N >= 1");
    if (2 * num_qubits + 3 >= 64)
        throw std::invalid_argument(
            "memory_estimate overflows 64-bit byte counts past N = 30");
    MemoryEstimate estimate;
    estimate.state_bytes = std::uint64_t{1} << (num_qubits + 3);
    estimate.dense_unitary_bytes = std::uint64_t{1} << (2 * num_qubits + 3);
    return estimate;
}

}  // namespace qmld
