// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmld/rng.hpp"

namespace qmld {

using cplx = std::complex<double>;

/// Dense-state cap. A state holds 2^N complex doubles (2^(N+3) bytes at
/// single precision accounting); operations refuse anything past 15 qubits.
inline constexpr int kMaxQubits = 15;

/// Dense register of 2^N complex amplitudes.
///
/// Basis-index convention (fixed everywhere in this library): a bitstring
/// z = (z_1, ..., z_N) with z_1 the most significant bit maps to
/// index = sum_k z_k * 2^(N-k). So for N=2 the order is 00, 01, 10, 11.
struct StateVector {
    int num_qubits = 0;
    std::vector<cplx> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
};

inline void check_qubit_count(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::invalid_argument(
            "qubit count " + std::to_string(num_qubits) +
            " out of range [1, 15]; dense simulation is capped at 15 qubits");
}

/// |+...+>: every amplitude 1/sqrt(2^N). The start state of every sweep and
/// ansatz in this library.
inline StateVector uniform_superposition(int num_qubits) {
    check_qubit_count(num_qubits);
    const std::size_t dim = std::size_t{1} << num_qubits;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    StateVector state;
    state.num_qubits = num_qubits;
    state.amplitudes.assign(dim, cplx{amp, 0.0});
    return state;
}

inline double norm_squared(const StateVector& state) {
    double total = 0.0;
    for (const cplx& a : state.amplitudes) total += std::norm(a);
    return total;
}

/// amplitude_z *= exp(-i * gamma * energies[z]). This is exp(-i*gamma*H) for
/// any H diagonal in the computational basis; norm is untouched.
inline void apply_diagonal_phase(StateVector& state,
                                 std::span<const double> energies,
                                 double gamma) {
    if (energies.size() != state.amplitudes.size())
        throw std::invalid_argument(
            "energy table length " + std::to_string(energies.size()) +
            " does not match state dimension " +
            std::to_string(state.amplitudes.size()));
    for (std::size_t z = 0; z < energies.size(); ++z)
        state.amplitudes[z] *= std::polar(1.0, -gamma * energies[z]);
}

/// Applies exp(-i*beta*sigma_x) on every qubit, as an in-place pairwise mix
/// over index pairs differing in one bit. Equal to exp(-i*beta*H_B) because
/// the single-qubit terms commute.
inline void apply_x_rotations(StateVector& state, double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    const cplx minus_i_s{0.0, -s};
    const std::size_t dim = state.amplitudes.size();
    for (int k = 0; k < state.num_qubits; ++k) {
        const std::size_t stride = dim >> (k + 1);  // qubit 1 is the MSB
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t lo = base; lo < base + stride; ++lo) {
                const cplx a = state.amplitudes[lo];
                const cplx b = state.amplitudes[lo + stride];
                state.amplitudes[lo] = c * a + minus_i_s * b;
                state.amplitudes[lo + stride] = minus_i_s * a + c * b;
            }
        }
    }
}

/// <state| diag(energies) |state> = sum_z |amp_z|^2 energies[z]. Exact; no
/// shot noise enters here.
inline double expectation_diagonal(const StateVector& state,
                                   std::span<const double> energies) {
    if (energies.size() != state.amplitudes.size())
        throw std::invalid_argument(
            "energy table length " + std::to_string(energies.size()) +
            " does not match state dimension " +
            std::to_string(state.amplitudes.size()));
    double value = 0.0;
    for (std::size_t z = 0; z < energies.size(); ++z)
        value += std::norm(state.amplitudes[z]) * energies[z];
    return value;
}

/// Renders a basis index as the bitstring z_1...z_N (MSB first).
inline std::string bitstring_of_index(std::uint64_t index, int num_qubits) {
    std::string bits(static_cast<std::size_t>(num_qubits), '0');
    for (int k = 0; k < num_qubits; ++k)
        if (index & (std::uint64_t{1} << (num_qubits - 1 - k))) bits[k] = '1';
    return bits;
}

/// Simulated projective measurement: draws `shots` basis states from the
/// |amplitude|^2 law by inverse-CDF sampling. Deterministic for a given seed.
inline std::map<std::string, std::uint64_t> sample_bitstrings(
    const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("shot count must be >= 1");
    std::vector<double> cumulative(state.amplitudes.size());
    double running = 0.0;
    for (std::size_t z = 0; z < state.amplitudes.size(); ++z) {
        running += std::norm(state.amplitudes[z]);
        cumulative[z] = running;
    }
    cumulative.back() = running;  // guard the top bin against rounding

    Rng rng(seed);
    std::vector<std::uint64_t> counts(state.amplitudes.size(), 0);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = rng.uniform() * running;
        const auto it =
            std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t z = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                     static_cast<std::ptrdiff_t>(
                                         cumulative.size()) - 1));
        ++counts[z];
    }

    std::map<std::string, std::uint64_t> histogram;
    for (std::size_t z = 0; z < counts.size(); ++z)
        if (counts[z] > 0)
            histogram[bitstring_of_index(z, state.num_qubits)] = counts[z];
    return histogram;
}

/// |<a|b>|^2. Global phase drops out, so this is the right state-equality
/// metric everywhere.
inline double fidelity(const StateVector& a, const StateVector& b) {
    if (a.amplitudes.size() != b.amplitudes.size())
        throw std::invalid_argument("fidelity of states with different size");
    cplx overlap{0.0, 0.0};
    for (std::size_t z = 0; z < a.amplitudes.size(); ++z)
        overlap += std::conj(a.amplitudes[z]) * b.amplitudes[z];
    return std::norm(overlap);
}

}  // namespace qmld
