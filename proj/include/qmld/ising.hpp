// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmld/statevector.hpp"

namespace qmld {

/// One detection problem: real channel matrix H (rows = receive antennas,
/// columns = transmit antennas), received vector y, known noise power, and
/// optionally the transmitted symbols for error accounting.
struct ChannelInstance {
    std::vector<std::vector<double>> channel;  // M_r x M_t, row-major
    std::vector<double> received;              // length M_r
    double noise_variance = 1.0;
    std::optional<std::vector<int>> true_symbols;  // entries in {-1, +1}

    int num_receive() const { return static_cast<int>(channel.size()); }
    int num_transmit() const {
        return channel.empty() ? 0 : static_cast<int>(channel.front().size());
    }

    void validate() const {
        if (channel.empty() || channel.front().empty())
            throw std::invalid_argument("channel matrix must be non-empty");
        for (const auto& row : channel)
            if (row.size() != channel.front().size())
                throw std::invalid_argument("channel rows have unequal length");
        if (received.size() != channel.size())
            throw std::invalid_argument(
                "received vector length " + std::to_string(received.size()) +
                " does not match channel row count " +
                std::to_string(channel.size()));
        if (noise_variance <= 0.0)
            throw std::invalid_argument("noise_variance must be positive");
        if (true_symbols) {
            if (true_symbols->size() != channel.front().size())
                throw std::invalid_argument(
                    "true_symbols length does not match transmit count");
            for (int s : *true_symbols)
                if (s != -1 && s != 1)
                    throw std::invalid_argument(
                        "true_symbols entries must be -1 or +1");
        }
    }
};

/// Detected/transmitted symbol vector over {-1, +1}.
struct SpinAssignment {
    std::vector<int> symbols;
};

enum class IsingForm { full, simplified };

/// Diagonal problem Hamiltonian
///   sum_{l>k} J_{k,l} s_k s_l - sum_k h_k s_k + offset,  s_k in {-1,+1}.
///
/// The `full` form keeps the factor-2 weights and the constant offset, so its
/// diagonal equals the squared-distance objective ||y - Hs||^2 exactly. The
/// `simplified` form halves couplings and fields and drops the offset; it is
/// a positive affine rescaling of the full form, so both share the argmin.
struct IsingModel {
    int num_spins = 0;
    std::map<std::pair<int, int>, double> couplings;  // keys (k,l) with l > k
    std::vector<double> fields;                       // h_k, length num_spins
    double offset = 0.0;
    IsingForm form = IsingForm::full;
};

/// z in {0,1}  ->  s = 1 - 2z in {+1,-1}.
inline int spin_of_bit(int z) {
    if (z != 0 && z != 1)
        throw std::invalid_argument("bit must be 0 or 1, got " +
                                    std::to_string(z));
    return 1 - 2 * z;
}

/// s in {+1,-1}  ->  z = (1 - s) / 2 in {0,1}.
inline int bit_of_spin(int s) {
    if (s != -1 && s != 1)
        throw std::invalid_argument("spin must be -1 or +1, got " +
                                    std::to_string(s));
    return (1 - s) / 2;
}

/// ||y - Hs||^2, the detection objective.
inline double classical_objective(const ChannelInstance& instance,
                                  std::span<const int> symbols) {
    if (symbols.size() != static_cast<std::size_t>(instance.num_transmit()))
        throw std::invalid_argument(
            "symbol vector length " + std::to_string(symbols.size()) +
            " does not match transmit count " +
            std::to_string(instance.num_transmit()));
    double total = 0.0;
    for (int i = 0; i < instance.num_receive(); ++i) {
        double predicted = 0.0;
        for (int j = 0; j < instance.num_transmit(); ++j)
            predicted += instance.channel[i][j] * symbols[j];
        const double residual = instance.received[i] - predicted;
        total += residual * residual;
    }
    return total;
}

/// Builds the Ising model of one instance: A = H^T H, b = y^T H, c = y^T y.
/// Full form stores 2*A_{k,l}, 2*b_k and offset c + sum_k A_{k,k}; simplified
/// stores A_{k,l}, b_k and offset 0.
inline IsingModel encode_mimo(const ChannelInstance& instance, IsingForm form) {
    instance.validate();
    const int n = instance.num_transmit();
    const int m = instance.num_receive();

    IsingModel model;
    model.num_spins = n;
    model.form = form;
    model.fields.assign(static_cast<std::size_t>(n), 0.0);

    const double weight = (form == IsingForm::full) ? 2.0 : 1.0;

    double trace_a = 0.0;
    for (int k = 0; k < n; ++k) {
        double akk = 0.0;
        for (int i = 0; i < m; ++i) akk += instance.channel[i][k] * instance.channel[i][k];
        trace_a += akk;

        double bk = 0.0;
        for (int i = 0; i < m; ++i) bk += instance.received[i] * instance.channel[i][k];
        model.fields[k] = weight * bk;

        for (int l = k + 1; l < n; ++l) {
            double akl = 0.0;
            for (int i = 0; i < m; ++i)
                akl += instance.channel[i][k] * instance.channel[i][l];
            model.couplings[{k, l}] = weight * akl;
        }
    }

    if (form == IsingForm::full) {
        double c = 0.0;
        for (double y : instance.received) c += y * y;
        model.offset = c + trace_a;
    }
    return model;
}

/// Multi-user encoding: the per-user channel blocks are concatenated
/// column-wise into one effective channel (all blocks must share the row
/// count), then encoded like a single MIMO instance. K single-antenna users
/// need K spins; K users with N antennas each need N*K.
inline IsingModel encode_multiuser(
    const std::vector<std::vector<std::vector<double>>>& user_channels,
    const std::vector<double>& received, IsingForm form) {
    if (user_channels.empty())
        throw std::invalid_argument("multi-user encoding needs at least one user");

    ChannelInstance stacked;
    stacked.received = received;
    const std::size_t rows = user_channels.front().size();
    for (const auto& block : user_channels)
        if (block.size() != rows)
            throw std::invalid_argument(
                "user channel blocks have inconsistent row counts");

    stacked.channel.assign(rows, {});
    for (std::size_t i = 0; i < rows; ++i) {
        for (const auto& block : user_channels) {
            if (i == 0 && block.front().empty())
                throw std::invalid_argument("user channel block has no columns");
            if (block[i].size() != block.front().size())
                throw std::invalid_argument("user channel rows have unequal length");
            stacked.channel[i].insert(stacked.channel[i].end(),
                                      block[i].begin(), block[i].end());
        }
    }
    return encode_mimo(stacked, form);
}

namespace detail {
/// Spin of qubit k (0-based, MSB first) in basis index z.
inline int spin_at(std::uint64_t index, int num_spins, int k) {
    const int bit =
        static_cast<int>((index >> (num_spins - 1 - k)) & std::uint64_t{1});
    return 1 - 2 * bit;
}

inline double energy_of_index(const IsingModel& model, std::uint64_t index) {
    double value = model.offset;
    for (const auto& [pair, coupling] : model.couplings)
        value += coupling * spin_at(index, model.num_spins, pair.first) *
                 spin_at(index, model.num_spins, pair.second);
    for (int k = 0; k < model.num_spins; ++k)
        value -= model.fields[k] * spin_at(index, model.num_spins, k);
    return value;
}
}  // namespace detail

/// Energy of one bitstring "z_1...z_N" under the model's own weights.
inline double energy(const IsingModel& model, std::string_view bits) {
    if (bits.size() != static_cast<std::size_t>(model.num_spins))
        throw std::invalid_argument(
            "bitstring length " + std::to_string(bits.size()) +
            " does not match spin count " + std::to_string(model.num_spins));
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bitstring may contain only 0 and 1");
        index = (index << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return detail::energy_of_index(model, index);
}

/// The full 2^N energy table, indexed by the basis convention of StateVector.
inline std::vector<double> diagonal(const IsingModel& model) {
    check_qubit_count(model.num_spins);
    const std::uint64_t dim = std::uint64_t{1} << model.num_spins;
    std::vector<double> table(dim);
    for (std::uint64_t z = 0; z < dim; ++z)
        table[z] = detail::energy_of_index(model, z);
    return table;
}

/// Index of the smallest entry; ties broken by lowest index.
inline std::uint64_t argmin_index(std::span<const double> values) {
    std::uint64_t best = 0;
    for (std::uint64_t z = 1; z < values.size(); ++z)
        if (values[z] < values[best]) best = z;
    return best;
}

/// Symbols of the basis state at `index` via the bit->spin bijection.
inline SpinAssignment symbols_of_index(std::uint64_t index, int num_spins) {
    SpinAssignment assignment;
    assignment.symbols.resize(static_cast<std::size_t>(num_spins));
    for (int k = 0; k < num_spins; ++k)
        assignment.symbols[k] = detail::spin_at(index, num_spins, k);
    return assignment;
}

}  // namespace qmld
