// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qmld/ising.hpp"
#include "qmld/optimize.hpp"
#include "qmld/qaoa.hpp"
#include "qmld/rng.hpp"
#include "qmld/statevector.hpp"

namespace qmld {

enum class DetectorKind { cml, mmse, qml };

inline std::string detector_name(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::cml: return "cml";
        case DetectorKind::mmse: return "mmse";
        case DetectorKind::qml: return "qml";
    }
    throw std::invalid_argument("unknown detector kind");
}

/// Exhaustive maximum-likelihood detection: argmin of ||y - Hs||^2 over all
/// 2^(M_t) symbol vectors. Ties resolve to the lowest basis index.
inline SpinAssignment detect_cml(const ChannelInstance& instance) {
    instance.validate();
    const int n = instance.num_transmit();
    if (n > 20)
        throw std::invalid_argument(
            "exhaustive detection is capped at 20 transmit antennas");

    std::uint64_t best_index = 0;
    double best_objective = 0.0;
    std::vector<int> symbols(static_cast<std::size_t>(n));
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        for (int k = 0; k < n; ++k)
            symbols[static_cast<std::size_t>(k)] = detail::spin_at(z, n, k);
        const double objective = classical_objective(instance, symbols);
        if (z == 0 || objective < best_objective) {
            best_objective = objective;
            best_index = z;
        }
    }
    return symbols_of_index(best_index, n);
}

namespace detail {
/// Solves the SPD system G x = rhs in place via Cholesky. G is row-major.
inline std::vector<double> solve_spd(std::vector<double> g,
                                     std::vector<double> rhs, int n) {
    for (int j = 0; j < n; ++j) {
        double diag = g[static_cast<std::size_t>(j) * n + j];
        for (int k = 0; k < j; ++k) {
            const double l = g[static_cast<std::size_t>(j) * n + k];
            diag -= l * l;
        }
        if (diag <= 0.0)
            throw std::runtime_error("linear detector system not positive definite");
        diag = std::sqrt(diag);
        g[static_cast<std::size_t>(j) * n + j] = diag;
        for (int i = j + 1; i < n; ++i) {
            double value = g[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                value -= g[static_cast<std::size_t>(i) * n + k] *
                         g[static_cast<std::size_t>(j) * n + k];
            g[static_cast<std::size_t>(i) * n + j] = value / diag;
        }
    }
    for (int i = 0; i < n; ++i) {  // forward: L z = rhs
        double value = rhs[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k)
            value -= g[static_cast<std::size_t>(i) * n + k] *
                     rhs[static_cast<std::size_t>(k)];
        rhs[static_cast<std::size_t>(i)] =
            value / g[static_cast<std::size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {  // backward: L^T x = z
        double value = rhs[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k)
            value -= g[static_cast<std::size_t>(k) * n + i] *
                     rhs[static_cast<std::size_t>(k)];
        rhs[static_cast<std::size_t>(i)] =
            value / g[static_cast<std::size_t>(i) * n + i];
    }
    return rhs;
}
}  // namespace detail

/// Linear MMSE detection: s = sign((H^T H + sigma^2 I)^(-1) H^T y), with
/// sign(0) mapped to +1. The regularizer uses the instance's own noise power.
inline SpinAssignment detect_mmse(const ChannelInstance& instance) {
    instance.validate();
    const int n = instance.num_transmit();
    const int m = instance.num_receive();

    std::vector<double> gram(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            double value = 0.0;
            for (int i = 0; i < m; ++i)
                value += instance.channel[i][k] * instance.channel[i][l];
            gram[static_cast<std::size_t>(k) * n + l] = value;
        }
        gram[static_cast<std::size_t>(k) * n + k] += instance.noise_variance;
        for (int i = 0; i < m; ++i)
            rhs[static_cast<std::size_t>(k)] +=
                instance.channel[i][k] * instance.received[i];
    }

    const std::vector<double> estimate = detail::solve_spd(
        std::move(gram), std::move(rhs), n);
    SpinAssignment assignment;
    assignment.symbols.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        assignment.symbols[static_cast<std::size_t>(k)] =
            (estimate[static_cast<std::size_t>(k)] < 0.0) ? -1 : +1;
    return assignment;
}

/// QAOA-based detection: optimize the level-p angles on the simplified
/// model, sample the tuned ansatz, and return the sampled bitstring with the
/// lowest full-form energy (classical post-selection over the shots). The
/// output is always a string that was actually measured.
inline SpinAssignment detect_qml(const ChannelInstance& instance, int level,
                                 const OptimizerConfig& optimizer,
                                 std::uint64_t shots, std::uint64_t seed) {
    instance.validate();
    if (shots == 0) throw std::invalid_argument("shot count must be >= 1");

    const IsingModel simplified = encode_mimo(instance, IsingForm::simplified);
    const IsingModel full = encode_mimo(instance, IsingForm::full);

    const OptimizationResult tuned = minimize_fp(simplified, level, optimizer);
    const StateVector ansatz = prepare_ansatz(simplified, tuned.best_params);
    const auto histogram = sample_bitstrings(ansatz, shots, seed);

    bool first = true;
    std::string best_bits;
    double best_energy = 0.0;
    for (const auto& [bits, count] : histogram) {
        const double e = energy(full, bits);
        if (first || e < best_energy) {  // map order = ascending index
            first = false;
            best_energy = e;
            best_bits = bits;
        }
    }

    SpinAssignment assignment;
    assignment.symbols.reserve(best_bits.size());
    for (char c : best_bits)
        assignment.symbols.push_back(spin_of_bit(c - '0'));
    return assignment;
}

/// Monte-Carlo campaign configuration. The per-antenna SNR convention: H and
/// s are unit power, the noise variance is sigma^2 = M_t * 10^(-SNR_dB/10),
/// so E||Hs||^2 / (M_r * sigma^2) = 10^(SNR_dB/10).
struct TrialConfig {
    int system_size = 2;  // N = M_t = M_r
    std::vector<double> snr_db_list;
    int trials_per_snr = 1000;
    int qaoa_level = 1;
    std::uint64_t shots = 1024;
    OptimizerConfig optimizer = OptimizerConfig::defaults_for(1);
    std::uint64_t master_seed = 1;

    void validate() const {
        if (system_size < 1)
            throw std::invalid_argument("system_size must be >= 1");
        if (snr_db_list.empty())
            throw std::invalid_argument("snr_db_list must be non-empty");
        if (trials_per_snr < 1)
            throw std::invalid_argument("trials_per_snr must be >= 1");
        if (qaoa_level < 1) throw std::invalid_argument("qaoa_level must be >= 1");
        if (shots == 0) throw std::invalid_argument("shots must be >= 1");
        optimizer.validate();
    }
};

struct BerRow {
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::map<DetectorKind, std::uint64_t> bit_errors;
    std::map<DetectorKind, double> ber;
};

struct BerReport {
    TrialConfig config;
    std::vector<BerRow> rows;
};

namespace detail {
inline constexpr std::uint64_t kQmlSamplingSalt = 0x9d2c5680d3a54afbULL;

/// Draws one trial: H entries i.i.d. standard normal (row-major), then the
/// +-1 symbols, then the noise at the trial's sigma. The draw order is part
/// of the reproducibility contract.
inline ChannelInstance generate_trial(int n, double sigma_squared, Rng& rng) {
    ChannelInstance instance;
    instance.channel.assign(static_cast<std::size_t>(n),
                            std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) instance.channel[i][j] = rng.normal();

    std::vector<int> symbols(static_cast<std::size_t>(n));
    for (int& s : symbols) s = rng.pm_one();

    instance.noise_variance = sigma_squared;
    instance.received.assign(static_cast<std::size_t>(n), 0.0);
    const double sigma = std::sqrt(sigma_squared);
    for (int i = 0; i < n; ++i) {
        double value = 0.0;
        for (int j = 0; j < n; ++j)
            value += instance.channel[i][j] * symbols[static_cast<std::size_t>(j)];
        instance.received[static_cast<std::size_t>(i)] = value + sigma * rng.normal();
    }
    instance.true_symbols = std::move(symbols);
    return instance;
}

inline std::uint64_t count_bit_errors(const SpinAssignment& detected,
                                      const std::vector<int>& truth) {
    std::uint64_t errors = 0;
    for (std::size_t k = 0; k < truth.size(); ++k)
        if (detected.symbols[k] != truth[k]) ++errors;
    return errors;
}
}  // namespace detail

/// Runs the BER campaign. Trials are independent; each derives its own RNG
/// stream from (master_seed, snr_index, trial_index), so results do not
/// depend on the execution schedule. `threads` = 0 picks the hardware count.
inline BerReport run_ber(const TrialConfig& config,
                         const std::set<DetectorKind>& detectors,
                         unsigned threads = 0) {
    config.validate();
    if (detectors.empty())
        throw std::invalid_argument("at least one detector must be selected");

    const int n = config.system_size;
    unsigned workers = threads ? threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers,
                                 static_cast<unsigned>(config.trials_per_snr));

    BerReport report;
    report.config = config;

    for (std::size_t snr_index = 0; snr_index < config.snr_db_list.size();
         ++snr_index) {
        const double snr_db = config.snr_db_list[snr_index];
        const double sigma_squared = n * std::pow(10.0, -snr_db / 10.0);

        auto run_trial = [&](std::uint64_t trial_index,
                             std::map<DetectorKind, std::uint64_t>& errors) {
            const std::uint64_t trial_seed = derive_trial_seed(
                config.master_seed, snr_index, trial_index);
            Rng rng(trial_seed);
            const ChannelInstance instance =
                detail::generate_trial(n, sigma_squared, rng);
            const std::vector<int>& truth = *instance.true_symbols;

            for (DetectorKind kind : detectors) {
                SpinAssignment detected;
                switch (kind) {
                    case DetectorKind::cml:
                        detected = detect_cml(instance);
                        break;
                    case DetectorKind::mmse:
                        detected = detect_mmse(instance);
                        break;
                    case DetectorKind::qml:
                        detected = detect_qml(
                            instance, config.qaoa_level, config.optimizer,
                            config.shots,
                            splitmix64(trial_seed ^ detail::kQmlSamplingSalt));
                        break;
                }
                errors[kind] += detail::count_bit_errors(detected, truth);
            }
        };

        std::vector<std::map<DetectorKind, std::uint64_t>> partial(workers);
        for (auto& bucket : partial)
            for (DetectorKind kind : detectors) bucket[kind] = 0;

        if (workers <= 1) {
            for (int t = 0; t < config.trials_per_snr; ++t)
                run_trial(static_cast<std::uint64_t>(t), partial[0]);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&, w]() {
                    for (int t = static_cast<int>(w); t < config.trials_per_snr;
                         t += static_cast<int>(workers))
                        run_trial(static_cast<std::uint64_t>(t), partial[w]);
                });
            for (auto& t : pool) t.join();
        }

        BerRow row;
        row.snr_db = snr_db;
        row.trials = static_cast<std::uint64_t>(config.trials_per_snr);
        const double total_bits =
            static_cast<double>(config.trials_per_snr) * n;
        for (DetectorKind kind : detectors) {
            std::uint64_t errors = 0;
            for (const auto& bucket : partial) errors += bucket.at(kind);
            row.bit_errors[kind] = errors;
            row.ber[kind] = static_cast<double>(errors) / total_bits;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace qmld
