// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qmld {

/// Mixes a 64-bit value through the SplitMix64 finalizer. Used both for
/// spreading user seeds and for deriving independent per-trial streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives the seed for one Monte-Carlo trial from the master seed and the
/// (snr_index, trial_index) pair: master XOR hash(snr_index, trial_index).
/// Distinct index pairs map to distinct streams.
inline std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                       std::uint64_t snr_index,
                                       std::uint64_t trial_index) {
    const std::uint64_t mixed = splitmix64((snr_index << 32) ^ trial_index);
    return master_seed ^ mixed;
}

/// Deterministic random stream. The engine is std::mt19937_64 (its output
/// sequence is fixed by the standard); uniform and normal variates are
/// produced by explicit bit manipulation and Box-Muller rather than the
/// implementation-defined standard distributions, so identical seeds give
/// identical draws on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal variate via Box-Muller; the spare is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform symbol from {-1, +1}.
    int pm_one() { return (engine_() >> 63) ? -1 : +1; }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qmld
