// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end walkthrough on a one-antenna instance: encode, inspect the
// interpolation gap, sweep the schedule, tune the QAOA angles, and detect.

#include <iostream>

#include "qmld/adiabatic.hpp"
#include "qmld/detect.hpp"
#include "qmld/optimize.hpp"
#include "qmld/qaoa.hpp"

int main() {
    // y = h*s + n with h = 1.2416, s = +1, n = 0.3323
    qmld::ChannelInstance instance;
    instance.channel = {{1.2416}};
    instance.received = {1.5739};
    instance.noise_variance = 1.0;
    instance.true_symbols = std::vector<int>{1};

    const qmld::IsingModel full = qmld::encode_mimo(instance, qmld::IsingForm::full);
    const qmld::IsingModel simplified =
        qmld::encode_mimo(instance, qmld::IsingForm::simplified);
    std::cout << "field b = " << simplified.fields[0]
              << ", offset (full) = " << full.offset << "\n";

    const qmld::SpectrumTrace trace = qmld::spectrum_trace(full, 201);
    std::cout << "minimum gap " << trace.min_gap << " at tau = "
              << trace.gap_location << " (runtime scale "
              << qmld::runtime_bound(trace, 1.0) << ")\n";

    const qmld::EvolutionResult sweep = qmld::trotter_evolve(full, 50.0, 500, 2);
    std::cout << "adiabatic sweep T=50: ground overlap "
              << sweep.ground_overlap << "\n";

    const qmld::OptimizationResult tuned = qmld::minimize_fp(
        simplified, 1, qmld::OptimizerConfig::defaults_for(1));
    std::cout << "level-1 optimum F1 = " << tuned.best_value
              << " (ground energy " << -std::abs(simplified.fields[0]) << ")\n";

    const qmld::SpinAssignment detected = qmld::detect_qml(
        instance, 1, qmld::OptimizerConfig::defaults_for(1), 64, 7);
    std::cout << "detected symbol: " << detected.symbols[0] << "\n";
    return 0;
}
