// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmld/ising.hpp"
#include "qmld/qaoa.hpp"

namespace qmld {

struct OptimizerConfig {
    int multistarts = 9;
    int max_evals_per_start = 200;
    double value_tolerance = 1e-8;
    double step_tolerance = 1e-9;
    std::uint64_t seed = 0;

    /// Level-dependent defaults: 9 starts for p = 1, 25 for deeper circuits,
    /// 200 * p evaluations per start.
    static OptimizerConfig defaults_for(int level) {
        OptimizerConfig config;
        config.multistarts = (level <= 1) ? 9 : 25;
        config.max_evals_per_start = 200 * std::max(level, 1);
        return config;
    }

    void validate() const {
        if (multistarts < 1)
            throw std::invalid_argument("multistarts must be >= 1");
        if (max_evals_per_start < 1)
            throw std::invalid_argument("max_evals_per_start must be >= 1");
        if (value_tolerance <= 0.0 || step_tolerance <= 0.0)
            throw std::invalid_argument("tolerances must be positive");
    }
};

struct OptimizationResult {
    QaoaParams best_params;
    double best_value = 0.0;
    std::uint64_t evaluations = 0;
    std::vector<double> start_values;  // F_p at each multistart's seed point
    std::vector<std::pair<QaoaParams, double>> trace;  // accepted improvements
};

/// Deterministic multistart seeds in [0, pi]^(2p): the centroid
/// (pi/2, ..., pi/2) first, then the lattice points of per-axis level sets
/// {(2i+1)*pi/(2*3^j) : i < 3^j} for j = 1, 2, ..., each shell in
/// lexicographic order, skipping points that already appeared in a coarser
/// shell. The sequence is prefix-stable: the first k points do not depend on
/// `starts`. For p = 1, starts = 9 this is exactly the 3x3 lattice over
/// {pi/6, pi/2, 5pi/6}.
inline std::vector<QaoaParams> grid_seed_points(int level, int starts) {
    if (level < 1) throw std::invalid_argument("level must be >= 1");
    if (starts < 1) throw std::invalid_argument("starts must be >= 1");

    const int dims = 2 * level;
    std::vector<std::vector<double>> points;
    points.reserve(static_cast<std::size_t>(starts));

    for (long long m = 1; static_cast<int>(points.size()) < starts; m *= 3) {
        std::vector<long long> odometer(static_cast<std::size_t>(dims), 0);
        while (true) {
            bool repeats_coarser = (m > 1);
            for (long long digit : odometer)
                if (digit % 3 != 1) { repeats_coarser = false; break; }
            if (!repeats_coarser) {
                std::vector<double> point(static_cast<std::size_t>(dims));
                for (int d = 0; d < dims; ++d)
                    point[static_cast<std::size_t>(d)] =
                        (2.0 * odometer[static_cast<std::size_t>(d)] + 1.0) *
                        std::numbers::pi / (2.0 * m);
                points.push_back(std::move(point));
                if (static_cast<int>(points.size()) == starts) break;
            }
            int d = dims - 1;
            while (d >= 0 && ++odometer[static_cast<std::size_t>(d)] == m) {
                odometer[static_cast<std::size_t>(d)] = 0;
                --d;
            }
            if (d < 0) break;
        }
    }

    std::vector<QaoaParams> seeds;
    seeds.reserve(points.size());
    for (auto& point : points) {
        std::vector<double> gammas(point.begin(), point.begin() + level);
        std::vector<double> betas(point.begin() + level, point.end());
        seeds.emplace_back(std::move(gammas), std::move(betas));
    }
    return seeds;
}

namespace detail {

struct NelderMeadResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    std::uint64_t evaluations = 0;
    std::vector<std::pair<std::vector<double>, double>> improvements;
};

/// Plain Nelder-Mead simplex descent with the standard reflection, expansion,
/// contraction and shrink coefficients. Fully deterministic. Stops on the
/// evaluation budget, on value spread below value_tolerance, or on simplex
/// diameter below step_tolerance.
template <typename Objective>
NelderMeadResult nelder_mead(Objective&& objective,
                             const std::vector<double>& start, int max_evals,
                             double value_tolerance, double step_tolerance,
                             double initial_step = 0.25) {
    const std::size_t n = start.size();
    NelderMeadResult result;

    std::vector<std::vector<double>> simplex;
    std::vector<double> values;
    simplex.reserve(n + 1);
    values.reserve(n + 1);

    auto evaluate = [&](const std::vector<double>& x) {
        ++result.evaluations;
        return objective(x);
    };

    simplex.push_back(start);
    values.push_back(evaluate(start));
    result.best_point = start;
    result.best_value = values[0];
    result.improvements.emplace_back(start, values[0]);

    for (std::size_t i = 0; i < n && result.evaluations <
                                         static_cast<std::uint64_t>(max_evals);
         ++i) {
        std::vector<double> vertex = start;
        vertex[i] += initial_step;
        simplex.push_back(vertex);
        values.push_back(evaluate(vertex));
    }

    auto record_best = [&](const std::vector<double>& x, double value) {
        if (value < result.best_value) {
            result.best_value = value;
            result.best_point = x;
            result.improvements.emplace_back(x, value);
        }
    };
    for (std::size_t i = 1; i < simplex.size(); ++i)
        record_best(simplex[i], values[i]);
    if (simplex.size() < n + 1) return result;  // budget gone during setup

    const double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

    while (result.evaluations < static_cast<std::uint64_t>(max_evals)) {
        std::vector<std::size_t> order(simplex.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return values[a] < values[b];
        });
        std::vector<std::vector<double>> sorted_simplex(simplex.size());
        std::vector<double> sorted_values(simplex.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            sorted_simplex[i] = std::move(simplex[order[i]]);
            sorted_values[i] = values[order[i]];
        }
        simplex = std::move(sorted_simplex);
        values = std::move(sorted_values);

        if (values.back() - values.front() <= value_tolerance) break;
        double diameter = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            for (std::size_t d = 0; d < n; ++d)
                diameter = std::max(diameter,
                                    std::abs(simplex[i][d] - simplex[0][d]));
        if (diameter <= step_tolerance) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coefficient) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d)
                x[d] = centroid[d] + coefficient * (simplex.back()[d] - centroid[d]);
            return x;
        };

        const std::vector<double> reflected = blend(-reflect);
        const double reflected_value = evaluate(reflected);
        record_best(reflected, reflected_value);

        if (reflected_value < values.front() &&
            result.evaluations < static_cast<std::uint64_t>(max_evals)) {
            const std::vector<double> expanded = blend(-reflect * expand);
            const double expanded_value = evaluate(expanded);
            record_best(expanded, expanded_value);
            if (expanded_value < reflected_value) {
                simplex.back() = expanded;
                values.back() = expanded_value;
            } else {
                simplex.back() = reflected;
                values.back() = reflected_value;
            }
            continue;
        }
        if (reflected_value < values[values.size() - 2]) {
            simplex.back() = reflected;
            values.back() = reflected_value;
            continue;
        }
        if (result.evaluations >= static_cast<std::uint64_t>(max_evals)) break;

        const bool outside = reflected_value < values.back();
        const std::vector<double> contracted =
            blend(outside ? -reflect * contract : contract);
        const double contracted_value = evaluate(contracted);
        record_best(contracted, contracted_value);
        if (contracted_value < std::min(reflected_value, values.back())) {
            simplex.back() = contracted;
            values.back() = contracted_value;
            continue;
        }

        for (std::size_t i = 1; i < simplex.size(); ++i) {
            if (result.evaluations >= static_cast<std::uint64_t>(max_evals))
                break;
            for (std::size_t d = 0; d < n; ++d)
                simplex[i][d] =
                    simplex[0][d] + shrink * (simplex[i][d] - simplex[0][d]);
            values[i] = evaluate(simplex[i]);
            record_best(simplex[i], values[i]);
        }
    }
    return result;
}

}  // namespace detail

/// Multistart derivative-free minimization of F_p over [0, pi]^(2p).
///
/// Each start runs a Nelder-Mead descent on the wrapped objective (gamma
/// mod 2*pi, beta mod pi, exactly the QaoaParams construction rule). Starts
/// come from grid_seed_points and run in order; ties between starts resolve
/// to the earliest. The whole procedure is deterministic. The multistart
/// loop ends early once the best value reaches the diagonal minimum within
/// value_tolerance, since no expectation can go lower.
inline OptimizationResult minimize_fp(const IsingModel& model, int level,
                                      const OptimizerConfig& config) {
    check_qubit_count(model.num_spins);
    config.validate();
    if (level < 1) throw std::invalid_argument("level must be >= 1");

    const std::vector<double> energies = diagonal(model);
    const double floor_energy =
        *std::min_element(energies.begin(), energies.end());
    double magnitude = 1.0;
    for (double e : energies) magnitude = std::max(magnitude, std::abs(e));
    const double certified = floor_energy + config.value_tolerance * magnitude;

    StateVector workspace;
    auto objective = [&](const std::vector<double>& x) {
        std::vector<double> gammas(static_cast<std::size_t>(level));
        std::vector<double> betas(static_cast<std::size_t>(level));
        for (int j = 0; j < level; ++j) {
            gammas[static_cast<std::size_t>(j)] = QaoaParams::wrap(
                x[static_cast<std::size_t>(j)], 2.0 * std::numbers::pi);
            betas[static_cast<std::size_t>(j)] = QaoaParams::wrap(
                x[static_cast<std::size_t>(level + j)], std::numbers::pi);
        }
        detail::prepare_ansatz_into(workspace, model, energies, gammas, betas);
        return expectation_diagonal(workspace, energies);
    };

    const std::vector<QaoaParams> seeds =
        grid_seed_points(level, config.multistarts);

    OptimizationResult result;
    bool have_best = false;
    for (const QaoaParams& seed : seeds) {
        std::vector<double> start;
        start.insert(start.end(), seed.gammas.begin(), seed.gammas.end());
        start.insert(start.end(), seed.betas.begin(), seed.betas.end());

        detail::NelderMeadResult local = detail::nelder_mead(
            objective, start, config.max_evals_per_start,
            config.value_tolerance, config.step_tolerance);

        result.evaluations += local.evaluations;
        result.start_values.push_back(local.improvements.front().second);
        for (const auto& [point, value] : local.improvements) {
            std::vector<double> gammas(point.begin(), point.begin() + level);
            std::vector<double> betas(point.begin() + level, point.end());
            result.trace.emplace_back(
                QaoaParams(std::move(gammas), std::move(betas)), value);
        }

        if (!have_best || local.best_value < result.best_value) {
            have_best = true;
            result.best_value = local.best_value;
            std::vector<double> gammas(local.best_point.begin(),
                                       local.best_point.begin() + level);
            std::vector<double> betas(local.best_point.begin() + level,
                                      local.best_point.end());
            result.best_params = QaoaParams(std::move(gammas), std::move(betas));
        }
        if (result.best_value <= certified) break;
    }
    return result;
}

}  // namespace qmld
