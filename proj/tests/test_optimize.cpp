// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qmld/ising.hpp"
#include "qmld/optimize.hpp"

using namespace qmld;
using Catch::Approx;

namespace {
IsingModel single_field_model(double b) {
    IsingModel model;
    model.num_spins = 1;
    model.fields = {b};
    model.form = IsingForm::simplified;
    return model;
}

IsingModel random_model(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ChannelInstance instance;
    instance.channel.assign(n, std::vector<double>(n));
    for (auto& row : instance.channel)
        for (auto& h : row) h = gauss(rng);
    instance.received.resize(n);
    for (auto& y : instance.received) y = gauss(rng);
    instance.noise_variance = 1.0;
    return encode_mimo(instance, IsingForm::simplified);
}
}  // namespace

TEST_CASE("seed grid: centroid first, 3x3 lattice at nine starts") {
    const auto single = grid_seed_points(1, 1);
    REQUIRE(single.size() == 1);
    REQUIRE(single[0].gammas[0] == Approx(std::numbers::pi / 2.0));
    REQUIRE(single[0].betas[0] == Approx(std::numbers::pi / 2.0));

    const auto nine = grid_seed_points(1, 9);
    REQUIRE(nine.size() == 9);
    REQUIRE(nine[0].gammas[0] == Approx(std::numbers::pi / 2.0));
    const std::vector<double> levels{std::numbers::pi / 6.0,
                                     std::numbers::pi / 2.0,
                                     5.0 * std::numbers::pi / 6.0};
    std::set<std::pair<int, int>> seen;
    for (const auto& params : nine) {
        int gi = -1, bi = -1;
        for (int i = 0; i < 3; ++i) {
            if (std::abs(params.gammas[0] - levels[i]) < 1e-12) gi = i;
            if (std::abs(params.betas[0] - levels[i]) < 1e-12) bi = i;
        }
        REQUIRE(gi >= 0);
        REQUIRE(bi >= 0);
        seen.insert({gi, bi});
    }
    REQUIRE(seen.size() == 9);  // all lattice cells hit exactly once
}

TEST_CASE("seed grid is deterministic and prefix-stable") {
    const auto a = grid_seed_points(2, 7);
    const auto b = grid_seed_points(2, 7);
    const auto longer = grid_seed_points(2, 25);
    REQUIRE(a.size() == 7);
    REQUIRE(longer.size() == 25);
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].gammas == b[i].gammas);
        REQUIRE(a[i].betas == b[i].betas);
        REQUIRE(a[i].gammas == longer[i].gammas);
        REQUIRE(a[i].betas == longer[i].betas);
    }
}

TEST_CASE("level-1 single-spin optimum reaches the ground energy") {
    const IsingModel model = single_field_model(1.0);
    const OptimizationResult result =
        minimize_fp(model, 1, OptimizerConfig::defaults_for(1));
    REQUIRE(result.best_value == Approx(-1.0).margin(1e-6));
    // at the optimum sin(2 beta) * sin(2 gamma) = -1
    const double product = std::sin(2.0 * result.best_params.betas[0]) *
                           std::sin(2.0 * result.best_params.gammas[0]);
    REQUIRE(product == Approx(-1.0).margin(1e-4));
}

TEST_CASE("all-zero model optimizes to zero") {
    IsingModel model;
    model.num_spins = 2;
    model.fields = {0.0, 0.0};
    model.couplings[{0, 1}] = 0.0;
    model.form = IsingForm::simplified;
    const OptimizationResult result =
        minimize_fp(model, 1, OptimizerConfig::defaults_for(1));
    REQUIRE(result.best_value == Approx(0.0).margin(1e-12));
}

TEST_CASE("optimum never beats the diagonal minimum") {
    std::mt19937_64 rng(71);
    for (int n = 1; n <= 4; ++n) {
        const IsingModel model = random_model(n, rng);
        const std::vector<double> table = diagonal(model);
        const double floor_energy =
            *std::min_element(table.begin(), table.end());
        const OptimizationResult result =
            minimize_fp(model, 1, OptimizerConfig::defaults_for(1));
        REQUIRE(result.best_value >= floor_energy - 1e-9);
        REQUIRE(result.best_value <=
                *std::min_element(result.start_values.begin(),
                                  result.start_values.end()) +
                    1e-12);
    }
}

TEST_CASE("accepted values are non-increasing within each start") {
    std::mt19937_64 rng(72);
    const IsingModel model = random_model(3, rng);
    const OptimizerConfig config = OptimizerConfig::defaults_for(1);
    const OptimizationResult result = minimize_fp(model, 1, config);
    REQUIRE(!result.trace.empty());

    // the trace concatenates per-start improvement runs; values may only
    // rise where a new multistart begins
    int rises = 0;
    for (std::size_t i = 1; i < result.trace.size(); ++i)
        if (result.trace[i].second > result.trace[i - 1].second) ++rises;
    REQUIRE(rises <= config.multistarts - 1);
}

TEST_CASE("more starts never hurt") {
    std::mt19937_64 rng(73);
    const IsingModel model = random_model(3, rng);
    OptimizerConfig config = OptimizerConfig::defaults_for(1);
    config.multistarts = 4;
    const double with_four = minimize_fp(model, 1, config).best_value;
    config.multistarts = 5;
    const double with_five = minimize_fp(model, 1, config).best_value;
    REQUIRE(with_five <= with_four + 1e-15);
}

TEST_CASE("optimization is bit-for-bit deterministic") {
    std::mt19937_64 rng(74);
    const IsingModel model = random_model(3, rng);
    const OptimizerConfig config = OptimizerConfig::defaults_for(1);
    const OptimizationResult a = minimize_fp(model, 1, config);
    const OptimizationResult b = minimize_fp(model, 1, config);
    REQUIRE(a.best_value == b.best_value);
    REQUIRE(a.best_params.gammas == b.best_params.gammas);
    REQUIRE(a.best_params.betas == b.best_params.betas);
    REQUIRE(a.evaluations == b.evaluations);
    REQUIRE(a.start_values == b.start_values);
}

TEST_CASE("config validation") {
    const IsingModel model = single_field_model(1.0);
    OptimizerConfig config = OptimizerConfig::defaults_for(1);
    config.multistarts = 0;
    REQUIRE_THROWS_AS(minimize_fp(model, 1, config), std::invalid_argument);
    config = OptimizerConfig::defaults_for(1);
    config.value_tolerance = 0.0;
    REQUIRE_THROWS_AS(minimize_fp(model, 1, config), std::invalid_argument);
    config = OptimizerConfig::defaults_for(1);
    REQUIRE_THROWS_AS(minimize_fp(model, 0, config), std::invalid_argument);
}
