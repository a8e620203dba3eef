// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0
//
// qmld: command-line front end for the detection toolkit. Every subcommand
// is deterministic given its flags; all randomness flows from --seed. Data
// goes to files or standard output, diagnostics go to the error stream.
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qmld/adiabatic.hpp"
#include "qmld/detect.hpp"
#include "qmld/io.hpp"
#include "qmld/optimize.hpp"
#include "qmld/qaoa.hpp"

namespace {

qmld::ChannelInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qmld::ParseError("cannot open instance file: " + path);
    nlohmann::json record;
    try {
        in >> record;
    } catch (const nlohmann::json::parse_error& error) {
        throw qmld::ParseError("instance file is not valid JSON: " +
                               std::string(error.what()));
    }
    return qmld::parse_channel_instance(record);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

void emit(const std::string& output_path, const std::string& text) {
    if (output_path.empty())
        std::cout << text;
    else
        write_text(output_path, text);
}

std::vector<double> parse_snr_sweep(const std::string& sweep) {
    std::vector<double> values;
    const auto first_colon = sweep.find(':');
    if (first_colon == std::string::npos) {
        values.push_back(std::stod(sweep));
        return values;
    }
    const auto second_colon = sweep.find(':', first_colon + 1);
    if (second_colon == std::string::npos)
        throw qmld::ParseError("SNR sweep must be 'a:b:step' or a single value");
    const double start = std::stod(sweep.substr(0, first_colon));
    const double stop =
        std::stod(sweep.substr(first_colon + 1, second_colon - first_colon - 1));
    const double step = std::stod(sweep.substr(second_colon + 1));
    if (step <= 0.0) throw qmld::ParseError("SNR sweep step must be positive");
    // inclusive of both ends whenever the step divides the range
    for (double v = start; v <= stop + 1e-9; v += step) values.push_back(v);
    if (values.empty()) throw qmld::ParseError("SNR sweep is empty");
    return values;
}

std::set<qmld::DetectorKind> parse_detectors(const std::string& list) {
    std::set<qmld::DetectorKind> detectors;
    std::stringstream stream(list);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token == "cml")
            detectors.insert(qmld::DetectorKind::cml);
        else if (token == "mmse")
            detectors.insert(qmld::DetectorKind::mmse);
        else if (token == "qml")
            detectors.insert(qmld::DetectorKind::qml);
        else
            throw qmld::ParseError("unknown detector '" + token +
                                   "' (expected cml, mmse or qml)");
    }
    if (detectors.empty())
        throw qmld::ParseError("detector list must not be empty");
    return detectors;
}

std::string metadata_path_for(const std::string& csv_path) {
    const std::string suffix = ".csv";
    if (csv_path.size() > suffix.size() &&
        csv_path.compare(csv_path.size() - suffix.size(), suffix.size(),
                         suffix) == 0)
        return csv_path.substr(0, csv_path.size() - suffix.size()) +
               ".meta.json";
    return csv_path + ".meta.json";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ising-encoded maximum-likelihood detection toolkit"};
    app.require_subcommand(1);

    // encode
    auto* encode_cmd =
        app.add_subcommand("encode", "Encode an instance into its Ising model");
    std::string encode_input, encode_output;
    encode_cmd->add_option("--input,-i", encode_input, "instance JSON file")
        ->required();
    encode_cmd->add_option("--output,-o", encode_output,
                           "output JSON file (default: stdout)");

    // spectrum
    auto* spectrum_cmd = app.add_subcommand(
        "spectrum", "Eigenvalue trace of the interpolated Hamiltonian");
    std::string spectrum_input, spectrum_output;
    int spectrum_grid = 201;
    spectrum_cmd->add_option("--input,-i", spectrum_input, "instance JSON file")
        ->required();
    spectrum_cmd->add_option("--output,-o", spectrum_output, "CSV output file")
        ->required();
    spectrum_cmd->add_option("--grid", spectrum_grid, "number of tau points")
        ->check(CLI::Range(2, 100000));

    // trotter
    auto* trotter_cmd = app.add_subcommand(
        "trotter", "Trotterized adiabatic sweep and ground-state overlap");
    std::string trotter_input, trotter_output;
    double trotter_time = 50.0;
    int trotter_slices = 500, trotter_substeps = 2;
    trotter_cmd->add_option("--input,-i", trotter_input, "instance JSON file")
        ->required();
    trotter_cmd->add_option("--output,-o", trotter_output,
                            "output JSON file (default: stdout)");
    trotter_cmd->add_option("--time", trotter_time, "total evolution time");
    trotter_cmd->add_option("--slices", trotter_slices, "schedule slices")
        ->check(CLI::PositiveNumber);
    trotter_cmd->add_option("--substeps", trotter_substeps,
                            "Trotter substeps per slice")
        ->check(CLI::PositiveNumber);

    // landscape
    auto* landscape_cmd = app.add_subcommand(
        "landscape", "Level-1 expectation surface over [0,pi]^2");
    std::string landscape_input, landscape_output;
    int landscape_grid = 50;
    landscape_cmd->add_option("--input,-i", landscape_input, "instance JSON file")
        ->required();
    landscape_cmd->add_option("--output,-o", landscape_output, "CSV output file")
        ->required();
    landscape_cmd->add_option("--grid", landscape_grid, "points per axis")
        ->check(CLI::Range(2, 10000));

    // optimize
    auto* optimize_cmd =
        app.add_subcommand("optimize", "Tune the QAOA angles for an instance");
    std::string optimize_input, optimize_output;
    int optimize_level = 1, optimize_starts = 0;
    std::uint64_t optimize_seed = 1;
    optimize_cmd->add_option("--input,-i", optimize_input, "instance JSON file")
        ->required();
    optimize_cmd->add_option("--output,-o", optimize_output,
                             "output JSON file (default: stdout)");
    optimize_cmd->add_option("--level", optimize_level, "QAOA level p")
        ->check(CLI::PositiveNumber);
    optimize_cmd->add_option("--starts", optimize_starts,
                             "multistart count (default: level-dependent)");
    optimize_cmd->add_option("--seed", optimize_seed, "RNG seed");

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "Run one detector");
    std::string detect_input, detect_output, detect_kind;
    int detect_level = 0, detect_starts = 0;
    std::uint64_t detect_shots = 1024, detect_seed = 1;
    detect_cmd->add_option("--input,-i", detect_input, "instance JSON file")
        ->required();
    detect_cmd->add_option("--output,-o", detect_output,
                           "output JSON file (default: stdout)");
    detect_cmd
        ->add_option("--detector", detect_kind, "one of cml, mmse, qml")
        ->required()
        ->check(CLI::IsMember({"cml", "mmse", "qml"}));
    detect_cmd->add_option("--level", detect_level,
                           "QAOA level (qml; default: 1 for N<=2, 3 for N>=3)");
    detect_cmd->add_option("--shots", detect_shots, "measurement shots (qml)");
    detect_cmd->add_option("--starts", detect_starts, "multistarts (qml)");
    detect_cmd->add_option("--seed", detect_seed, "sampling seed (qml)");

    // ber
    auto* ber_cmd =
        app.add_subcommand("ber", "Monte-Carlo bit-error-rate campaign");
    std::string ber_output, ber_snr = "0:10:2", ber_detectors = "cml,mmse,qml";
    int ber_n = 2, ber_trials = 1000, ber_level = 0;
    std::uint64_t ber_shots = 1024, ber_seed = 1;
    unsigned ber_threads = 0;
    ber_cmd->add_option("--output,-o", ber_output, "CSV output file")->required();
    ber_cmd->add_option("--n", ber_n, "system size N = M_t = M_r")
        ->check(CLI::PositiveNumber);
    ber_cmd->add_option("--snr", ber_snr, "SNR sweep in dB, 'a:b:step'");
    ber_cmd->add_option("--trials", ber_trials, "trials per SNR point")
        ->check(CLI::PositiveNumber);
    ber_cmd->add_option("--detectors", ber_detectors,
                        "comma list from {cml,mmse,qml}");
    ber_cmd->add_option("--level", ber_level,
                        "QAOA level (default: 1 for N<=2, 3 for N>=3)");
    ber_cmd->add_option("--shots", ber_shots, "measurement shots (qml)");
    ber_cmd->add_option("--seed", ber_seed, "master seed");
    ber_cmd->add_option("--threads", ber_threads,
                        "worker threads (0 = hardware)");

    // complexity
    auto* complexity_cmd =
        app.add_subcommand("complexity", "Gate and memory budget report");
    std::string complexity_output;
    int complexity_n = 1, complexity_level = 1;
    complexity_cmd->add_option("--n", complexity_n, "qubit count")
        ->required()
        ->check(CLI::PositiveNumber);
    complexity_cmd->add_option("--level", complexity_level, "QAOA level p")
        ->check(CLI::PositiveNumber);
    complexity_cmd->add_option("--output,-o", complexity_output,
                               "output JSON file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);  // prints help, exits 0
    } catch (const CLI::ParseError& error) {
        std::cerr << error.what() << "\n";
        return 2;
    }

    try {
        if (*encode_cmd) {
            const qmld::ChannelInstance instance = load_instance(encode_input);
            nlohmann::json record;
            record["full"] = qmld::ising_model_to_json(
                qmld::encode_mimo(instance, qmld::IsingForm::full));
            record["simplified"] = qmld::ising_model_to_json(
                qmld::encode_mimo(instance, qmld::IsingForm::simplified));
            emit(encode_output, record.dump(2) + "\n");
        } else if (*spectrum_cmd) {
            const qmld::ChannelInstance instance = load_instance(spectrum_input);
            const qmld::IsingModel model =
                qmld::encode_mimo(instance, qmld::IsingForm::full);
            const qmld::SpectrumTrace trace =
                qmld::spectrum_trace(model, spectrum_grid);
            std::ostringstream csv;
            qmld::write_spectrum_csv(csv, trace);
            write_text(spectrum_output, csv.str());
            std::cout << "min_gap " << qmld::format_real(trace.min_gap)
                      << " at tau " << qmld::format_real(trace.gap_location)
                      << "\n";
        } else if (*trotter_cmd) {
            const qmld::ChannelInstance instance = load_instance(trotter_input);
            const qmld::IsingModel model =
                qmld::encode_mimo(instance, qmld::IsingForm::full);
            const qmld::EvolutionResult result = qmld::trotter_evolve(
                model, trotter_time, trotter_slices, trotter_substeps);
            nlohmann::json record;
            record["ground_overlap"] = result.ground_overlap;
            record["total_time"] = result.total_time;
            record["slices"] = result.slices;
            record["substeps"] = result.trotter_substeps;
            emit(trotter_output, record.dump(2) + "\n");
        } else if (*landscape_cmd) {
            const qmld::ChannelInstance instance = load_instance(landscape_input);
            const qmld::IsingModel model =
                qmld::encode_mimo(instance, qmld::IsingForm::simplified);
            std::vector<double> axis(static_cast<std::size_t>(landscape_grid));
            for (int i = 0; i < landscape_grid; ++i)
                axis[static_cast<std::size_t>(i)] =
                    std::numbers::pi * i / (landscape_grid - 1);
            const qmld::LandscapeGrid grid = qmld::landscape(model, axis, axis);
            std::ostringstream csv;
            qmld::write_landscape_csv(csv, grid);
            write_text(landscape_output, csv.str());
        } else if (*optimize_cmd) {
            const qmld::ChannelInstance instance = load_instance(optimize_input);
            const qmld::IsingModel model =
                qmld::encode_mimo(instance, qmld::IsingForm::simplified);
            qmld::OptimizerConfig config =
                qmld::OptimizerConfig::defaults_for(optimize_level);
            if (optimize_starts > 0) config.multistarts = optimize_starts;
            config.seed = optimize_seed;
            const qmld::OptimizationResult result =
                qmld::minimize_fp(model, optimize_level, config);
            nlohmann::json record;
            record["level"] = optimize_level;
            record["gammas"] = result.best_params.gammas;
            record["betas"] = result.best_params.betas;
            record["best_value"] = result.best_value;
            record["evaluations"] = result.evaluations;
            record["start_values"] = result.start_values;
            emit(optimize_output, record.dump(2) + "\n");
        } else if (*detect_cmd) {
            const qmld::ChannelInstance instance = load_instance(detect_input);
            qmld::SpinAssignment detected;
            if (detect_kind == "cml") {
                detected = qmld::detect_cml(instance);
            } else if (detect_kind == "mmse") {
                detected = qmld::detect_mmse(instance);
            } else {
                const int level = (detect_level > 0)
                                      ? detect_level
                                      : (instance.num_transmit() <= 2 ? 1 : 3);
                qmld::OptimizerConfig config =
                    qmld::OptimizerConfig::defaults_for(level);
                if (detect_starts > 0) config.multistarts = detect_starts;
                detected = qmld::detect_qml(instance, level, config,
                                            detect_shots, detect_seed);
            }
            emit(detect_output, nlohmann::json(detected.symbols).dump() + "\n");
        } else if (*ber_cmd) {
            qmld::TrialConfig config;
            config.system_size = ber_n;
            config.snr_db_list = parse_snr_sweep(ber_snr);
            config.trials_per_snr = ber_trials;
            config.qaoa_level = (ber_level > 0) ? ber_level : (ber_n <= 2 ? 1 : 3);
            config.shots = ber_shots;
            config.optimizer = qmld::OptimizerConfig::defaults_for(config.qaoa_level);
            config.master_seed = ber_seed;
            const std::set<qmld::DetectorKind> detectors =
                parse_detectors(ber_detectors);
            const qmld::BerReport report =
                qmld::run_ber(config, detectors, ber_threads);
            std::ostringstream csv;
            qmld::write_ber_csv(csv, report, detectors);
            write_text(ber_output, csv.str());
            write_text(metadata_path_for(ber_output),
                       qmld::ber_metadata_to_json(report, detectors).dump(2) +
                           "\n");
        } else if (*complexity_cmd) {
            const qmld::GateCount gates =
                qmld::gate_count(complexity_n, complexity_level);
            const qmld::MemoryEstimate memory =
                qmld::memory_estimate(complexity_n);
            nlohmann::json record;
            record["num_qubits"] = complexity_n;
            record["level"] = complexity_level;
            record["gates_per_level"] = gates.per_level;
            record["hadamard_gates"] = gates.hadamard;
            record["total_gates"] = gates.total;
            record["state_bytes"] = memory.state_bytes;
            record["dense_unitary_bytes"] = memory.dense_unitary_bytes;
            emit(complexity_output, record.dump(2) + "\n");
        }
    } catch (const qmld::ParseError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
