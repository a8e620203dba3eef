// Copyright (c) 2026 the qmld authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "qmld/adiabatic.hpp"
#include "qmld/detect.hpp"
#include "qmld/ising.hpp"
#include "qmld/qaoa.hpp"

namespace qmld {

/// Raised for malformed input records; the message names the offending field.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Formats a double with 15 significant digits, enough to round-trip any
/// value the CSV contracts care about, and stable for byte-identical output.
inline std::string format_real(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.15g", value);
    return buffer;
}

/// Parses the instance record:
///   {"channel": [[...], ...], "received": [...], "noise_variance": x,
///    "true_symbols": [...]}   (true_symbols optional)
inline ChannelInstance parse_channel_instance(const nlohmann::json& record) {
    if (!record.is_object())
        throw ParseError("instance record must be a JSON object");

    ChannelInstance instance;

    if (!record.contains("channel"))
        throw ParseError("missing field 'channel'");
    const auto& channel = record.at("channel");
    if (!channel.is_array() || channel.empty())
        throw ParseError("field 'channel' must be a non-empty array of rows");
    for (const auto& row : channel) {
        if (!row.is_array() || row.empty())
            throw ParseError("field 'channel' rows must be non-empty arrays");
        std::vector<double> values;
        for (const auto& cell : row) {
            if (!cell.is_number())
                throw ParseError("field 'channel' entries must be numbers");
            values.push_back(cell.get<double>());
        }
        instance.channel.push_back(std::move(values));
    }

    if (!record.contains("received"))
        throw ParseError("missing field 'received'");
    const auto& received = record.at("received");
    if (!received.is_array())
        throw ParseError("field 'received' must be an array of numbers");
    for (const auto& cell : received) {
        if (!cell.is_number())
            throw ParseError("field 'received' entries must be numbers");
        instance.received.push_back(cell.get<double>());
    }

    if (!record.contains("noise_variance"))
        throw ParseError("missing field 'noise_variance'");
    if (!record.at("noise_variance").is_number())
        throw ParseError("field 'noise_variance' must be a number");
    instance.noise_variance = record.at("noise_variance").get<double>();

    if (record.contains("true_symbols")) {
        const auto& symbols = record.at("true_symbols");
        if (!symbols.is_array())
            throw ParseError("field 'true_symbols' must be an array of +-1");
        std::vector<int> values;
        for (const auto& cell : symbols) {
            if (!cell.is_number_integer())
                throw ParseError("field 'true_symbols' entries must be -1 or 1");
            values.push_back(cell.get<int>());
        }
        instance.true_symbols = std::move(values);
    }

    try {
        instance.validate();
    } catch (const std::invalid_argument& error) {
        throw ParseError(error.what());
    }
    return instance;
}

inline nlohmann::json channel_instance_to_json(const ChannelInstance& instance) {
    nlohmann::json record;
    record["channel"] = instance.channel;
    record["received"] = instance.received;
    record["noise_variance"] = instance.noise_variance;
    if (instance.true_symbols) record["true_symbols"] = *instance.true_symbols;
    return record;
}

inline nlohmann::json ising_model_to_json(const IsingModel& model) {
    nlohmann::json record;
    record["num_spins"] = model.num_spins;
    record["form"] = (model.form == IsingForm::full) ? "full" : "simplified";
    nlohmann::json couplings = nlohmann::json::array();
    for (const auto& [pair, value] : model.couplings)
        couplings.push_back({{"k", pair.first + 1},
                             {"l", pair.second + 1},
                             {"value", value}});
    record["couplings"] = couplings;
    record["fields"] = model.fields;
    record["offset"] = model.offset;
    return record;
}

/// Spectrum CSV: header tau,lambda_0,...,lambda_{d-1}, one row per grid point.
inline void write_spectrum_csv(std::ostream& out, const SpectrumTrace& trace) {
    const std::size_t dim = trace.eigenvalues.front().size();
    out << "tau";
    for (std::size_t i = 0; i < dim; ++i) out << ",lambda_" << i;
    out << "\n";
    for (std::size_t row = 0; row < trace.tau_grid.size(); ++row) {
        out << format_real(trace.tau_grid[row]);
        for (double value : trace.eigenvalues[row])
            out << "," << format_real(value);
        out << "\n";
    }
}

/// Landscape CSV: one row per grid cell.
inline void write_landscape_csv(std::ostream& out, const LandscapeGrid& grid) {
    out << "gamma,beta,F1\n";
    for (std::size_t i = 0; i < grid.gamma_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.beta_axis.size(); ++j)
            out << format_real(grid.gamma_axis[i]) << ","
                << format_real(grid.beta_axis[j]) << ","
                << format_real(grid.values[i][j]) << "\n";
}

/// BER CSV: fixed column order; detectors that did not run leave their cell
/// empty.
inline void write_ber_csv(std::ostream& out, const BerReport& report,
                          const std::set<DetectorKind>& detectors) {
    out << "snr_db,trials,ber_cml,ber_mmse,ber_qml\n";
    for (const BerRow& row : report.rows) {
        out << format_real(row.snr_db) << "," << row.trials;
        for (DetectorKind kind :
             {DetectorKind::cml, DetectorKind::mmse, DetectorKind::qml}) {
            out << ",";
            if (detectors.count(kind)) out << format_real(row.ber.at(kind));
        }
        out << "\n";
    }
}

inline nlohmann::json ber_metadata_to_json(const BerReport& report,
                                           const std::set<DetectorKind>& detectors) {
    nlohmann::json meta;
    meta["system_size"] = report.config.system_size;
    meta["snr_db_list"] = report.config.snr_db_list;
    meta["trials_per_snr"] = report.config.trials_per_snr;
    meta["qaoa_level"] = report.config.qaoa_level;
    meta["shots"] = report.config.shots;
    meta["master_seed"] = report.config.master_seed;
    meta["optimizer"] = {
        {"multistarts", report.config.optimizer.multistarts},
        {"max_evals_per_start", report.config.optimizer.max_evals_per_start},
        {"value_tolerance", report.config.optimizer.value_tolerance},
        {"step_tolerance", report.config.optimizer.step_tolerance},
        {"seed", report.config.optimizer.seed}};
    nlohmann::json names = nlohmann::json::array();
    for (DetectorKind kind : detectors) names.push_back(detector_name(kind));
    meta["detectors"] = names;
    nlohmann::json rows = nlohmann::json::array();
    for (const BerRow& row : report.rows) {
        nlohmann::json entry;
        entry["snr_db"] = row.snr_db;
        entry["trials"] = row.trials;
        for (const auto& [kind, errors] : row.bit_errors)
            entry["bit_errors_" + detector_name(kind)] = errors;
        for (const auto& [kind, ber] : row.ber)
            entry["ber_" + detector_name(kind)] = ber;
        rows.push_back(std::move(entry));
    }
    meta["rows"] = rows;
    return meta;
}

}  // namespace qmld
