#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace dps {

/// Per-block activity tallies. sar_bit_comparisons is always
/// bits * sar_conversions; both are tracked so the identity is checkable.
struct OpCounts {
    std::uint64_t window_comparisons = 0;
    std::uint64_t sar_bit_comparisons = 0;
    std::uint64_t dac_settings = 0;
    std::uint64_t digital_cycles = 0;
    std::uint64_t sar_conversions = 0;

    OpCounts& operator+=(const OpCounts& o) {
        window_comparisons += o.window_comparisons;
        sar_bit_comparisons += o.sar_bit_comparisons;
        dac_settings += o.dac_settings;
        digital_cycles += o.digital_cycles;
        sar_conversions += o.sar_conversions;
        return *this;
    }
    friend OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }
    bool operator==(const OpCounts&) const = default;
};

/// Abstract per-operation energy weights. The defaults make the
/// DPS-vs-Nyquist crossover visible at small window widths; absolute
/// units are arbitrary and overridable from a key=value config file.
struct EnergyModel {
    double e_window_comparison = 1.0;
    double e_sar_bit = 1.0;
    double e_dac_setting = 0.5;
    double e_digital_cycle = 0.2;
};

struct EnergyBreakdown {
    double window_comparisons = 0.0;
    double sar_bit_comparisons = 0.0;
    double dac_settings = 0.0;
    double digital_cycles = 0.0;
    double total = 0.0;
};

/// Nyquist bit volume over event-stream bit volume.
inline double compression_factor(std::uint64_t n_nyquist_samples, int sample_bits,
                                 std::uint64_t n_events, int event_bits) {
    if (n_events == 0)
        throw std::invalid_argument("compression_factor: zero events");
    if (n_nyquist_samples == 0 || sample_bits <= 0 || event_bits <= 0)
        throw std::invalid_argument("compression_factor: counts and widths must be positive");
    return (static_cast<double>(n_nyquist_samples) * sample_bits) /
           (static_cast<double>(n_events) * event_bits);
}

/// Dot product of counts and per-op energies. The breakdown sums to
/// the total exactly.
inline EnergyBreakdown energy_estimate(const OpCounts& ops, const EnergyModel& model) {
    EnergyBreakdown e;
    e.window_comparisons = static_cast<double>(ops.window_comparisons) * model.e_window_comparison;
    e.sar_bit_comparisons = static_cast<double>(ops.sar_bit_comparisons) * model.e_sar_bit;
    e.dac_settings = static_cast<double>(ops.dac_settings) * model.e_dac_setting;
    e.digital_cycles = static_cast<double>(ops.digital_cycles) * model.e_digital_cycle;
    e.total = e.window_comparisons + e.sar_bit_comparisons + e.dac_settings + e.digital_cycles;
    return e;
}

/// 1 - e_dps / e_reference. Negative when the tracking overhead costs
/// more than it saves.
inline double power_saving_factor(double e_dps, double e_reference) {
    if (!(e_reference > 0.0))
        throw std::invalid_argument("power_saving_factor: reference energy must be positive");
    return 1.0 - e_dps / e_reference;
}

/// Reads key=value lines (the event-header grammar without '#') and
/// overrides the matching defaults. Blank lines are skipped.
inline EnergyModel load_energy_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_energy_model: cannot open " + path.string());
    EnergyModel model;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("load_energy_model: expected key=value at line " +
                                     std::to_string(lineno));
        const std::string key = line.substr(0, eq);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(line.substr(eq + 1), &used);
            if (used != line.size() - eq - 1) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw std::runtime_error("load_energy_model: bad value at line " +
                                     std::to_string(lineno));
        }
        if (value < 0.0)
            throw std::runtime_error("load_energy_model: negative energy at line " +
                                     std::to_string(lineno));
        if (key == "e_window_comparison") model.e_window_comparison = value;
        else if (key == "e_sar_bit") model.e_sar_bit = value;
        else if (key == "e_dac_setting") model.e_dac_setting = value;
        else if (key == "e_digital_cycle") model.e_digital_cycle = value;
        else
            throw std::runtime_error("load_energy_model: unknown key '" + key + "' at line " +
                                     std::to_string(lineno));
    }
    return model;
}

} // namespace dps
