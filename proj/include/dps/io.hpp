#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "signal.hpp"

namespace dps {

namespace detail {

/// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view s, double& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline std::string_view strip_cr(std::string_view s) {
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace detail

/// Loads a one- or two-column CSV trace. The two-column form is
/// (time_s, volts), optionally headed, and derives the sample rate from
/// the median time step; any step deviating more than 1e-6 relative from
/// that median is rejected. The one-column form is raw voltages and
/// requires fs_hz_override. Row numbers in errors are 1-based file lines.
inline UniformSignal load_signal_csv(const std::filesystem::path& path,
                                     std::optional<double> fs_hz_override = std::nullopt) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_signal_csv: cannot open " + path.string());
    if (fs_hz_override && !(*fs_hz_override > 0.0))
        throw std::invalid_argument("load_signal_csv: fs_hz_override must be positive");

    std::vector<double> times;
    std::vector<double> volts;
    bool two_column = false;
    bool saw_data = false;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = detail::strip_cr(raw);
        if (line.empty()) continue;
        const auto fields = detail::split_commas(line);
        if (fields.size() > 2)
            throw std::runtime_error("load_signal_csv: too many columns at row " +
                                     std::to_string(lineno));
        if (!saw_data) {
            two_column = fields.size() == 2;
            if (two_column) {
                double t, v;
                saw_data = true;
                if (!detail::parse_double(fields[0], t) || !detail::parse_double(fields[1], v))
                    continue; // header row
                times.push_back(t);
                volts.push_back(v);
                continue;
            }
            saw_data = true;
        }
        if (fields.size() != (two_column ? 2u : 1u))
            throw std::runtime_error("load_signal_csv: inconsistent column count at row " +
                                     std::to_string(lineno));
        if (two_column) {
            double t, v;
            if (!detail::parse_double(fields[0], t) || !detail::parse_double(fields[1], v))
                throw std::runtime_error("load_signal_csv: non-numeric cell at row " +
                                         std::to_string(lineno));
            times.push_back(t);
            volts.push_back(v);
        } else {
            double v;
            if (!detail::parse_double(fields[0], v))
                throw std::runtime_error("load_signal_csv: non-numeric cell at row " +
                                         std::to_string(lineno));
            volts.push_back(v);
        }
    }
    if (volts.empty())
        throw std::runtime_error("load_signal_csv: empty data in " + path.string());

    if (!two_column) {
        if (!fs_hz_override)
            throw std::invalid_argument(
                "load_signal_csv: one-column CSV requires fs_hz_override");
        return UniformSignal{*fs_hz_override, std::move(volts)};
    }

    double fs = 0.0;
    if (times.size() >= 2) {
        std::vector<double> steps(times.size() - 1);
        for (std::size_t i = 0; i + 1 < times.size(); ++i)
            steps[i] = times[i + 1] - times[i];
        std::vector<double> sorted = steps;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[(sorted.size() - 1) / 2];
        if (!(median > 0.0))
            throw std::runtime_error("load_signal_csv: non-increasing time base");
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (std::abs(steps[i] - median) > 1e-6 * median)
                throw std::runtime_error("load_signal_csv: non-uniform time step at row " +
                                         std::to_string(i + 2));
        }
        // The full span averages out last-digit noise in the individual
        // steps, so a file written at an exact rate reads back at it.
        fs = static_cast<double>(times.size() - 1) / (times.back() - times.front());
        // The file's own time base is authoritative; an override may only
        // confirm it.
        if (fs_hz_override && std::abs(*fs_hz_override - fs) > 1e-6 * fs)
            throw std::runtime_error("load_signal_csv: fs override " +
                                     detail::format_double(*fs_hz_override) +
                                     " Hz contradicts the file time base " +
                                     detail::format_double(fs) + " Hz");
    } else if (fs_hz_override) {
        fs = *fs_hz_override;
    } else {
        throw std::runtime_error(
            "load_signal_csv: single data row cannot determine the sample rate");
    }
    return UniformSignal{fs, std::move(volts)};
}

/// Writes a two-column t,v CSV (LF line endings, shortest round-trip
/// number formatting) with sample i at time i / fs_hz.
inline void write_signal_csv(const std::filesystem::path& path, const UniformSignal& signal) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_signal_csv: cannot open " + path.string());
    out << "t,v\n";
    for (std::size_t i = 0; i < signal.samples.size(); ++i)
        out << detail::format_double(static_cast<double>(i) / signal.fs_hz) << ','
            << detail::format_double(signal.samples[i]) << '\n';
    if (!out)
        throw std::runtime_error("write_signal_csv: write failed for " + path.string());
}

/// Serializes a stream: '#key=value' header lines (version, bits, v_min,
/// v_max, fs_hz, delta_volts, timestamp_bits, total_samples), a dt,code
/// column row, then one decimal dt_cycles,code row per event. LF endings,
/// no trailing whitespace. Rejects events outside the configured ranges.
inline void write_events(std::ostream& out, const EventStream& stream) {
    const auto& cfg = stream.config;
    std::uint64_t cumulative = 0;
    for (const EventRecord& e : stream.events) {
        if (e.dt_cycles > cfg.max_dt())
            throw std::invalid_argument("write_events: dt out of range");
        if (e.code > cfg.adc.max_code())
            throw std::invalid_argument("write_events: code out of range");
        cumulative += e.dt_cycles;
    }
    if (!stream.events.empty() && cumulative >= stream.total_samples)
        throw std::invalid_argument("write_events: events extend past total_samples");
    out << "#version=1\n";
    out << "#bits=" << cfg.adc.bits << '\n';
    out << "#v_min=" << detail::format_double(cfg.adc.v_min) << '\n';
    out << "#v_max=" << detail::format_double(cfg.adc.v_max) << '\n';
    out << "#fs_hz=" << detail::format_double(stream.fs_hz) << '\n';
    out << "#delta_volts=" << detail::format_double(cfg.delta_volts) << '\n';
    out << "#timestamp_bits=" << cfg.timestamp_bits << '\n';
    out << "#total_samples=" << stream.total_samples << '\n';
    out << "dt,code\n";
    for (const EventRecord& e : stream.events)
        out << e.dt_cycles << ',' << e.code << '\n';
}

inline void write_events(const std::filesystem::path& path, const EventStream& stream) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_events: cannot open " + path.string());
    write_events(out, stream);
    if (!out)
        throw std::runtime_error("write_events: write failed for " + path.string());
}

inline EventStream read_events(std::istream& in) {
    std::map<std::string, std::string, std::less<>> header;
    std::string raw;
    std::size_t lineno = 0;
    bool saw_columns = false;
    std::vector<EventRecord> events;

    const auto header_value = [&](const char* key) -> const std::string& {
        const auto it = header.find(key);
        if (it == header.end())
            throw std::runtime_error(std::string("read_events: missing header field: ") + key);
        return it->second;
    };
    const auto header_u64 = [&](const char* key) {
        std::uint64_t v = 0;
        if (!detail::parse_u64(header_value(key), v))
            throw std::runtime_error(std::string("read_events: bad integer for ") + key);
        return v;
    };
    const auto header_double = [&](const char* key) {
        double v = 0.0;
        if (!detail::parse_double(header_value(key), v))
            throw std::runtime_error(std::string("read_events: bad number for ") + key);
        return v;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = detail::strip_cr(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (saw_columns)
                throw std::runtime_error("read_events: header line after data at line " +
                                         std::to_string(lineno));
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw std::runtime_error("read_events: malformed header at line " +
                                         std::to_string(lineno));
            header.emplace(std::string(line.substr(1, eq - 1)), std::string(line.substr(eq + 1)));
            continue;
        }
        if (!saw_columns) {
            if (line != "dt,code")
                throw std::runtime_error("read_events: expected dt,code column row at line " +
                                         std::to_string(lineno));
            saw_columns = true;
            continue;
        }
        const auto fields = detail::split_commas(line);
        std::uint64_t dt = 0, code = 0;
        if (fields.size() != 2 || !detail::parse_u64(fields[0], dt) ||
            !detail::parse_u64(fields[1], code))
            throw std::runtime_error("read_events: malformed event row at line " +
                                     std::to_string(lineno));
        if (dt > 0xffffffffull || code > 0xffffffffull)
            throw std::runtime_error("read_events: value overflow at line " +
                                     std::to_string(lineno));
        events.push_back(EventRecord{static_cast<std::uint32_t>(dt),
                                     static_cast<code_t>(code)});
    }

    if (header_value("version") != "1")
        throw std::runtime_error("read_events: unknown version '" + header_value("version") + "'");
    for (const auto& [key, value] : header) {
        if (key != "version" && key != "bits" && key != "v_min" && key != "v_max" &&
            key != "fs_hz" && key != "delta_volts" && key != "timestamp_bits" &&
            key != "total_samples")
            throw std::runtime_error("read_events: unknown header key '" + key + "'");
    }
    if (!saw_columns)
        throw std::runtime_error("read_events: missing dt,code column row");

    const auto bits = header_u64("bits");
    const auto ts_bits = header_u64("timestamp_bits");
    DpsConfig cfg(AdcConfig(static_cast<int>(bits), header_double("v_min"),
                            header_double("v_max")),
                  header_double("delta_volts"), static_cast<int>(ts_bits));
    EventStream stream{cfg, header_double("fs_hz"), header_u64("total_samples"),
                       std::move(events)};
    for (const EventRecord& e : stream.events) {
        if (e.dt_cycles > cfg.max_dt())
            throw std::runtime_error("read_events: dt out of range");
        if (e.code > cfg.adc.max_code())
            throw std::runtime_error("read_events: code out of range");
    }
    return stream;
}

inline EventStream read_events(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_events: cannot open " + path.string());
    return read_events(in);
}

} // namespace dps
