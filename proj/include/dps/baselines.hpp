#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adc.hpp"
#include "metrics.hpp"
#include "signal.hpp"

namespace dps {

/// Synchronous level-crossing sampler configuration: a uniform level grid
/// anchored at v_min with the given pitch.
struct LcConfig {
    AdcConfig adc;
    double level_spacing_volts;

    LcConfig(AdcConfig adc_, double level_spacing_volts_)
        : adc(adc_), level_spacing_volts(level_spacing_volts_) {
        if (!(level_spacing_volts >= adc.lsb()))
            throw std::invalid_argument("LcConfig: level spacing must be at least one lsb");
    }

    double level(std::int64_t k) const {
        return adc.v_min + static_cast<double>(k) * level_spacing_volts;
    }

    std::int64_t max_level_index() const {
        return static_cast<std::int64_t>(std::floor((adc.v_max - adc.v_min) / level_spacing_volts));
    }
};

/// A crossing pulse: which level was crossed, in which direction, at which
/// sample index.
struct LcEvent {
    std::uint64_t t_index;
    int direction; // +1 or -1
    std::int64_t level_index;

    bool operator==(const LcEvent&) const = default;
};

struct NyquistResult {
    std::vector<code_t> codes;
    OpCounts ops;
};

struct LcResult {
    std::vector<LcEvent> events;
    OpCounts ops;
};

/// Fixed-clock reference: every sample is SAR-converted.
inline NyquistResult nyquist_encode(const UniformSignal& signal, const AdcConfig& cfg) {
    if (signal.samples.empty())
        throw std::invalid_argument("nyquist_encode: signal is empty");
    NyquistResult r;
    r.codes.reserve(signal.samples.size());
    for (const double v : signal.samples)
        r.codes.push_back(quantize(cfg, v));
    r.ops.sar_conversions = signal.samples.size();
    r.ops.sar_bit_comparisons = signal.samples.size() * static_cast<std::uint64_t>(cfg.bits);
    return r;
}

/// Level-crossing sampler checked at the sampling clock. A step spanning
/// several levels emits a burst, one pulse per crossed level. Costs two
/// comparator ops per sample plus one per burst event.
inline LcResult lc_encode(const UniformSignal& signal, const LcConfig& cfg) {
    if (signal.samples.empty())
        throw std::invalid_argument("lc_encode: signal is empty");
    LcResult r;
    const std::int64_t k_max = cfg.max_level_index();
    const auto clamp_v = [&](double v) {
        return std::clamp(v, cfg.adc.v_min, cfg.adc.v_max);
    };
    std::int64_t k = static_cast<std::int64_t>(
        std::floor((clamp_v(signal.samples.front()) - cfg.adc.v_min) / cfg.level_spacing_volts));
    k = std::clamp<std::int64_t>(k, 0, k_max);
    for (std::uint64_t i = 0; i < signal.samples.size(); ++i) {
        const double v = clamp_v(signal.samples[i]);
        std::uint64_t burst = 0;
        while (k + 1 <= k_max && v >= cfg.level(k + 1)) {
            ++k;
            r.events.push_back(LcEvent{i, +1, k});
            ++burst;
        }
        while (k >= 1 && v < cfg.level(k)) {
            r.events.push_back(LcEvent{i, -1, k});
            --k;
            ++burst;
        }
        r.ops.window_comparisons += 2 + burst;
    }
    return r;
}

} // namespace dps
