#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dps {

/// Quantized amplitude value. Holds up to 24-bit codes.
using code_t = std::uint32_t;

/// Resolution and full-scale range of the behavioral ADC/DAC pair.
struct AdcConfig {
    int bits;
    double v_min;
    double v_max;

    AdcConfig(int bits_, double v_min_, double v_max_)
        : bits(bits_), v_min(v_min_), v_max(v_max_) {
        if (bits < 2 || bits > 24)
            throw std::invalid_argument("AdcConfig: bits must be in [2, 24]");
        if (!(v_max > v_min))
            throw std::invalid_argument("AdcConfig: v_max must exceed v_min");
    }

    /// Full-scale range divided by the code count.
    double lsb() const { return (v_max - v_min) / static_cast<double>(code_count()); }

    std::uint32_t code_count() const { return 1u << bits; }
    code_t max_code() const { return (1u << bits) - 1u; }

    bool operator==(const AdcConfig&) const = default;
};

/// Behavioral SAR conversion: mid-tread rounding, clamped at the rails.
/// Total over all inputs; out-of-range voltages saturate.
inline code_t quantize(const AdcConfig& cfg, double v) {
    const long long raw = std::llround((v - cfg.v_min) / cfg.lsb());
    const long long hi = static_cast<long long>(cfg.max_code());
    return static_cast<code_t>(std::clamp(raw, 0ll, hi));
}

/// DAC transfer: v_min + code * lsb.
inline double dequantize(const AdcConfig& cfg, code_t code) {
    if (code > cfg.max_code())
        throw std::out_of_range("dequantize: code out of range");
    return cfg.v_min + static_cast<double>(code) * cfg.lsb();
}

/// Comparator decisions per SAR conversion: one per bit trial.
inline int sar_comparisons(const AdcConfig& cfg) { return cfg.bits; }

} // namespace dps
