#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "adc.hpp"
#include "core.hpp"
#include "signal.hpp"

namespace dps {

/// A decoded event: absolute sample index plus the dequantized amplitude.
struct AnchorPoint {
    std::uint64_t t_index;
    double v;

    bool operator==(const AnchorPoint&) const = default;
};

/// Resolves events to absolute time by accumulating dt_cycles and
/// dequantizing each code. Rejects streams whose cumulative time ever
/// fails to advance past the previous event.
inline std::vector<AnchorPoint> decode_anchors(const EventStream& stream) {
    std::vector<AnchorPoint> anchors;
    anchors.reserve(stream.events.size());
    std::uint64_t t = 0;
    for (std::size_t j = 0; j < stream.events.size(); ++j) {
        t += stream.events[j].dt_cycles;
        if (j > 0 && stream.events[j].dt_cycles == 0)
            throw std::runtime_error("decode_anchors: non-monotonic cumulative time at event " +
                                     std::to_string(j));
        anchors.push_back(AnchorPoint{t, dequantize(stream.config.adc, stream.events[j].code)});
    }
    return anchors;
}

/// First-order piecewise-linear reconstruction through the anchors,
/// evaluated at every integer sample index. The first anchor's value is
/// held before it and the last anchor's value after it.
inline UniformSignal pwl_reconstruct(const std::vector<AnchorPoint>& anchors,
                                     std::uint64_t total_samples, double fs_hz) {
    if (anchors.empty())
        throw std::invalid_argument("pwl_reconstruct: no anchors");
    for (std::size_t j = 0; j + 1 < anchors.size(); ++j)
        if (anchors[j + 1].t_index <= anchors[j].t_index)
            throw std::invalid_argument("pwl_reconstruct: anchor indices must strictly increase");
    if (anchors.back().t_index >= total_samples)
        throw std::invalid_argument("pwl_reconstruct: anchor index beyond total_samples");
    UniformSignal sig{fs_hz, std::vector<double>(total_samples)};
    std::uint64_t i = 0;
    for (; i < anchors.front().t_index; ++i)
        sig.samples[i] = anchors.front().v;
    for (std::size_t j = 0; j + 1 < anchors.size(); ++j) {
        const AnchorPoint& a = anchors[j];
        const AnchorPoint& b = anchors[j + 1];
        const double span = static_cast<double>(b.t_index - a.t_index);
        for (; i < b.t_index; ++i) {
            const double t = static_cast<double>(i - a.t_index) / span;
            sig.samples[i] = a.v + t * (b.v - a.v);
        }
    }
    for (; i < total_samples; ++i)
        sig.samples[i] = anchors.back().v;
    return sig;
}

/// sqrt(mean((orig - recon)^2)); both signals must share length and rate.
inline double rms_error(const UniformSignal& original, const UniformSignal& reconstructed) {
    if (original.samples.size() != reconstructed.samples.size())
        throw std::invalid_argument("rms_error: length mismatch (" +
                                    std::to_string(original.samples.size()) + " vs " +
                                    std::to_string(reconstructed.samples.size()) + ")");
    if (original.fs_hz != reconstructed.fs_hz)
        throw std::invalid_argument("rms_error: sample rate mismatch");
    if (original.samples.empty())
        throw std::invalid_argument("rms_error: empty signals");
    double acc = 0.0;
    for (std::size_t i = 0; i < original.samples.size(); ++i) {
        const double d = original.samples[i] - reconstructed.samples[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(original.samples.size()));
}

} // namespace dps
