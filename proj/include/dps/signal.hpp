#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dps {

/// A uniformly sampled voltage trace. Sample i sits at time i / fs_hz.
struct UniformSignal {
    double fs_hz = 0.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double duration_s() const { return static_cast<double>(samples.size()) / fs_hz; }
};

namespace detail {

inline std::size_t sample_count(double fs_hz, double duration_s) {
    if (!(fs_hz > 0.0))
        throw std::invalid_argument("signal generator: fs_hz must be positive");
    if (!(duration_s > 0.0))
        throw std::invalid_argument("signal generator: duration_s must be positive");
    const long long n = std::llround(duration_s * fs_hz);
    if (n <= 0)
        throw std::invalid_argument("signal generator: duration yields no samples");
    return static_cast<std::size_t>(n);
}

} // namespace detail

/// samples[i] = offset + (amplitude_vpp / 2) * sin(2 pi f i / fs).
inline UniformSignal gen_sine(double freq_hz, double amplitude_vpp, double offset_volts,
                              double fs_hz, double duration_s) {
    const std::size_t n = detail::sample_count(fs_hz, duration_s);
    UniformSignal sig{fs_hz, std::vector<double>(n)};
    const double w = 2.0 * std::numbers::pi * freq_hz / fs_hz;
    const double a = 0.5 * amplitude_vpp;
    for (std::size_t i = 0; i < n; ++i)
        sig.samples[i] = offset_volts + a * std::sin(w * static_cast<double>(i));
    return sig;
}

/// Ideal square wave passed through a single-pole low-pass:
/// y[i] = y[i-1] + alpha * (x[i] - y[i-1]), alpha = 1 - exp(-2 pi fc / fs),
/// with y[-1] initialized to the first square-wave value. The square wave
/// starts on its high plateau and flips every half period.
inline UniformSignal gen_lpf_square(double freq_hz, double amplitude_vpp, double offset_volts,
                                    double cutoff_hz, double fs_hz, double duration_s) {
    if (!(cutoff_hz > 0.0))
        throw std::invalid_argument("gen_lpf_square: cutoff_hz must be positive");
    const std::size_t n = detail::sample_count(fs_hz, duration_s);
    UniformSignal sig{fs_hz, std::vector<double>(n)};
    const double hi = offset_volts + 0.5 * amplitude_vpp;
    const double lo = offset_volts - 0.5 * amplitude_vpp;
    const double alpha = 1.0 - std::exp(-2.0 * std::numbers::pi * cutoff_hz / fs_hz);
    double y = hi; // y[-1] = x[0], and the square wave starts high
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = std::fmod(freq_hz * static_cast<double>(i) / fs_hz, 1.0);
        const double x = phase < 0.5 ? hi : lo;
        y += alpha * (x - y);
        sig.samples[i] = y;
    }
    return sig;
}

} // namespace dps
