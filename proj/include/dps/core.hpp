#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adc.hpp"
#include "metrics.hpp"
#include "signal.hpp"

namespace dps {

/// Tracking-encoder configuration. delta_volts is the half-width of the
/// prediction window; it is applied in code units, never below one code.
struct DpsConfig {
    AdcConfig adc;
    double delta_volts;
    int timestamp_bits;
    bool emit_startup_pair = true;

    DpsConfig(AdcConfig adc_, double delta_volts_, int timestamp_bits_,
              bool emit_startup_pair_ = true)
        : adc(adc_), delta_volts(delta_volts_), timestamp_bits(timestamp_bits_),
          emit_startup_pair(emit_startup_pair_) {
        if (!(delta_volts > 0.0))
            throw std::invalid_argument("DpsConfig: delta_volts must be positive");
        // A failure episode spans two cycles, so the smallest encodable
        // inter-event gap after startup is 2. One-bit timestamps cannot
        // represent that.
        if (timestamp_bits < 2 || timestamp_bits > 32)
            throw std::invalid_argument("DpsConfig: timestamp_bits must be in [2, 32]");
    }

    code_t delta_code() const {
        const long long c = std::llround(delta_volts / adc.lsb());
        return c < 1 ? 1u : static_cast<code_t>(c);
    }

    /// Largest dt_cycles an event may carry.
    std::uint32_t max_dt() const {
        return static_cast<std::uint32_t>((1ull << timestamp_bits) - 1ull);
    }

    /// Counter value at which a Track step is forced to fail. The forced
    /// emission lands one cycle later, carrying dt = max_dt() exactly.
    std::uint32_t saturation_counter() const {
        return static_cast<std::uint32_t>((1ull << timestamp_bits) - 2ull);
    }
};

/// One output record: clock cycles since the previous emitted event
/// (since time index 0 for the first) plus the quantized amplitude.
struct EventRecord {
    std::uint32_t dt_cycles;
    code_t code;

    bool operator==(const EventRecord&) const = default;
};

/// The codec's compressed form: config snapshot, input sample rate,
/// input length, and the ordered event list.
struct EventStream {
    DpsConfig config;
    double fs_hz = 0.0;
    std::uint64_t total_samples = 0;
    std::vector<EventRecord> events;

    /// Identity is the serialized surface; emit_startup_pair only steers
    /// encoding and has no representation in the stream format.
    friend bool operator==(const EventStream& a, const EventStream& b) {
        return a.config.adc == b.config.adc &&
               a.config.delta_volts == b.config.delta_volts &&
               a.config.timestamp_bits == b.config.timestamp_bits &&
               a.fs_hz == b.fs_hz && a.total_samples == b.total_samples &&
               a.events == b.events;
    }
};

enum class DpsMode { Acquire0, Acquire1, Track };

/// Encoder state between samples. l1/l2 are the last and second-last
/// tracked digital values; counter holds cycles since the last emission.
struct DpsState {
    DpsMode mode = DpsMode::Acquire0;
    code_t l1 = 0;
    code_t l2 = 0;
    std::uint32_t counter = 0;
};

/// Per-step observability: what was emitted, whether a Track prediction
/// held, and the operation tally for this cycle.
struct StepOutcome {
    std::optional<EventRecord> emitted;
    std::optional<bool> prediction_success;
    OpCounts ops;
};

struct StepResult {
    DpsState state;
    StepOutcome outcome;
};

/// Linear extrapolation of the two prior digital values, clamped to the
/// code range. Doubling is a left shift; no general multiply is needed.
inline code_t predict(code_t l1, code_t l2, int bits) {
    const long long raw = (static_cast<long long>(l1) << 1) - static_cast<long long>(l2);
    const long long hi = (1ll << bits) - 1ll;
    return static_cast<code_t>(std::clamp(raw, 0ll, hi));
}

struct Thresholds {
    code_t ut;
    code_t lt;
};

/// Window rails: prediction plus/minus the digital delta, clamped to the
/// code range. A fully clamped window collapses to ut == lt.
inline Thresholds thresholds(code_t p, code_t delta_code, int bits) {
    const long long hi = (1ll << bits) - 1ll;
    const long long up = static_cast<long long>(p) + static_cast<long long>(delta_code);
    const long long dn = static_cast<long long>(p) - static_cast<long long>(delta_code);
    return {static_cast<code_t>(std::clamp(up, 0ll, hi)),
            static_cast<code_t>(std::clamp(dn, 0ll, hi))};
}

/// Analog window test against the DAC-reproduced rails. Strict on both
/// sides: touching a rail is a failed prediction, and an empty window
/// (ut == lt) never passes.
inline bool decide(double v, code_t ut, code_t lt, const AdcConfig& cfg) {
    return dequantize(cfg, lt) < v && v < dequantize(cfg, ut);
}

/// Advances the encoder by one sample clock cycle.
///
/// Acquire0 converts the very first sample and seeds l1. Acquire1 converts
/// the next sample, emits it, and enters Track. A Track step predicts from
/// (l1, l2), window-tests the input, and on success promotes the prediction
/// into l1. A window miss (or the counter reaching saturation) starts a
/// failure episode: the missed sample is converted but not emitted by
/// itself; the following Acquire1 step converts and emits, leaving the
/// missed code as l2 and the emitted code as l1.
inline StepResult step(const DpsState& state, double v, const DpsConfig& cfg) {
    DpsState next = state;
    StepOutcome out;
    out.ops.digital_cycles = 1;

    const auto convert = [&](double volt) {
        out.ops.sar_conversions += 1;
        out.ops.sar_bit_comparisons += static_cast<std::uint64_t>(cfg.adc.bits);
        return quantize(cfg.adc, volt);
    };

    switch (state.mode) {
    case DpsMode::Acquire0: {
        const code_t c = convert(v);
        if (cfg.emit_startup_pair) {
            out.emitted = EventRecord{state.counter, c};
            next.counter = 0;
        }
        next.l1 = c;
        next.mode = DpsMode::Acquire1;
        break;
    }
    case DpsMode::Acquire1: {
        next.counter = state.counter + 1;
        const code_t c = convert(v);
        out.emitted = EventRecord{next.counter, c};
        next.l2 = state.l1;
        next.l1 = c;
        next.counter = 0;
        next.mode = DpsMode::Track;
        break;
    }
    case DpsMode::Track: {
        next.counter = state.counter + 1;
        const code_t p = predict(state.l1, state.l2, cfg.adc.bits);
        const auto [ut, lt] = thresholds(p, cfg.delta_code(), cfg.adc.bits);
        out.ops.window_comparisons = 2;
        out.ops.dac_settings = 2;
        const bool success = decide(v, ut, lt, cfg.adc) &&
                             next.counter < cfg.saturation_counter();
        out.prediction_success = success;
        if (success) {
            next.l2 = state.l1;
            next.l1 = p;
        } else {
            const code_t c = convert(v);
            next.l2 = state.l1;
            next.l1 = c;
            next.mode = DpsMode::Acquire1;
        }
        break;
    }
    }
    return {next, out};
}

struct EncodeResult {
    EventStream stream;
    OpCounts ops;
};

/// Folds step over every sample, collecting emitted events and the
/// aggregate operation tally. Deterministic.
inline EncodeResult encode(const UniformSignal& signal, const DpsConfig& cfg) {
    if (signal.samples.empty())
        throw std::invalid_argument("encode: signal is empty");
    EncodeResult r{EventStream{cfg, signal.fs_hz, signal.samples.size(), {}}, OpCounts{}};
    DpsState state;
    for (const double v : signal.samples) {
        auto [next, out] = step(state, v, cfg);
        state = next;
        r.ops += out.ops;
        if (out.emitted)
            r.stream.events.push_back(*out.emitted);
    }
    return r;
}

} // namespace dps
