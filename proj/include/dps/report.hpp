#pragma once

#include <json.hpp>

#include "baselines.hpp"
#include "core.hpp"
#include "metrics.hpp"
#include "reconstruct.hpp"
#include "signal.hpp"

namespace dps {

namespace detail {

inline nlohmann::ordered_json ops_json(const OpCounts& ops) {
    return {{"window_comparisons", ops.window_comparisons},
            {"sar_bit_comparisons", ops.sar_bit_comparisons},
            {"dac_settings", ops.dac_settings},
            {"digital_cycles", ops.digital_cycles},
            {"sar_conversions", ops.sar_conversions}};
}

inline nlohmann::ordered_json energy_json(const EnergyBreakdown& e) {
    return {{"window_comparisons", e.window_comparisons},
            {"sar_bit_comparisons", e.sar_bit_comparisons},
            {"dac_settings", e.dac_settings},
            {"digital_cycles", e.digital_cycles},
            {"total", e.total}};
}

} // namespace detail

/// Evaluates one encoded stream against its source signal and the Nyquist
/// reference, returning a JSON report with stable key order. Event words
/// are timestamp_bits + bits wide; Nyquist samples are bits wide.
inline nlohmann::ordered_json build_run_report(const UniformSignal& signal,
                                               const EncodeResult& encoded,
                                               const EnergyModel& model = {}) {
    const DpsConfig& cfg = encoded.stream.config;
    const auto anchors = decode_anchors(encoded.stream);
    const auto reconstructed =
        pwl_reconstruct(anchors, encoded.stream.total_samples, encoded.stream.fs_hz);
    // Error is measured against the given samples as-is, not against a
    // quantized copy, so it includes the codec's own quantization noise.
    const double rms = rms_error(signal, reconstructed);

    const auto nyquist = nyquist_encode(signal, cfg.adc);
    const int event_bits = cfg.timestamp_bits + cfg.adc.bits;
    const double cf = compression_factor(signal.size(), cfg.adc.bits,
                                         encoded.stream.events.size(), event_bits);

    const EnergyBreakdown e_dps = energy_estimate(encoded.ops, model);
    const EnergyBreakdown e_nyq = energy_estimate(nyquist.ops, model);

    nlohmann::ordered_json report;
    report["config"] = {{"bits", cfg.adc.bits},
                        {"v_min", cfg.adc.v_min},
                        {"v_max", cfg.adc.v_max},
                        {"lsb_volts", cfg.adc.lsb()},
                        {"fs_hz", signal.fs_hz},
                        {"delta_volts", cfg.delta_volts},
                        {"delta_code", cfg.delta_code()},
                        {"timestamp_bits", cfg.timestamp_bits}};
    report["signal"] = {{"total_samples", signal.size()},
                        {"duration_s", signal.duration_s()}};
    report["events"] = {{"count", encoded.stream.events.size()},
                        {"event_bits", event_bits},
                        {"compression_factor", cf}};
    report["reconstruction"] = {{"rms_error_volts", rms}};
    report["ops"] = {{"dps", detail::ops_json(encoded.ops)},
                     {"nyquist", detail::ops_json(nyquist.ops)}};
    report["energy"] = {{"model",
                         {{"e_window_comparison", model.e_window_comparison},
                          {"e_sar_bit", model.e_sar_bit},
                          {"e_dac_setting", model.e_dac_setting},
                          {"e_digital_cycle", model.e_digital_cycle}}},
                        {"dps", detail::energy_json(e_dps)},
                        {"nyquist", detail::energy_json(e_nyq)},
                        {"power_saving_factor", power_saving_factor(e_dps.total, e_nyq.total)}};
    return report;
}

} // namespace dps
