// Encodes a 10 Hz sine at several tracking-window widths and prints the
// event count, compression factor, and reconstruction error for each.

#include <cstdio>

#include <dps/dps.hpp>

int main() {
    const dps::AdcConfig adc(10, 0.0, 1.8);
    const auto signal = dps::gen_sine(10.0, 0.3, 0.9, 1000.0, 2.0);

    std::printf("%10s %10s %10s %12s\n", "delta_mV", "events", "CF", "RMS_mV");
    for (const double delta_mv : {2.0, 5.0, 10.0, 20.0, 30.0}) {
        const dps::DpsConfig cfg(adc, delta_mv / 1000.0, 10);
        const auto encoded = dps::encode(signal, cfg);
        const auto anchors = dps::decode_anchors(encoded.stream);
        const auto rebuilt =
            dps::pwl_reconstruct(anchors, encoded.stream.total_samples, signal.fs_hz);
        const double cf = dps::compression_factor(
            signal.size(), adc.bits, encoded.stream.events.size(),
            cfg.timestamp_bits + adc.bits);
        std::printf("%10.0f %10zu %10.2f %12.3f\n", delta_mv, encoded.stream.events.size(), cf,
                    dps::rms_error(signal, rebuilt) * 1000.0);
    }
    return 0;
}
