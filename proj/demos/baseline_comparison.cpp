// Runs predictive, level-crossing, and Nyquist sampling over the same
// low-pass-filtered square wave and prints event counts and comparator ops.

#include <cstdio>

#include <dps/dps.hpp>

int main() {
    const dps::AdcConfig adc(10, 0.0, 1.8);
    const auto signal = dps::gen_lpf_square(5.0, 0.8, 0.9, 50.0, 1000.0, 1.0);

    const dps::DpsConfig cfg(adc, 0.010, 10);
    const auto predictive = dps::encode(signal, cfg);
    const auto lc = dps::lc_encode(signal, dps::LcConfig(adc, 0.010));
    const auto nyquist = dps::nyquist_encode(signal, adc);

    const auto comparator_ops = [](const dps::OpCounts& ops) {
        return ops.window_comparisons + ops.sar_bit_comparisons;
    };
    std::printf("%-16s %10s %16s\n", "sampler", "events", "comparator_ops");
    std::printf("%-16s %10zu %16llu\n", "predictive", predictive.stream.events.size(),
                static_cast<unsigned long long>(comparator_ops(predictive.ops)));
    std::printf("%-16s %10zu %16llu\n", "level-crossing", lc.events.size(),
                static_cast<unsigned long long>(comparator_ops(lc.ops)));
    std::printf("%-16s %10zu %16llu\n", "nyquist", signal.size(),
                static_cast<unsigned long long>(comparator_ops(nyquist.ops)));
    return 0;
}
