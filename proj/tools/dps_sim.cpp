#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <dps/dps.hpp>

namespace {

/// Flags shared by every command that builds a signal or a codec config.
struct CommonOpts {
    std::string input;
    std::string gen;
    int bits = 10;
    double v_min = 0.0;
    double v_max = 1.8;
    std::optional<double> fs_hz;
    double duration_s = 1.0;
    int ts_bits = 10;
};

constexpr double kDefaultFsHz = 1000.0;

void add_signal_flags(CLI::App& cmd, CommonOpts& o) {
    cmd.add_option("--input", o.input, "Input signal CSV (t,v columns, or one v column with --fs)");
    cmd.add_option("--gen", o.gen,
                   "Generated input: sine:freq_hz,amplitude_vpp,offset_v or "
                   "lpfsq:freq_hz,amplitude_vpp,offset_v,cutoff_hz");
    cmd.add_option("--fs", o.fs_hz, "Sample rate in Hz for --gen or one-column CSV input "
                                    "(default 1000 for --gen)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--duration", o.duration_s, "Generated signal length in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_codec_flags(CLI::App& cmd, CommonOpts& o) {
    cmd.add_option("--bits", o.bits, "ADC resolution in bits")
        ->check(CLI::Range(2, 24))
        ->capture_default_str();
    cmd.add_option("--vmin", o.v_min, "Input range low end in volts")->capture_default_str();
    cmd.add_option("--vmax", o.v_max, "Input range high end in volts")->capture_default_str();
    cmd.add_option("--ts-bits", o.ts_bits, "Timestamp field width in bits")
        ->check(CLI::Range(2, 32))
        ->capture_default_str();
}

std::vector<double> parse_gen_args(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        if (!dps::detail::parse_double(item, v))
            throw CLI::ValidationError("--gen: bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

dps::UniformSignal make_signal(const CommonOpts& o) {
    const bool has_input = !o.input.empty();
    const bool has_gen = !o.gen.empty();
    if (has_input == has_gen)
        throw CLI::ValidationError("exactly one of --input or --gen is required");
    if (has_input) return dps::load_signal_csv(o.input, o.fs_hz);
    const double fs = o.fs_hz.value_or(kDefaultFsHz);
    const auto colon = o.gen.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--gen: expected kind:args, got '" + o.gen + "'");
    const std::string kind = o.gen.substr(0, colon);
    const auto args = parse_gen_args(o.gen.substr(colon + 1));
    if (kind == "sine") {
        if (args.size() != 3)
            throw CLI::ValidationError("--gen sine: expects freq_hz,amplitude_vpp,offset_v");
        return dps::gen_sine(args[0], args[1], args[2], fs, o.duration_s);
    }
    if (kind == "lpfsq") {
        if (args.size() != 4)
            throw CLI::ValidationError(
                "--gen lpfsq: expects freq_hz,amplitude_vpp,offset_v,cutoff_hz");
        return dps::gen_lpf_square(args[0], args[1], args[2], args[3], fs, o.duration_s);
    }
    throw CLI::ValidationError("--gen: unknown kind '" + kind + "'");
}

dps::DpsConfig make_config(const CommonOpts& o, double delta_mv) {
    return dps::DpsConfig(dps::AdcConfig(o.bits, o.v_min, o.v_max), delta_mv / 1000.0, o.ts_bits);
}

dps::EnergyModel make_energy_model(const std::string& config_path) {
    if (config_path.empty()) return dps::EnergyModel{};
    return dps::load_energy_model(config_path);
}

int run_simulate(const CommonOpts& o, double delta_mv, const std::string& out_path,
                 const std::string& config_path) {
    const auto signal = make_signal(o);
    const auto cfg = make_config(o, delta_mv);
    const auto encoded = dps::encode(signal, cfg);
    if (!out_path.empty()) dps::write_events(out_path, encoded.stream);
    std::cout << dps::build_run_report(signal, encoded, make_energy_model(config_path)).dump(2)
              << '\n';
    return 0;
}

int run_reconstruct(const std::string& events_path, const std::string& out_path) {
    const auto stream = dps::read_events(events_path);
    const auto anchors = dps::decode_anchors(stream);
    const auto signal = dps::pwl_reconstruct(anchors, stream.total_samples, stream.fs_hz);
    dps::write_signal_csv(out_path, signal);
    return 0;
}

int run_evaluate(const CommonOpts& o, const std::string& events_path,
                 const std::string& config_path) {
    const auto stream = dps::read_events(events_path);
    CommonOpts in = o;
    if (!in.fs_hz) in.fs_hz = stream.fs_hz;
    const auto signal = make_signal(in);
    if (signal.size() != stream.total_samples)
        throw std::runtime_error("evaluate: input has " + std::to_string(signal.size()) +
                                 " samples but the event header says " +
                                 std::to_string(stream.total_samples));
    // The event file has no op counts; re-running the deterministic encoder
    // on the input recovers them.
    const auto reencoded = dps::encode(signal, stream.config);
    const dps::EncodeResult result{stream, reencoded.ops};
    std::cout << dps::build_run_report(signal, result, make_energy_model(config_path)).dump(2)
              << '\n';
    return 0;
}

int run_sweep(const CommonOpts& o, const std::vector<double>& deltas_mv,
              const std::string& out_path) {
    if (deltas_mv.size() < 2)
        throw CLI::ValidationError("--delta-mv-list needs at least two values");
    const auto signal = make_signal(o);

    struct Row {
        double delta_mv;
        double cf;
        double rms_mv;
        std::size_t n_events;
    };
    const auto evaluate_delta = [&](double delta_mv) {
        const auto cfg = make_config(o, delta_mv);
        const auto encoded = dps::encode(signal, cfg);
        const auto anchors = dps::decode_anchors(encoded.stream);
        const auto rec =
            dps::pwl_reconstruct(anchors, encoded.stream.total_samples, encoded.stream.fs_hz);
        const double cf =
            dps::compression_factor(signal.size(), cfg.adc.bits, encoded.stream.events.size(),
                                    cfg.timestamp_bits + cfg.adc.bits);
        return Row{delta_mv, cf, dps::rms_error(signal, rec) * 1000.0,
                   encoded.stream.events.size()};
    };

    std::vector<std::future<Row>> futures;
    futures.reserve(deltas_mv.size());
    for (const double d : deltas_mv)
        futures.push_back(std::async(std::launch::async, evaluate_delta, d));

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("sweep: cannot open " + out_path);
    out << "delta_mv,cf,rms_mv,n_events\n";
    for (auto& f : futures) {
        const Row row = f.get();
        out << dps::detail::format_double(row.delta_mv) << ','
            << dps::detail::format_double(row.cf) << ','
            << dps::detail::format_double(row.rms_mv) << ',' << row.n_events << '\n';
    }
    if (!out) throw std::runtime_error("sweep: write failed for " + out_path);
    return 0;
}

int run_compare(const CommonOpts& o, double delta_mv, double lc_spacing_mv) {
    const auto signal = make_signal(o);
    const auto cfg = make_config(o, delta_mv);
    const auto encoded = dps::encode(signal, cfg);
    const auto lc = dps::lc_encode(signal, dps::LcConfig(cfg.adc, lc_spacing_mv / 1000.0));
    const auto nyquist = dps::nyquist_encode(signal, cfg.adc);

    nlohmann::ordered_json out;
    out["dps"] = {{"events", encoded.stream.events.size()},
                  {"ops", dps::detail::ops_json(encoded.ops)}};
    out["lc"] = {{"events", lc.events.size()}, {"ops", dps::detail::ops_json(lc.ops)}};
    out["nyquist"] = {{"samples", signal.size()}, {"ops", dps::detail::ops_json(nyquist.ops)}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Behavioral simulator for a predictive-sampling ADC codec"};
    app.require_subcommand(1);

    CommonOpts sim_opts;
    double sim_delta_mv = 0.0;
    std::string sim_out, sim_config;
    auto* sim = app.add_subcommand("simulate", "Encode a signal into an event stream");
    add_signal_flags(*sim, sim_opts);
    add_codec_flags(*sim, sim_opts);
    sim->add_option("--delta-mv", sim_delta_mv, "Tracking window half-width in millivolts")
        ->required()
        ->check(CLI::PositiveNumber);
    sim->add_option("--out", sim_out, "Event file to write");
    sim->add_option("--config", sim_config, "Energy model override file (key=value lines)");

    std::string rec_events, rec_out;
    auto* rec = app.add_subcommand("reconstruct", "Rebuild a waveform CSV from an event stream");
    rec->add_option("--events", rec_events, "Event file to read")->required();
    rec->add_option("--out", rec_out, "Reconstructed signal CSV to write")->required();

    CommonOpts eval_opts;
    std::string eval_events, eval_config;
    auto* eval = app.add_subcommand("evaluate", "Score an event stream against its source signal");
    eval->add_option("--input", eval_opts.input, "Source signal CSV")->required();
    eval->add_option("--fs", eval_opts.fs_hz, "Sample rate override for one-column CSV input")
        ->check(CLI::PositiveNumber);
    eval->add_option("--events", eval_events, "Event file to read")->required();
    eval->add_option("--config", eval_config, "Energy model override file (key=value lines)");

    CommonOpts sweep_opts;
    std::vector<double> sweep_deltas;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Encode at several window widths, one CSV row each");
    add_signal_flags(*sweep, sweep_opts);
    add_codec_flags(*sweep, sweep_opts);
    sweep->add_option("--delta-mv-list", sweep_deltas, "Window half-widths in millivolts")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_out, "Sweep CSV to write")->required();

    CommonOpts cmp_opts;
    double cmp_delta_mv = 0.0, cmp_spacing_mv = 0.0;
    auto* cmp = app.add_subcommand("compare",
                                   "Event counts and op counts for predictive, level-crossing, "
                                   "and Nyquist sampling of one signal");
    add_signal_flags(*cmp, cmp_opts);
    add_codec_flags(*cmp, cmp_opts);
    cmp->add_option("--delta-mv", cmp_delta_mv, "Tracking window half-width in millivolts")
        ->required()
        ->check(CLI::PositiveNumber);
    cmp->add_option("--lc-spacing-mv", cmp_spacing_mv, "Level-crossing level spacing in millivolts")
        ->required()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return run_simulate(sim_opts, sim_delta_mv, sim_out, sim_config);
        if (rec->parsed()) return run_reconstruct(rec_events, rec_out);
        if (eval->parsed()) return run_evaluate(eval_opts, eval_events, eval_config);
        if (sweep->parsed()) return run_sweep(sweep_opts, sweep_deltas, sweep_out);
        if (cmp->parsed()) return run_compare(cmp_opts, cmp_delta_mv, cmp_spacing_mv);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
