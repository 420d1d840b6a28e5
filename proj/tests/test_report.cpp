#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <dps/core.hpp>
#include <dps/report.hpp>
#include <dps/signal.hpp>

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Minimal structural validator for the subset of JSON Schema the shipped
// schema uses: type, properties, required, additionalProperties: false.
bool validate(const json& schema, const ordered_json& value, std::string path,
              std::vector<std::string>& errors) {
    bool ok = true;
    const std::string type = schema.value("type", "");
    if (type == "object") {
        if (!value.is_object()) {
            errors.push_back(path + ": expected object");
            return false;
        }
        const auto& props = schema.value("properties", json::object());
        if (schema.contains("required")) {
            for (const auto& key : schema["required"]) {
                if (!value.contains(key.get<std::string>())) {
                    errors.push_back(path + ": missing required key " + key.get<std::string>());
                    ok = false;
                }
            }
        }
        if (schema.value("additionalProperties", json(true)) == json(false)) {
            for (const auto& [key, sub] : value.items()) {
                (void)sub;
                if (!props.contains(key)) {
                    errors.push_back(path + ": unexpected key " + key);
                    ok = false;
                }
            }
        }
        for (const auto& [key, sub_schema] : props.items()) {
            if (value.contains(key))
                ok = validate(sub_schema, value.at(key), path + "/" + key, errors) && ok;
        }
    } else if (type == "integer") {
        if (!value.is_number_integer() && !value.is_number_unsigned()) {
            errors.push_back(path + ": expected integer");
            ok = false;
        }
    } else if (type == "number") {
        if (!value.is_number()) {
            errors.push_back(path + ": expected number");
            ok = false;
        }
    } else if (type == "string") {
        if (!value.is_string()) {
            errors.push_back(path + ": expected string");
            ok = false;
        }
    }
    return ok;
}

json load_schema() {
    std::ifstream in(std::string(DPS_DOCS_DIR) + "/report.schema.json");
    REQUIRE(in.good());
    return json::parse(in);
}

ordered_json dc_report() {
    const dps::AdcConfig adc(10, 0.0, 1.8);
    const auto sig = dps::gen_sine(1.0, 0.0, 0.9, 1000.0, 1.0);
    const auto enc = dps::encode(sig, dps::DpsConfig(adc, 0.01, 10));
    return dps::build_run_report(sig, enc);
}

} // namespace

TEST_CASE("the DC report carries the hand-computed numbers", "[report]") {
    const auto report = dc_report();

    CHECK(report["config"]["bits"] == 10);
    CHECK(report["config"]["v_min"] == 0.0);
    CHECK(report["config"]["v_max"] == 1.8);
    CHECK(report["config"]["lsb_volts"] == 1.8 / 1024.0);
    CHECK(report["config"]["fs_hz"] == 1000.0);
    CHECK(report["config"]["delta_volts"] == 0.01);
    CHECK(report["config"]["delta_code"] == 6);
    CHECK(report["config"]["timestamp_bits"] == 10);

    CHECK(report["signal"]["total_samples"] == 1000);
    CHECK(report["signal"]["duration_s"] == 1.0);

    CHECK(report["events"]["count"] == 2);
    CHECK(report["events"]["event_bits"] == 20);
    CHECK(report["events"]["compression_factor"] == 250.0);

    CHECK(report["reconstruction"]["rms_error_volts"] == 0.0);

    CHECK(report["ops"]["dps"]["window_comparisons"] == 1996);
    CHECK(report["ops"]["dps"]["sar_bit_comparisons"] == 20);
    CHECK(report["ops"]["dps"]["dac_settings"] == 1996);
    CHECK(report["ops"]["dps"]["digital_cycles"] == 1000);
    CHECK(report["ops"]["dps"]["sar_conversions"] == 2);

    CHECK(report["ops"]["nyquist"]["window_comparisons"] == 0);
    CHECK(report["ops"]["nyquist"]["sar_bit_comparisons"] == 10000);
    CHECK(report["ops"]["nyquist"]["sar_conversions"] == 1000);

    CHECK(report["energy"]["dps"]["total"] == 3214.0);
    CHECK(report["energy"]["nyquist"]["total"] == 10000.0);
    CHECK(report["energy"]["power_saving_factor"].get<double>() ==
          Catch::Approx(0.6786).margin(1e-12));
}

TEST_CASE("report keys keep a stable order", "[report]") {
    const auto report = dc_report();

    std::vector<std::string> top;
    for (const auto& [key, value] : report.items()) {
        (void)value;
        top.push_back(key);
    }
    CHECK(top == std::vector<std::string>{"config", "signal", "events", "reconstruction", "ops",
                                          "energy"});

    std::vector<std::string> cfg;
    for (const auto& [key, value] : report["config"].items()) {
        (void)value;
        cfg.push_back(key);
    }
    CHECK(cfg == std::vector<std::string>{"bits", "v_min", "v_max", "lsb_volts", "fs_hz",
                                          "delta_volts", "delta_code", "timestamp_bits"});
}

TEST_CASE("reports validate against the shipped schema", "[report]") {
    const auto schema = load_schema();

    const auto check_valid = [&](const ordered_json& report) {
        std::vector<std::string> errors;
        const bool ok = validate(schema, report, "", errors);
        CAPTURE(errors);
        CHECK(ok);
        CHECK(errors.empty());
    };

    check_valid(dc_report());

    const dps::AdcConfig adc(10, 0.0, 1.8);
    const auto sine = dps::gen_sine(10.0, 0.3, 0.9, 1000.0, 1.0);
    dps::EnergyModel model;
    model.e_dac_setting = 0.75;
    check_valid(dps::build_run_report(sine, dps::encode(sine, dps::DpsConfig(adc, 0.005, 10)),
                                      model));
}

TEST_CASE("the validator itself rejects shape violations", "[report]") {
    const auto schema = load_schema();
    auto report = dc_report();

    SECTION("missing required key") {
        report.erase("energy");
        std::vector<std::string> errors;
        CHECK(!validate(schema, report, "", errors));
    }

    SECTION("unexpected key") {
        report["surplus"] = 1;
        std::vector<std::string> errors;
        CHECK(!validate(schema, report, "", errors));
    }

    SECTION("wrong scalar type") {
        report["events"]["count"] = "two";
        std::vector<std::string> errors;
        CHECK(!validate(schema, report, "", errors));
    }
}

TEST_CASE("the energy model echo follows the overrides", "[report]") {
    const dps::AdcConfig adc(10, 0.0, 1.8);
    const auto sig = dps::gen_sine(1.0, 0.0, 0.9, 1000.0, 1.0);
    const auto enc = dps::encode(sig, dps::DpsConfig(adc, 0.01, 10));
    dps::EnergyModel model;
    model.e_sar_bit = 3.0;
    const auto report = dps::build_run_report(sig, enc, model);

    CHECK(report["energy"]["model"]["e_sar_bit"] == 3.0);
    CHECK(report["energy"]["dps"]["sar_bit_comparisons"] == 60.0);
    CHECK(report["energy"]["nyquist"]["sar_bit_comparisons"] == 30000.0);
}
