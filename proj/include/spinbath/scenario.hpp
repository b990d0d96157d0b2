// scenario.hpp — Declarative scenario execution: parse a JSON config, run a
// named experiment, and emit machine-readable results (CSV + JSON report with a
// provenance block). No randomness at runtime: identical configs produce
// byte-identical outputs.

#pragma once

#include "spinbath/bath_rates.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinbath::cli {

// Configuration problems (malformed JSON, unknown keys, invariant violations).
// Mapped to exit code 2 by the command-line tool; runtime failures map to 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scenario { TwoQubitRates, CompassDecay, Subradiance, SteadyStateContrast };

struct ScenarioConfig {
    Scenario scenario = Scenario::CompassDecay;
    double j = 0.0;            // coupling (rad/s)
    double nu = 0.0;           // qubit Bohr frequency (rad/s)
    double gamma = 0.0;        // single-qubit spontaneous emission rate (rad/s)
    double temperature = 0.0;  // natural units (angular frequency)
    bath::Frame frame = bath::Frame::Interaction;
    bath::Profile spectral = bath::Profile::flat(1.0);
    bath::CouplingProfile coupling;
    double cross_coeff = 0.0;
    bool fifth_power = false;
    double t_max = 5.0;  // in units of 1/gamma
    int n_points = 201;
    std::string csv_path;   // resolved against the output directory
    std::string json_path;

    std::vector<std::string> defaults_applied;  // echoed in the provenance block
};

// Parse and validate a JSON config document; defaults (Ca+ preset derived) are
// applied for omitted keys and recorded in defaults_applied. Throws ConfigError
// with a field-qualified message on any problem.
ScenarioConfig parse_config(const std::string& json_text);

struct RunOutputs {
    std::filesystem::path csv_file;   // empty unless the scenario emits CSV
    std::filesystem::path json_file;
};

// Execute the configured scenario, writing outputs under `out_dir` (created if
// missing). Throws ConfigError for config-class problems and std::runtime_error
// for runtime failures (I/O, propagated module errors).
RunOutputs run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

// The resolved config as a JSON document (the same schema parse_config accepts).
std::string config_json(const ScenarioConfig& cfg);

// Ca+ preset constants as JSON (the `presets` subcommand).
std::string presets_json();

constexpr const char* kArtifactVersion = "1.0.0";

}  // namespace spinbath::cli
