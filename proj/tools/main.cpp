// spinbath — golden-rule rates and population dynamics for spin systems coupled
// to bosonic baths, in the lab frame and in interaction frames.
//
//   spinbath run      --config cfg.json [--out-dir DIR]
//   spinbath validate --config cfg.json
//   spinbath presets
//
// Exit codes: 0 success, 1 runtime failure, 2 config error.

#include "spinbath/scenario.hpp"

#include "CLI11.hpp"

#include <clocale>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw spinbath::cli::ConfigError("config error: cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");  // '.' radix in all numeric output

    CLI::App app{"golden-rule rate and population-dynamics scenarios for spin-bath systems"};
    app.set_version_flag("--version", spinbath::cli::kArtifactVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";

    auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
    run->add_option("--config", config_path, "path to the JSON config")->required();
    run->add_option("--out-dir", out_dir, "output directory (default: current directory)");

    auto* validate = app.add_subcommand("validate", "parse and validate a JSON config");
    validate->add_option("--config", config_path, "path to the JSON config")->required();

    auto* presets = app.add_subcommand("presets", "print the Ca+ preset constants as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help / --version
        }
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (presets->parsed()) {
            std::cout << spinbath::cli::presets_json();
            return 0;
        }
        const auto cfg = spinbath::cli::parse_config(read_file(config_path));
        if (validate->parsed()) {
            std::cout << spinbath::cli::config_json(cfg);
            return 0;
        }
        const auto outputs = spinbath::cli::run_scenario(cfg, out_dir);
        if (!outputs.csv_file.empty()) {
            std::cout << "wrote " << outputs.csv_file.string() << "\n";
        }
        std::cout << "wrote " << outputs.json_file.string() << "\n";
        return 0;
    } catch (const spinbath::cli::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
