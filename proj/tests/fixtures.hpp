#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "multiwise/configuration.hpp"
#include "multiwise/feature_model.hpp"
#include "multiwise/sampler.hpp"
#include "multiwise/uvl.hpp"

namespace fixtures {

// The running-example car model; data/car.uvl holds the same bytes.
inline constexpr const char* kCarUvl =
    "features\n"
    "    Car\n"
    "        mandatory\n"
    "            Carbody\n"
    "        optional\n"
    "            Radio\n"
    "                optional\n"
    "                    Ports\n"
    "                        or\n"
    "                            USB\n"
    "                            CD\n"
    "                    Navigation\n"
    "                    Bluetooth\n"
    "        mandatory\n"
    "            Gearbox\n"
    "                alternative\n"
    "                    Manual\n"
    "                    Automatic\n";

inline multiwise::FeatureTree car_tree() { return multiwise::parse_uvl(kCarUvl); }

inline multiwise::FeatureModel car_model() {
    return multiwise::compile_to_cnf(car_tree());
}

inline multiwise::GroupSpec car_groups() {
    multiwise::GroupSpec spec;
    spec.groups.push_back({"g1", 1, {"Car", "Radio", "Gearbox"}});
    spec.groups.push_back({"g2", 2, {"Carbody", "Manual", "Automatic"}});
    spec.default_t = 0;
    return spec;
}

/// Configuration selecting exactly `selected`, deselecting the rest.
inline multiwise::PartialConfiguration config_of(const multiwise::FeatureModel& model,
                                                 const std::vector<std::string>& selected) {
    multiwise::PartialConfiguration config(model.feature_count());
    for (int v = 1; v <= model.feature_count(); ++v) config.deselect(v);
    for (const std::string& name : selected) config.select(model.require_var(name));
    return config;
}

/// The two configurations the worked example reaches after its first group.
inline multiwise::Sample worked_example_pair(const multiwise::FeatureModel& model) {
    multiwise::Sample sample;
    sample.configurations.push_back(
        config_of(model, {"Car", "Carbody", "Gearbox", "Manual"}));
    sample.configurations.push_back(
        config_of(model, {"Car", "Carbody", "Radio", "Gearbox", "Automatic"}));
    return sample;
}

inline std::vector<int> vars_of(const multiwise::FeatureModel& model,
                                const std::vector<std::string>& names) {
    std::vector<int> vars;
    for (const std::string& name : names) vars.push_back(model.require_var(name));
    return vars;
}

// ---------------------------------------------------------------------------
// Subprocess / filesystem helpers for CLI-level tests

#ifndef MULTIWISE_CLI_PATH
#define MULTIWISE_CLI_PATH ""
#endif
#ifndef MULTIWISE_DATA_DIR
#define MULTIWISE_DATA_DIR ""
#endif

inline std::string cli_path() { return MULTIWISE_CLI_PATH; }
inline std::filesystem::path data_dir() { return MULTIWISE_DATA_DIR; }

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout
    std::string errors;  // stderr
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

class TempDir {
public:
    TempDir() {
        std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() /
                ("multiwise_test_" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Runs an arbitrary shell command, capturing stdout/stderr and exit code.
inline CommandResult run_raw(const std::string& command_line) {
    static int counter = 0;
    std::filesystem::path out =
        std::filesystem::temp_directory_path() /
        ("multiwise_out_" + std::to_string(::getpid()) + "_" + std::to_string(counter));
    std::filesystem::path err = out;
    err += ".err";
    ++counter;

    std::string command = command_line + " >" + out.string() + " 2>" + err.string();
    int status = std::system(command.c_str());

    CommandResult result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    result.output = slurp(out);
    result.errors = slurp(err);
    std::filesystem::remove(out);
    std::filesystem::remove(err);
    return result;
}

/// Runs the CLI with the given argument string.
inline CommandResult run_cli(const std::string& args) {
    return run_raw("\"" + cli_path() + "\" " + args);
}

}  // namespace fixtures
