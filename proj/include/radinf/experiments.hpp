#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace radinf::experiments {

using json = nlohmann::ordered_json;

// Raised for malformed configs (unknown experiment, unknown key, bad value);
// the CLI maps it to exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs one experiment from a flat config object {"experiment": name, ...}.
// Returns the result document {experiment, config_echo, results, pass_flags,
// wall_time}; every field except wall_time is a pure function of the config.
json run_experiment(const json& config);

// All pass_flags in a result document.
bool all_pass(const json& doc);

// Plot-ready CSV side table for experiments that define one (empty string
// otherwise).
std::string csv_table(const json& doc);

// The document minus its wall_time field, serialized; two runs of the same
// config compare equal on this string at any thread count.
std::string stable_dump(const json& doc);

}  // namespace radinf::experiments
