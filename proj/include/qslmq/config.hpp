#pragma once

#include <string>

#include "qslmq/model.hpp"

namespace qslmq {

// Flat key = value configuration; every key maps to exactly one field here.
struct Config {
    ModelParams params;
    double omega_start = 0.0;
    double omega_stop = 30.0;
    int omega_count = 601;
    double trace_horizon = 10.0;
    int trace_count = 1001;
    double oracle_step = 1e-3;
};

// Applies one key/value pair; unknown keys and unparsable values are
// ConfigError. tau0 additionally accepts the word "infinite".
void apply_kv(Config& c, const std::string& key, const std::string& value);

// Parses a file of "key = value" lines; '#' starts a comment, blank lines are
// ignored. Later occurrences of a key win.
Config load_config_file(const std::string& path);

} // namespace qslmq
