#include "qslmq/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>

#include "qslmq/errors.hpp"

namespace qslmq {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError(key + ": cannot parse '" + value + "' as a number");
    return v;
}

int parse_count(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE || v < 1 || v > 100000000)
        throw ConfigError(key + ": cannot parse '" + value + "' as a positive count");
    return static_cast<int>(v);
}

} // namespace

void apply_kv(Config& c, const std::string& key, const std::string& value) {
    if (key == "omega0") c.params.omega0 = parse_double(key, value);
    else if (key == "gamma") c.params.gamma = parse_double(key, value);
    else if (key == "lambda") c.params.lambda = parse_double(key, value);
    else if (key == "omega_drive") c.params.omega_drive = parse_double(key, value);
    else if (key == "delta") c.params.delta = parse_double(key, value);
    else if (key == "beta") c.params.beta = parse_double(key, value);
    else if (key == "tau0") c.params.tau0 = (value == "infinite") ? kContinuumTau0
                                                                  : parse_double(key, value);
    else if (key == "tau") c.params.tau = parse_double(key, value);
    else if (key == "omega_start") c.omega_start = parse_double(key, value);
    else if (key == "omega_stop") c.omega_stop = parse_double(key, value);
    else if (key == "omega_count") c.omega_count = parse_count(key, value);
    else if (key == "trace_horizon") c.trace_horizon = parse_double(key, value);
    else if (key == "trace_count") c.trace_count = parse_count(key, value);
    else if (key == "oracle_step") c.oracle_step = parse_double(key, value);
    else throw ConfigError("unknown config key: " + key);
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Config c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_kv(c, key, value);
    }
    return c;
}

} // namespace qslmq
