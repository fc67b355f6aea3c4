#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qslmq/config.hpp"
#include "qslmq/csv.hpp"
#include "qslmq/errors.hpp"
#include "qslmq/sweep.hpp"

namespace {

constexpr const char* kKeys[] = {"omega0",      "gamma",       "lambda",      "omega_drive",
                                 "delta",       "beta",        "tau0",        "tau",
                                 "omega_start", "omega_stop",  "omega_count", "trace_horizon",
                                 "trace_count", "oracle_step"};

struct SubState {
    std::string config_path;
    std::string out_dir = ".";
    std::map<std::string, std::string> overrides; // raw text, parsed by apply_kv
};

void add_common(CLI::App* cmd, SubState& st) {
    cmd->add_option("--config", st.config_path, "key = value configuration file");
    cmd->add_option("--out", st.out_dir, "output directory");
    for (const char* key : kKeys)
        cmd->add_option("--" + std::string(key), st.overrides[key],
                        "override config key " + std::string(key));
}

qslmq::Config make_config(const CLI::App* cmd, const SubState& st) {
    qslmq::Config cfg;
    if (!st.config_path.empty()) cfg = qslmq::load_config_file(st.config_path);
    for (const auto& [key, value] : st.overrides)
        if (cmd->count("--" + key) > 0) qslmq::apply_kv(cfg, key, value);
    // Reject bad values even when the subcommand would overwrite them (sweep
    // replaces lambda and beta per curve); accepting and ignoring an invalid
    // flag hides user mistakes.
    qslmq::validate(cfg.params);
    return cfg;
}

std::string out_path(const SubState& st, const std::string& name) {
    std::filesystem::create_directories(st.out_dir);
    return (std::filesystem::path(st.out_dir) / name).string();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"moving driven qubit in a lossy cavity: speed limit and memory measures"};
    app.require_subcommand(1);

    SubState trace_st, sweep_st, crit_st;

    CLI::App* trace_cmd =
        app.add_subcommand("trace", "time trace of the survival amplitude and rates");
    add_common(trace_cmd, trace_st);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "speed limit ratio and memory measure over a drive grid");
    add_common(sweep_cmd, sweep_st);
    std::vector<double> lambda_list, beta_list;
    sweep_cmd->add_option("--lambda_list", lambda_list, "comma separated spectral widths")
        ->delimiter(',');
    sweep_cmd->add_option("--beta_list", beta_list, "comma separated velocity ratios")
        ->delimiter(',');

    CLI::App* crit_cmd =
        app.add_subcommand("critical", "bisect for the critical driving strength");
    add_common(crit_cmd, crit_st);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the cross-module checks");
    std::string level = "fast";
    verify_cmd->add_option("--level", level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (trace_cmd->parsed()) {
            const qslmq::Config cfg = make_config(trace_cmd, trace_st);
            const qslmq::TimeSeries ts =
                qslmq::run_trace(cfg.params, cfg.trace_horizon, cfg.trace_count);
            const std::string name = "trace_lambda" + qslmq::fmt_short(cfg.params.lambda) +
                                     "_omega" + qslmq::fmt_short(cfg.params.omega_drive) +
                                     "_beta" + qslmq::fmt_short(cfg.params.beta) + ".csv";
            const std::string path = out_path(trace_st, name);
            qslmq::write_file(path, qslmq::trace_csv(ts));
            std::printf("wrote %s\n", path.c_str());
            return 0;
        }
        if (sweep_cmd->parsed()) {
            const qslmq::Config cfg = make_config(sweep_cmd, sweep_st);
            qslmq::SweepSpec spec;
            spec.base = cfg.params;
            spec.omega_over_gamma = {cfg.omega_start, cfg.omega_stop, cfg.omega_count};
            if (sweep_cmd->count("--lambda_list") > 0) spec.lambda_list = lambda_list;
            if (sweep_cmd->count("--beta_list") > 0) spec.beta_list = beta_list;
            for (const qslmq::SweepCurve& curve : qslmq::run_sweep(spec)) {
                const std::string path =
                    out_path(sweep_st, qslmq::sweep_file_name(curve.lambda, curve.beta));
                qslmq::write_file(path, qslmq::sweep_csv(curve));
                std::printf("wrote %s\n", path.c_str());
            }
            return 0;
        }
        if (crit_cmd->parsed()) {
            const qslmq::Config cfg = make_config(crit_cmd, crit_st);
            const double omega_c =
                qslmq::find_critical_omega(cfg.params, cfg.omega_start, cfg.omega_stop);
            std::printf("omega_c = %s at lambda = %s, beta = %s\n",
                        qslmq::fmt17(omega_c).c_str(), qslmq::fmt17(cfg.params.lambda).c_str(),
                        qslmq::fmt17(cfg.params.beta).c_str());
            const std::string body = "lambda,beta,omega_c\n" + qslmq::fmt17(cfg.params.lambda) +
                                     "," + qslmq::fmt17(cfg.params.beta) + "," +
                                     qslmq::fmt17(omega_c) + "\n";
            const std::string path = out_path(crit_st, "critical.csv");
            qslmq::write_file(path, body);
            std::printf("wrote %s\n", path.c_str());
            return 0;
        }
        if (verify_cmd->parsed()) {
            const qslmq::VerifyReport rep = qslmq::run_verify(
                level == "full" ? qslmq::VerifyLevel::Full : qslmq::VerifyLevel::Fast);
            for (const qslmq::VerifyCheck& c : rep.checks)
                std::printf("%s  %-26s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                            c.detail.c_str());
            std::printf("%zu checks in %.1f s: %s\n", rep.checks.size(), rep.elapsed_seconds,
                        rep.all_pass() ? "all passed" : "FAILURES PRESENT");
            return rep.all_pass() ? 0 : 2;
        }
    } catch (const qslmq::Error& e) {
        std::fprintf(stderr, "error (%s): %s\n", e.kind().c_str(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
