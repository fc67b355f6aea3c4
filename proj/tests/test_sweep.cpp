#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "qslmq/config.hpp"
#include "qslmq/csv.hpp"
#include "qslmq/errors.hpp"
#include "qslmq/sweep.hpp"

using namespace qslmq;

namespace {

ModelParams params_for(double lambda, double omega, double beta, double gamma = 1.0) {
    ModelParams p;
    p.lambda = lambda;
    p.omega_drive = omega;
    p.beta = beta;
    p.gamma = gamma;
    return p;
}

const std::vector<double> kBetaList{0.0, 5e-10, 1e-9, 1.5e-9};

// Decoherence rate samples over (0, horizon], skipping near-zero amplitudes
// where the rate is singular.
std::vector<double> gamma_samples(const ModelParams& p, double horizon, int count) {
    const TimeSeries ts = run_trace(p, horizon, count);
    std::vector<double> out;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (std::abs(ts.c1[i]) <= 1e-6) continue;
        out.push_back(ts.rates(i).decoherence);
    }
    return out;
}

} // namespace

TEST_CASE("trace samples the closed-form amplitude on a uniform grid") {
    const ModelParams p = params_for(3.0, 5.0, 1e-9);
    const TimeSeries ts = run_trace(p, 2.0, 21);
    REQUIRE(ts.size() == 21);
    CHECK(ts.t.front() == 0.0);
    CHECK(ts.t.back() == doctest::Approx(2.0).epsilon(1e-15));
    const AmplitudeSolution sol = solve_cubic(derive(p));
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(std::abs(ts.c1[i] - c1_at(sol, ts.t[i])) == 0.0);
        CHECK(std::abs(ts.c1_dot[i] - c1_dot_at(sol, ts.t[i])) == 0.0);
    }
    CHECK_THROWS_AS((void)run_trace(p, 0.0, 21), ValidationError);
    CHECK_THROWS_AS((void)run_trace(p, 2.0, 1), ValidationError);
}

TEST_CASE("weak coupling keeps the decoherence rate positive at any speed") {
    for (double beta : kBetaList) {
        const auto gs = gamma_samples(params_for(3.0, 0.0, beta), 10.0, 1001);
        REQUIRE(!gs.empty());
        for (double g : gs) CHECK(g > 0.0);
    }
}

TEST_CASE("strong coupling turns the decoherence rate negative in places") {
    for (double beta : kBetaList) {
        const auto gs = gamma_samples(params_for(0.01, 0.0, beta), 200.0, 2001);
        double lo = 1e300;
        for (double g : gs) lo = std::min(lo, g);
        CHECK(lo < 0.0);
    }
}

TEST_CASE("a faster qubit decoheres more slowly over the first lobe") {
    double prev = 1e300;
    for (double beta : kBetaList) {
        const auto gs = gamma_samples(params_for(0.01, 0.0, beta), 30.0, 301);
        double peak = 0.0;
        for (double g : gs) peak = std::max(peak, std::abs(g));
        CHECK(peak < prev);
        prev = peak;
    }
}

TEST_CASE("small-time decoherence rate grows like gamma lambda t / 2") {
    for (double lambda : {3.0, 0.01}) {
        const TimeSeries ts = run_trace(params_for(lambda, 0.0, 0.0), 1e-4, 2);
        const double slope = ts.rates(1).decoherence / 1e-4;
        CHECK(slope == doctest::Approx(0.5 * lambda).epsilon(0.01));
    }
}

TEST_CASE("sweep rows are deterministic, ordered, and thread-count independent") {
    SweepSpec spec;
    spec.omega_over_gamma = {0.0, 30.0, 41};
    spec.lambda_list = {3.0};
    spec.beta_list = {0.0, 1e-9};
    const auto serial = run_sweep(spec, 1);
    const auto pooled = run_sweep(spec, 3);
    REQUIRE(serial.size() == 2);
    REQUIRE(pooled.size() == 2);
    for (std::size_t c = 0; c < serial.size(); ++c) {
        CHECK(serial[c].lambda == 3.0);
        CHECK(serial[c].beta == spec.beta_list[c]);
        REQUIRE(serial[c].rows.size() == 41);
        for (std::size_t i = 0; i < 41; ++i) {
            const SweepRow& a = serial[c].rows[i];
            const SweepRow& b = pooled[c].rows[i];
            CHECK(a.omega_over_gamma == spec.omega_over_gamma.at(static_cast<int>(i)));
            CHECK(a.status == "ok");
            CHECK(b.status == "ok");
            CHECK(a.qsl_ratio == b.qsl_ratio);
            CHECK(a.nm == b.nm);
            CHECK(a.p_tau == b.p_tau);
            CHECK(a.identity_residual == b.identity_residual);
            CHECK(a.qsl_ratio > 0.0);
            CHECK(a.qsl_ratio <= 1.0);
            CHECK(a.nm >= 0.0);
            if (1.0 - a.p_tau > 1e-9) CHECK(a.identity_residual <= 1e-9);
        }
    }
}

TEST_CASE("sweep rows below the transition sit at ratio one") {
    const double omega_c = find_critical_omega(params_for(3.0, 0.0, 0.0), 0.0, 10.0);
    SweepSpec spec;
    spec.omega_over_gamma = {0.0, 10.0, 101};
    spec.lambda_list = {3.0};
    spec.beta_list = {0.0};
    const auto curves = run_sweep(spec);
    for (const SweepRow& r : curves[0].rows)
        if (r.omega_over_gamma < omega_c) CHECK(std::abs(r.qsl_ratio - 1.0) <= 1e-6);
}

TEST_CASE("strong-coupling ratio drops and then oscillates with the drive") {
    SweepSpec spec;
    spec.omega_over_gamma = {0.0, 30.0, 301};
    spec.lambda_list = {0.01};
    spec.beta_list = {0.0};
    const auto rows = run_sweep(spec)[0].rows;
    std::size_t first_drop = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].qsl_ratio < 0.9) {
            first_drop = i;
            break;
        }
    REQUIRE(first_drop < rows.size());
    int turns = 0;
    double prev_diff = 0.0;
    for (std::size_t i = first_drop + 1; i < rows.size(); ++i) {
        const double diff = rows[i].qsl_ratio - rows[i - 1].qsl_ratio;
        if (diff * prev_diff < 0.0) ++turns;
        if (diff != 0.0) prev_diff = diff;
    }
    CHECK(turns >= 4);
}

TEST_CASE("per-row failures are recorded without aborting the sweep") {
    SweepSpec spec;
    spec.omega_over_gamma = {0.0, 10.0, 5};
    spec.lambda_list = {3.0};
    spec.base.gamma = 0.0;

    // beta > 0 keeps the roots separated; the amplitude just never moves.
    spec.beta_list = {1e-9};
    const auto still = run_sweep(spec);
    for (const SweepRow& r : still[0].rows) {
        CHECK(r.status == "skipped: NoEvolution");
        CHECK(std::isnan(r.qsl_ratio));
        CHECK(std::isnan(r.nm));
    }

    // beta = 0 with gamma = 0 collapses the cubic instead.
    spec.beta_list = {0.0};
    const auto collapsed = run_sweep(spec);
    for (const SweepRow& r : collapsed[0].rows)
        CHECK(r.status == "skipped: NearDegenerateRoots");
}

TEST_CASE("sweep specs are validated") {
    SweepSpec spec;
    spec.omega_over_gamma = {0.0, 30.0, 1};
    CHECK_THROWS_AS((void)run_sweep(spec), ValidationError);
    spec = SweepSpec{};
    spec.omega_over_gamma = {5.0, 5.0, 10};
    CHECK_THROWS_AS((void)run_sweep(spec), ValidationError);
    spec = SweepSpec{};
    spec.lambda_list = {};
    CHECK_THROWS_AS((void)run_sweep(spec), ValidationError);
    spec = SweepSpec{};
    spec.lambda_list = {-1.0};
    CHECK_THROWS_AS((void)run_sweep(spec), ValidationError);
}

TEST_CASE("critical drive bisection brackets the ratio transition") {
    const double w3 = find_critical_omega(params_for(3.0, 0.0, 0.0), 0.0, 10.0);
    CHECK(w3 > 5.0);
    CHECK(w3 < 7.0);
    const double w10 = find_critical_omega(params_for(10.0, 0.0, 0.0), 0.0, 25.0);
    CHECK(w10 > w3);

    ModelParams p = params_for(3.0, 0.0, 0.0);
    CHECK_THROWS_AS((void)find_critical_omega(p, 0.0, 1.0), BracketInvalid);  // no transition yet
    CHECK_THROWS_AS((void)find_critical_omega(p, 8.0, 10.0), BracketInvalid); // already past it
    CHECK_THROWS_AS((void)find_critical_omega(p, 5.0, 5.0), BracketInvalid);  // empty bracket
}

TEST_CASE("csv output is byte-stable and carries the fixed headers") {
    SweepSpec spec;
    spec.omega_over_gamma = {0.0, 12.0, 13};
    spec.lambda_list = {3.0};
    spec.beta_list = {1e-9};
    const std::string a = sweep_csv(run_sweep(spec)[0]);
    const std::string b = sweep_csv(run_sweep(spec)[0]);
    CHECK(a == b);
    CHECK(a.rfind("omega_over_gamma,qsl_ratio,nm,p_tau,identity_residual,status\n", 0) == 0);
    // 13 rows + header, each line with 5 commas
    std::size_t lines = 0;
    for (char ch : a)
        if (ch == '\n') ++lines;
    CHECK(lines == 14);
}

TEST_CASE("seventeen significant digits round-trip exactly") {
    for (double v : {1.0 / 3.0, 0.1, 6.03, 1.53e9, -2.5e-7, 0.0, 1e-300}) {
        const std::string s = fmt17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("output file names encode the curve parameters compactly") {
    CHECK(sweep_file_name(3.0, 0.0) == "sweep_lambda3_beta0.csv");
    CHECK(sweep_file_name(0.01, 1.5e-9) == "sweep_lambda0.01_beta1.5e-09.csv");
    CHECK(sweep_file_name(10.0, 5e-10) == "sweep_lambda10_beta5e-10.csv");
}

TEST_CASE("trace csv marks amplitude zeros as skipped") {
    TimeSeries ts;
    ts.t = {0.0, 1.0};
    ts.c1 = {cplx(1.0, 0.0), cplx(0.0, 0.0)};
    ts.c1_dot = {cplx(-0.75, 0.0), cplx(0.0, 0.0)};
    const std::string csv = trace_csv(ts);
    CHECK(csv.rfind("t,re_c1,im_c1,p,decoherence_rate,lamb_shift,status\n", 0) == 0);
    CHECK(csv.find(",ok\n") != std::string::npos);
    CHECK(csv.find("skipped: AmplitudeZero") != std::string::npos);
    CHECK(csv.find("1.5,") != std::string::npos); // -2 Re(-0.75 / 1)
}

TEST_CASE("config keys map onto parameters and reject junk") {
    Config c;
    apply_kv(c, "omega0", "2e9");
    apply_kv(c, "gamma", "0.5");
    apply_kv(c, "lambda", "0.05");
    apply_kv(c, "omega_drive", "7");
    apply_kv(c, "delta", "-2");
    apply_kv(c, "beta", "1.5e-9");
    apply_kv(c, "tau0", "0.25");
    apply_kv(c, "tau", "2");
    apply_kv(c, "omega_start", "1");
    apply_kv(c, "omega_stop", "20");
    apply_kv(c, "omega_count", "201");
    apply_kv(c, "trace_horizon", "50");
    apply_kv(c, "trace_count", "501");
    apply_kv(c, "oracle_step", "5e-4");
    CHECK(c.params.omega0 == 2e9);
    CHECK(c.params.gamma == 0.5);
    CHECK(c.params.lambda == 0.05);
    CHECK(c.params.omega_drive == 7.0);
    CHECK(c.params.delta == -2.0);
    CHECK(c.params.beta == 1.5e-9);
    CHECK(c.params.tau0 == 0.25);
    CHECK(c.params.tau == 2.0);
    CHECK(c.omega_start == 1.0);
    CHECK(c.omega_stop == 20.0);
    CHECK(c.omega_count == 201);
    CHECK(c.trace_horizon == 50.0);
    CHECK(c.trace_count == 501);
    CHECK(c.oracle_step == 5e-4);

    apply_kv(c, "tau0", "infinite");
    CHECK(std::isinf(c.params.tau0));

    CHECK_THROWS_AS(apply_kv(c, "omega", "1"), ConfigError);
    CHECK_THROWS_AS(apply_kv(c, "gamma", "fast"), ConfigError);
    CHECK_THROWS_AS(apply_kv(c, "gamma", "1.5x"), ConfigError);
    CHECK_THROWS_AS(apply_kv(c, "omega_count", "0"), ConfigError);
    CHECK_THROWS_AS(apply_kv(c, "omega_count", "3.5"), ConfigError);
}

TEST_CASE("config files parse comments, blanks, and later-wins overrides") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "qslmq_test_config.txt";
    {
        std::ofstream out(path);
        out << "# sweep setup\n";
        out << "lambda = 0.01\n";
        out << "\n";
        out << "beta = 1e-9   # fastest curve\n";
        out << "omega_count = 301\n";
        out << "lambda = 5\n";
    }
    const Config c = load_config_file(path.string());
    CHECK(c.params.lambda == 5.0);
    CHECK(c.params.beta == 1e-9);
    CHECK(c.omega_count == 301);
    CHECK(c.params.tau == 1.0); // untouched default

    {
        std::ofstream out(path);
        out << "lambda\n";
    }
    CHECK_THROWS_AS((void)load_config_file(path.string()), ConfigError);
    {
        std::ofstream out(path);
        out << "lambda =\n";
    }
    CHECK_THROWS_AS((void)load_config_file(path.string()), ConfigError);
    fs::remove(path);
    CHECK_THROWS_AS((void)load_config_file(path.string()), ConfigError);
}
