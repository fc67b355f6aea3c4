#pragma once

#include <string>
#include <vector>

#include "qslmq/measures.hpp"
#include "qslmq/model.hpp"
#include "qslmq/oracle.hpp"

namespace qslmq {

struct GridSpec {
    double start = 0.0;
    double stop = 30.0;
    int count = 601;

    double at(int i) const {
        return start + (stop - start) * static_cast<double>(i) / (count - 1);
    }
};

// One curve family per (lambda, beta); omega_drive runs over the grid.
struct SweepSpec {
    ModelParams base;
    GridSpec omega_over_gamma;
    std::vector<double> beta_list{0.0, 5e-10, 1e-9, 1.5e-9};
    std::vector<double> lambda_list{3.0, 0.01};
};

struct SweepRow {
    double omega_over_gamma = 0.0;
    double qsl_ratio = 0.0;
    double nm = 0.0;
    double p_tau = 0.0;
    double identity_residual = 0.0;
    std::string status = "ok"; // "ok" or "skipped: <error kind>"
};

struct SweepCurve {
    double lambda = 3.0;
    double beta = 0.0;
    std::vector<SweepRow> rows;
};

// Rows are independent pure computations dispatched to a worker pool; output
// ordering is fixed (lambda, beta, omega) and identical to a serial run.
// Per-row failures land in status, never abort the sweep. n_threads = 0 picks
// the hardware concurrency.
std::vector<SweepCurve> run_sweep(const SweepSpec& spec, int n_threads = 0);

// Closed-form amplitude sampled on a uniform grid, horizon > 0, count >= 2.
TimeSeries run_trace(const ModelParams& p, double horizon, int count);

// Bisection on the indicator [qsl_ratio < 1 - 1e-6] to resolution 1e-4.
// Requires the ratio to sit at 1 (within 1e-6) at omega_lo and below 1 - 1e-6
// at omega_hi, else BracketInvalid.
double find_critical_omega(const ModelParams& base, double omega_lo, double omega_hi);

enum class VerifyLevel { Fast, Full };

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    VerifyLevel level = VerifyLevel::Fast;
    std::vector<VerifyCheck> checks;
    double elapsed_seconds = 0.0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Cross-module consistency suites (sum rules, closed-form limits, oracle
// equivalence, convergence order, ratio/N identity, degenerate inputs; Full
// adds the finite-cavity checks). Failures are report content, not errors.
VerifyReport run_verify(VerifyLevel level);

} // namespace qslmq
