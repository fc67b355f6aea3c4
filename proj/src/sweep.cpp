#include "qslmq/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "qslmq/errors.hpp"

namespace qslmq {

namespace {

void validate_spec(const SweepSpec& spec) {
    if (spec.omega_over_gamma.count < 2) throw ValidationError("omega grid count must be >= 2");
    if (!(spec.omega_over_gamma.start >= 0))
        throw ValidationError("omega grid start must be >= 0");
    if (!(spec.omega_over_gamma.stop > spec.omega_over_gamma.start))
        throw ValidationError("omega grid stop must exceed start");
    if (spec.lambda_list.empty() || spec.beta_list.empty())
        throw ValidationError("lambda_list and beta_list must be non-empty");
    for (double l : spec.lambda_list)
        if (!(l > 0)) throw ValidationError("lambda_list entries must be > 0");
}

SweepRow compute_row(const ModelParams& base, double omega) {
    SweepRow row;
    row.omega_over_gamma = omega;
    ModelParams p = base;
    p.omega_drive = omega;
    try {
        const EvolutionMetrics m = metrics(solve_cubic(derive(p)), p.tau);
        row.qsl_ratio = m.qsl_ratio;
        row.nm = m.nm;
        row.p_tau = m.p_tau;
        row.identity_residual = m.identity_residual;
        row.status = "ok";
    } catch (const Error& e) {
        const double nan = std::nan("");
        row.qsl_ratio = row.nm = row.p_tau = row.identity_residual = nan;
        row.status = "skipped: " + e.kind();
    }
    return row;
}

} // namespace

std::vector<SweepCurve> run_sweep(const SweepSpec& spec, int n_threads) {
    validate_spec(spec);
    {
        // Fail fast on invalid shared parameters instead of 601 skipped rows.
        ModelParams probe = spec.base;
        probe.lambda = spec.lambda_list.front();
        probe.beta = spec.beta_list.front();
        probe.omega_drive = 0.0;
        validate(probe);
    }

    std::vector<SweepCurve> curves;
    curves.reserve(spec.lambda_list.size() * spec.beta_list.size());
    for (double lambda : spec.lambda_list)
        for (double beta : spec.beta_list) {
            SweepCurve c;
            c.lambda = lambda;
            c.beta = beta;
            c.rows.resize(spec.omega_over_gamma.count);
            curves.push_back(std::move(c));
        }

    const std::size_t per_curve = static_cast<std::size_t>(spec.omega_over_gamma.count);
    const std::size_t total = curves.size() * per_curve;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            const std::size_t ci = task / per_curve;
            const int ri = static_cast<int>(task % per_curve);
            ModelParams base = spec.base;
            base.lambda = curves[ci].lambda;
            base.beta = curves[ci].beta;
            curves[ci].rows[ri] = compute_row(base, spec.omega_over_gamma.at(ri));
        }
    };

    int threads = n_threads > 0 ? n_threads : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<std::size_t>(threads, total));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return curves;
}

TimeSeries run_trace(const ModelParams& p, double horizon, int count) {
    if (!(horizon > 0)) throw ValidationError("trace horizon must be > 0");
    if (count < 2) throw ValidationError("trace count must be >= 2");
    const AmplitudeSolution sol = solve_cubic(derive(p));
    TimeSeries ts;
    ts.t.resize(count);
    ts.c1.resize(count);
    ts.c1_dot.resize(count);
    for (int i = 0; i < count; ++i) {
        const double t = horizon * static_cast<double>(i) / (count - 1);
        ts.t[i] = t;
        ts.c1[i] = c1_at(sol, t);
        ts.c1_dot[i] = c1_dot_at(sol, t);
    }
    return ts;
}

double find_critical_omega(const ModelParams& base, double omega_lo, double omega_hi) {
    if (!(omega_lo >= 0) || !(omega_hi > omega_lo))
        throw BracketInvalid("need 0 <= omega_lo < omega_hi");
    auto ratio_at = [&](double omega) {
        ModelParams p = base;
        p.omega_drive = omega;
        return metrics(solve_cubic(derive(p)), p.tau).qsl_ratio;
    };
    const double r_lo = ratio_at(omega_lo);
    const double r_hi = ratio_at(omega_hi);
    if (!(r_lo >= 1.0 - 1e-6)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "no transition in bracket: ratio at start %.17g already below 1 - 1e-6", r_lo);
        throw BracketInvalid(buf);
    }
    if (!(r_hi < 1.0 - 1e-6)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "no transition in bracket: ratio at end %.17g not below 1 - 1e-6", r_hi);
        throw BracketInvalid(buf);
    }
    double lo = omega_lo, hi = omega_hi;
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        (ratio_at(mid) < 1.0 - 1e-6 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace qslmq
