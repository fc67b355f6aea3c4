#include "qslmq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qslmq/errors.hpp"

namespace qslmq {

namespace {

void validate_config(const VolterraConfig& cfg) {
    if (!(cfg.step > 0)) throw ValidationError("step must be > 0");
    if (!(cfg.horizon > 0)) throw ValidationError("horizon must be > 0");
    if (cfg.step > cfg.horizon) throw ValidationError("step must not exceed horizon");
}

void warn_if_step_coarse(const ModelParams& p, const DerivedQuantities& d, double h) {
    try {
        const auto sol = solve_cubic(d);
        double s_max = 0.0;
        for (const cplx& s : sol.roots) s_max = std::max(s_max, std::abs(s));
        if (h * s_max > 0.1)
            std::fprintf(stderr,
                         "warning: volterra step %.3g coarse for max|s| = %.3g "
                         "(h max|s| = %.3g > 0.1)\n",
                         h, s_max, h * s_max);
    } catch (const NearDegenerateRoots&) {
        // No root scale available; the step check is best-effort only.
    }
    (void)p;
}

// KernelAt(m, j) returns F(t_m, t_j); RowPrep(m) refreshes any per-row cache.
template <class RowPrep, class KernelAt>
TimeSeries step_scheme(std::size_t n, double h, RowPrep&& prep_row, KernelAt&& f) {
    TimeSeries ts;
    ts.t.resize(n + 1);
    ts.c1.resize(n + 1);
    ts.c1_dot.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) ts.t[j] = static_cast<double>(j) * h;
    ts.c1[0] = 1.0;
    ts.c1_dot[0] = 0.0;

    for (std::size_t m = 1; m <= n; ++m) {
        prep_row(m);
        // Trapezoid over history: half weights at j = 0 and j = m; the j = m
        // term is the only part that moves during the corrector iteration.
        cplx hist = 0.5 * f(m, 0) * ts.c1[0];
        for (std::size_t j = 1; j < m; ++j) hist += f(m, j) * ts.c1[j];
        const cplx f_mm = f(m, m);

        cplx cur = ts.c1[m - 1] + h * ts.c1_dot[m - 1]; // explicit predictor
        double prev_update = std::numeric_limits<double>::infinity();
        int growth = 0;
        for (int it = 0; it < 60; ++it) {
            const cplx g_m = -h * (hist + 0.5 * f_mm * cur);
            const cplx next = ts.c1[m - 1] + 0.5 * h * (ts.c1_dot[m - 1] + g_m);
            const double update = std::abs(next - cur);
            cur = next;
            if (update <= 1e-15 * std::max(1.0, std::abs(cur))) break;
            if (update > prev_update) {
                if (++growth >= 5) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf,
                                  "corrector diverging at t = %.17g (update %.3e growing): "
                                  "reduce the step",
                                  ts.t[m], update);
                    throw StepTooLarge(buf);
                }
            } else {
                growth = 0;
            }
            prev_update = update;
        }
        ts.c1[m] = cur;
        ts.c1_dot[m] = -h * (hist + 0.5 * f_mm * cur);
    }
    return ts;
}

std::size_t step_count(const VolterraConfig& cfg) {
    const auto n = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.step));
    return std::max<std::size_t>(n, 1);
}

} // namespace

Rates TimeSeries::rates(std::size_t i) const {
    const cplx c = c1[i];
    if (std::abs(c) < 1e-13) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "|C1(%.17g)| = %.3e: rates diverge at amplitude zeros",
                      t[i], std::abs(c));
        throw AmplitudeZero(buf);
    }
    const cplx ratio = c1_dot[i] / c;
    return {-2.0 * std::real(ratio), -2.0 * std::imag(ratio)};
}

TimeSeries solve_volterra(const ModelParams& p, KernelKind kind, const VolterraConfig& cfg) {
    validate_config(cfg);
    const DerivedQuantities d = derive(p);
    const double h = cfg.step;
    const std::size_t n = step_count(cfg);
    warn_if_step_coarse(p, d, h);

    if (kind == KernelKind::Continuum) {
        // Stationary kernel: one value per offset serves the whole run.
        std::vector<cplx> by_offset(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            by_offset[k] = eval_continuum(d, static_cast<double>(k) * h);
        return step_scheme(
            n, h, [](std::size_t) {},
            [&](std::size_t m, std::size_t j) { return by_offset[m - j]; });
    }

    if (p.continuum())
        throw ValidationError("tau0 = inf: finite-cavity solve needs a finite tau0");
    // Non-stationary kernel: cache one row F(t_m, .) per step, nothing more.
    std::vector<cplx> row(n + 1);
    return step_scheme(
        n, h,
        [&](std::size_t m) {
            const double tm = static_cast<double>(m) * h;
            for (std::size_t j = 0; j <= m; ++j)
                row[j] = eval_finite_cavity(d, p, tm, static_cast<double>(j) * h);
        },
        [&](std::size_t, std::size_t j) { return row[j]; });
}

TimeSeries solve_volterra_general(const ModelParams& p,
                                  const std::function<cplx(double, double)>& kernel,
                                  const VolterraConfig& cfg) {
    validate_config(cfg);
    const DerivedQuantities d = derive(p);
    const double h = cfg.step;
    const std::size_t n = step_count(cfg);
    warn_if_step_coarse(p, d, h);

    std::vector<cplx> row(n + 1);
    return step_scheme(
        n, h,
        [&](std::size_t m) {
            const double tm = static_cast<double>(m) * h;
            for (std::size_t j = 0; j <= m; ++j)
                row[j] = kernel(tm, static_cast<double>(j) * h);
        },
        [&](std::size_t, std::size_t j) { return row[j]; });
}

double convergence_order(const ModelParams& p, KernelKind kind, const VolterraConfig& cfg) {
    validate_config(cfg);
    auto run = [&](double h) {
        VolterraConfig c = cfg;
        c.step = h;
        return solve_volterra(p, kind, c);
    };
    const TimeSeries s1 = run(cfg.step);
    const TimeSeries s2 = run(cfg.step / 2);
    const TimeSeries s4 = run(cfg.step / 4);

    double d1 = 0.0, d2 = 0.0;
    for (std::size_t j = 0; j < s1.size(); ++j)
        d1 = std::max(d1, std::abs(s1.c1[j] - s2.c1[2 * j]));
    for (std::size_t j = 0; j < s2.size(); ++j)
        d2 = std::max(d2, std::abs(s2.c1[j] - s4.c1[2 * j]));
    if (d2 == 0.0) return std::numeric_limits<double>::infinity(); // exact sentinel
    return std::log2(d1 / d2);
}

} // namespace qslmq
