#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "qslmq/errors.hpp"
#include "qslmq/sweep.hpp"

namespace qslmq {

namespace {

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[240];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

ModelParams params_for(double lambda, double omega, double beta, double delta = 0.0,
                       double gamma = 1.0) {
    ModelParams p;
    p.lambda = lambda;
    p.omega_drive = omega;
    p.beta = beta;
    p.delta = delta;
    p.gamma = gamma;
    return p;
}

// Residue sum rules: the large-s expansion of the resolvent forces
// sum A = 1, sum A s = 0, sum A s^2 = -gamma lambda / 4.
VerifyCheck check_sum_rules() {
    VerifyCheck c{"sum-rules", false, ""};
    std::mt19937_64 rng(0x51a7c0de);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst0 = 0, worst1 = 0, worst2 = 0;
    for (int i = 0; i < 200; ++i) {
        const double lambda = std::exp(std::log(0.005) + u01(rng) * (std::log(10.0) - std::log(0.005)));
        const double omega = 30.0 * u01(rng);
        const double beta = 2e-9 * u01(rng);
        const double delta = -5.0 + 10.0 * u01(rng);
        const DerivedQuantities d = derive(params_for(lambda, omega, beta, delta));
        const AmplitudeSolution sol = solve_cubic(d);
        cplx s0 = 0, s1 = 0, s2 = 0;
        double s_max = 0;
        for (int k = 0; k < 3; ++k) {
            s0 += sol.residues[k];
            s1 += sol.residues[k] * sol.roots[k];
            s2 += sol.residues[k] * sol.roots[k] * sol.roots[k];
            s_max = std::max(s_max, std::abs(sol.roots[k]));
        }
        const double q = 0.25 * d.gamma_lambda();
        worst0 = std::max(worst0, std::abs(s0 - 1.0));
        worst1 = std::max(worst1, std::abs(s1) / std::max(s_max, 1e-300));
        worst2 = std::max(worst2, std::abs(s2 + q) / q);
    }
    c.pass = worst0 <= 1e-10 && worst1 <= 1e-8 && worst2 <= 1e-8;
    c.detail = fmt("max |sumA-1| = %.2e, |sumAs|/max|s| = %.2e, |sumAs2+gl/4| rel = %.2e",
                   worst0, worst1, worst2);
    return c;
}

// At delta = omega = beta = 0 the cubic factors and C1 has a two-root closed
// form; compare against it directly.
VerifyCheck check_closed_form() {
    VerifyCheck c{"closed-form-limit", false, ""};
    double worst = 0;
    for (double lambda : {3.0, 0.01}) {
        const ModelParams p = params_for(lambda, 0.0, 0.0);
        const AmplitudeSolution sol = solve_cubic(derive(p));
        const cplx disc = cplx(lambda * lambda - p.gamma * lambda, 0.0);
        const cplx dd = std::sqrt(disc);
        for (int i = 0; i <= 1000; ++i) {
            const double t = 10.0 * i / 1000.0;
            const cplx ref = std::exp(cplx(-0.5 * lambda * t, 0.0)) *
                             (std::cosh(0.5 * dd * t) + (lambda / dd) * std::sinh(0.5 * dd * t));
            worst = std::max(worst, std::abs(c1_at(sol, t) - ref));
        }
    }
    c.pass = worst <= 1e-10;
    c.detail = fmt("max |C1 - closed form| = %.2e on t in [0, 10]", worst);
    return c;
}

constexpr struct {
    double lambda, omega, beta;
} kOracleSets[6] = {{3.0, 0.0, 0.0},  {3.0, 5.0, 0.0},  {3.0, 5.0, 1e-9},
                    {0.01, 0.0, 0.0}, {0.01, 5.0, 0.0}, {0.01, 5.0, 1e-9}};

VerifyCheck check_oracle_equivalence() {
    VerifyCheck c{"oracle-equivalence", false, ""};
    double worst = 0;
    for (const auto& s : kOracleSets) {
        const ModelParams p = params_for(s.lambda, s.omega, s.beta);
        const AmplitudeSolution sol = solve_cubic(derive(p));
        const TimeSeries ts = solve_volterra(p, KernelKind::Continuum, {1e-3, 1.0});
        for (std::size_t j = 0; j < ts.size(); ++j)
            worst = std::max(worst, std::abs(ts.c1[j] - c1_at(sol, ts.t[j])));
    }
    c.pass = worst <= 1e-6;
    c.detail = fmt("max |analytic - volterra| = %.2e at h = 1e-3 over six sets", worst);
    return c;
}

VerifyCheck check_convergence_order() {
    VerifyCheck c{"convergence-order", false, ""};
    double lo = 1e300, hi = -1e300;
    for (const auto& s : kOracleSets) {
        const ModelParams p = params_for(s.lambda, s.omega, s.beta);
        const double ord = convergence_order(p, KernelKind::Continuum, {1e-3, 1.0});
        lo = std::min(lo, ord);
        hi = std::max(hi, ord);
    }
    c.pass = lo >= 1.8;
    c.detail = fmt("empirical order in [%.3f, %.3f] over six sets", lo, hi);
    return c;
}

VerifyCheck check_identity() {
    VerifyCheck c{"ratio-nm-identity", false, ""};
    SweepSpec spec;
    spec.omega_over_gamma = {0.0, 30.0, 61};
    spec.beta_list = {0.0, 1e-9};
    spec.lambda_list = {3.0, 0.01};
    double worst = 0;
    int n_ok = 0, n_degenerate = 0;
    bool skips_faithful = true;
    for (const SweepCurve& curve : run_sweep(spec))
        for (const SweepRow& r : curve.rows) {
            if (r.status == "ok") {
                ++n_ok;
                if (1.0 - r.p_tau > 1e-9) worst = std::max(worst, r.identity_residual);
                continue;
            }
            // Root clusters (tight gap at small lambda, beta = 0, large
            // drive) are skipped by design; replay the row to confirm the
            // recorded reason is the one the solver actually raises.
            bool reproduced = false;
            if (r.status == "skipped: NearDegenerateRoots") {
                try {
                    (void)solve_cubic(derive(params_for(curve.lambda, r.omega_over_gamma,
                                                        curve.beta)));
                } catch (const NearDegenerateRoots&) {
                    reproduced = true;
                } catch (const Error&) {
                }
            }
            if (reproduced)
                ++n_degenerate;
            else
                skips_faithful = false;
        }
    c.pass = skips_faithful && worst <= 1e-9;
    c.detail = fmt("max identity residual = %.2e over %.0f rows (%.0f degenerate skips)", worst,
                   static_cast<double>(n_ok), static_cast<double>(n_degenerate));
    if (!skips_faithful) c.detail += " (unexplained skipped rows)";
    return c;
}

// gamma = 0 keeps C1 pinned at 1; the ratio must refuse to evaluate.
VerifyCheck check_degenerate_gamma_zero() {
    VerifyCheck c{"degenerate-gamma-zero", false, ""};
    const ModelParams p = params_for(3.0, 5.0, 1e-9, 0.0, 0.0);
    try {
        (void)metrics(solve_cubic(derive(p)), p.tau);
        c.detail = "metrics unexpectedly produced a value";
    } catch (const NoEvolution&) {
        c.pass = true;
        c.detail = "metrics reported NoEvolution as expected";
    } catch (const Error& e) {
        c.detail = std::string("unexpected error kind: ") + e.kind();
    }
    return c;
}

VerifyCheck check_finite_kernel_suppression() {
    VerifyCheck c{"finite-kernel-suppression", false, ""};
    ModelParams p = params_for(3.0, 5.0, 0.0);
    p.tau0 = 50.0 / p.lambda; // lambda tau0 = 50 suppresses the echo terms
    const DerivedQuantities d = derive(p);
    double worst = 0;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= i; ++j) {
            const double t = 10.0 * i / 20.0;
            const double t1 = 10.0 * j / 20.0;
            worst = std::max(worst,
                             std::abs(eval_finite_cavity(d, p, t, t1) - eval_continuum(d, t - t1)));
        }
    c.pass = worst <= 1e-10;
    c.detail = fmt("max |finite - continuum| = %.2e at lambda tau0 = 50", worst);
    return c;
}

VerifyCheck check_finite_oracle() {
    VerifyCheck c{"finite-cavity-oracle", false, ""};
    ModelParams p = params_for(3.0, 5.0, 0.0);
    p.tau0 = 50.0 / p.lambda;
    const TimeSeries fin = solve_volterra(p, KernelKind::FiniteCavity, {1e-3, 1.0});
    const TimeSeries con = solve_volterra(p, KernelKind::Continuum, {1e-3, 1.0});
    double worst = 0;
    for (std::size_t j = 0; j < fin.size(); ++j)
        worst = std::max(worst, std::abs(fin.c1[j] - con.c1[j]));
    c.pass = worst <= 1e-6;
    c.detail = fmt("max |finite - continuum solution| = %.2e at lambda tau0 = 50", worst);
    return c;
}

} // namespace

VerifyReport run_verify(VerifyLevel level) {
    const auto t0 = std::chrono::steady_clock::now();
    VerifyReport rep;
    rep.level = level;
    rep.checks.push_back(check_sum_rules());
    rep.checks.push_back(check_closed_form());
    rep.checks.push_back(check_oracle_equivalence());
    rep.checks.push_back(check_convergence_order());
    rep.checks.push_back(check_identity());
    rep.checks.push_back(check_degenerate_gamma_zero());
    if (level == VerifyLevel::Full) {
        rep.checks.push_back(check_finite_kernel_suppression());
        rep.checks.push_back(check_finite_oracle());
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace qslmq
