#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "qslmq/errors.hpp"
#include "qslmq/oracle.hpp"

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

cplx undriven_c1(double gamma, double lambda, double t) {
    const cplx dd = std::sqrt(cplx(lambda * lambda - gamma * lambda, 0.0));
    return std::exp(cplx(-0.5 * lambda * t, 0.0)) *
           (std::cosh(0.5 * dd * t) + (lambda / dd) * std::sinh(0.5 * dd * t));
}

double worst_against_closed_form(double lambda, double step) {
    const TimeSeries ts =
        solve_volterra(params_for(lambda, 0.0, 0.0), KernelKind::Continuum, {step, 1.0});
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        worst = std::max(worst, std::abs(ts.c1[i] - undriven_c1(1.0, lambda, ts.t[i])));
    return worst;
}

} // namespace

TEST_CASE("volterra solution converges on the undriven closed form") {
    for (double lambda : {3.0, 0.01}) {
        CHECK(worst_against_closed_form(lambda, 1e-3) <= 1e-6);
        CHECK(worst_against_closed_form(lambda, 5e-4) <= 2.5e-7);
    }
}

TEST_CASE("empirical convergence order is second order") {
    const double ord =
        convergence_order(params_for(3.0, 5.0, 0.0), KernelKind::Continuum, {1e-3, 1.0});
    CHECK(ord >= 1.8);
    CHECK(ord <= 2.2);
}

TEST_CASE("general-kernel entry point reproduces the stationary fast path") {
    const ModelParams p = params_for(3.0, 5.0, 1e-9);
    const DerivedQuantities d = derive(p);
    const VolterraConfig cfg{1e-3, 1.0};
    const TimeSeries fast = solve_volterra(p, KernelKind::Continuum, cfg);
    const TimeSeries general = solve_volterra_general(
        p, [&d](double t, double t1) { return eval_continuum(d, t - t1); }, cfg);
    REQUIRE(fast.size() == general.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i)
        worst = std::max(worst, std::abs(fast.c1[i] - general.c1[i]));
    CHECK(worst <= 1e-12);
}

TEST_CASE("finite cavity with suppressed echoes tracks the continuum") {
    ModelParams p = params_for(3.0, 5.0, 1e-9);
    p.tau0 = 50.0 / p.lambda;
    const VolterraConfig cfg{1e-3, 1.0};
    const TimeSeries fin = solve_volterra(p, KernelKind::FiniteCavity, cfg);
    const TimeSeries con = solve_volterra(p, KernelKind::Continuum, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < fin.size(); ++i)
        worst = std::max(worst, std::abs(fin.c1[i] - con.c1[i]));
    CHECK(worst <= 1e-6);
}

TEST_CASE("active echoes change the dynamics") {
    ModelParams p = params_for(3.0, 5.0, 1e-9);
    p.tau0 = 0.3;
    const VolterraConfig cfg{1e-3, 1.0};
    const TimeSeries fin = solve_volterra(p, KernelKind::FiniteCavity, cfg);
    const TimeSeries con = solve_volterra(p, KernelKind::Continuum, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < fin.size(); ++i)
        worst = std::max(worst, std::abs(fin.c1[i] - con.c1[i]));
    CHECK(worst > 1e-6);
}

TEST_CASE("finite-cavity solve requires a finite transit time") {
    const ModelParams p = params_for(3.0, 5.0, 1e-9); // tau0 = inf
    CHECK_THROWS_AS((void)solve_volterra(p, KernelKind::FiniteCavity, VolterraConfig{1e-3, 1.0}),
                    ValidationError);
}

TEST_CASE("a grossly coarse step is refused rather than integrated") {
    const ModelParams p = params_for(100.0, 0.0, 0.0, 100.0);
    CHECK_THROWS_AS((void)solve_volterra(p, KernelKind::Continuum, VolterraConfig{10.0, 20.0}),
                    StepTooLarge);
}

TEST_CASE("solver configuration is validated") {
    const ModelParams p = params_for(3.0, 0.0, 0.0);
    CHECK_THROWS_AS((void)solve_volterra(p, KernelKind::Continuum, VolterraConfig{0.0, 1.0}),
                    ValidationError);
    CHECK_THROWS_AS((void)solve_volterra(p, KernelKind::Continuum, VolterraConfig{1e-3, -1.0}),
                    ValidationError);
    CHECK_THROWS_AS((void)solve_volterra(p, KernelKind::Continuum, VolterraConfig{2.0, 1.0}),
                    ValidationError);
}

TEST_CASE("zero coupling is solved exactly and reports the exact-order sentinel") {
    const ModelParams p = params_for(3.0, 5.0, 1e-9, 0.0);
    const TimeSeries ts = solve_volterra(p, KernelKind::Continuum, {1e-3, 1.0});
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(std::abs(ts.c1[i] - 1.0) == 0.0);
    CHECK(std::isinf(convergence_order(p, KernelKind::Continuum, {1e-3, 1.0})));
}

TEST_CASE("time series accessors expose population and rates") {
    TimeSeries ts;
    ts.t = {0.0, 1.0};
    ts.c1 = {cplx(0.6, 0.8), cplx(0.0, 0.0)};
    ts.c1_dot = {cplx(-0.5, 0.25), cplx(0.0, 0.0)};
    CHECK(ts.size() == 2);
    CHECK(ts.p(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ts.trace_distance(0) == ts.p(0));
    const Rates r = ts.rates(0);
    const cplx ratio = ts.c1_dot[0] / ts.c1[0];
    CHECK(r.decoherence == doctest::Approx(-2.0 * std::real(ratio)).epsilon(1e-15));
    CHECK(r.lamb_shift == doctest::Approx(-2.0 * std::imag(ratio)).epsilon(1e-15));
    CHECK_THROWS_AS((void)ts.rates(1), AmplitudeZero);
}
