#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qslmq/amplitude.hpp"
#include "qslmq/kernel.hpp"
#include "qslmq/model.hpp"

namespace qslmq {

// Direct time stepping of C1'(t) = -int_0^t F(t, t1) C1(t1) dt1, used as
// ground truth for the closed-form amplitude.
struct VolterraConfig {
    double step = 1e-3;   // uniform h, units of 1/gamma
    double horizon = 1.0; // final time T
    enum class Scheme { TrapezoidalPredictorCorrector };
    Scheme scheme = Scheme::TrapezoidalPredictorCorrector;
};

// Uniform grid with per-sample amplitude and its derivative (the solver gets
// C1' for free from the memory integral; the analytic path evaluates it).
struct TimeSeries {
    std::vector<double> t;
    std::vector<cplx> c1;
    std::vector<cplx> c1_dot;

    std::size_t size() const { return t.size(); }
    double p(std::size_t i) const { return std::norm(c1[i]); }
    // Trace distance of the optimal dressed-basis pair equals the population.
    double trace_distance(std::size_t i) const { return p(i); }
    Rates rates(std::size_t i) const; // throws AmplitudeZero near zeros
};

// Second-order product-integration stepping: explicit predictor, then an
// iterated trapezoidal corrector over the full memory integral. Throws
// StepTooLarge when the corrector update grows five iterations in a row.
TimeSeries solve_volterra(const ModelParams& p, KernelKind kind, const VolterraConfig& cfg);

// Same scheme with an arbitrary kernel F(t, t1); the KernelKind front end
// dispatches here (Continuum additionally exploits stationarity to cache
// kernel values by offset).
TimeSeries solve_volterra_general(const ModelParams& p,
                                  const std::function<cplx(double, double)>& kernel,
                                  const VolterraConfig& cfg);

// Empirical order from runs at h, h/2, h/4 (successive-difference ratio with
// the h/4 run as the fine reference). Returns +infinity as the "exact"
// sentinel when the differences vanish (e.g. zero kernel).
double convergence_order(const ModelParams& p, KernelKind kind, const VolterraConfig& cfg);

} // namespace qslmq
