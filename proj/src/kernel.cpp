#include "qslmq/kernel.hpp"

#include "qslmq/errors.hpp"

namespace qslmq {

cplx eval_finite_cavity(const DerivedQuantities& d, const ModelParams& p, double t, double t1) {
    if (p.continuum())
        throw ValidationError("tau0 = inf: finite-cavity kernel needs a finite tau0; use eval_continuum");
    const double amp = 0.125 * d.gamma_lambda();
    const double w = d.phase_w;          // omega_D - delta
    const double dt = t - t1;
    const double sum = t + t1;
    const double ob = p.omega0 * p.beta; // Doppler frequency shift
    const double echo_phase = ob * sum - 2.0 * p.omega0 * p.tau0;
    const double lam = d.lambda;

    // Echo terms: damped by |2 tau0 - beta (t+t1) -+ (t-t1)|, opposite sign to
    // the bulk pair; conjugate partners of each other at t = t1.
    const cplx f1 = -amp * std::exp(cplx(-lam * std::abs(-p.beta * sum + 2.0 * p.tau0 + dt),
                                         echo_phase + w * dt));
    const cplx f4 = -amp * std::exp(cplx(-lam * std::abs(p.beta * sum - 2.0 * p.tau0 + dt),
                                         -echo_phase + w * dt));
    // Bulk pair: stationary, reduces to the continuum kernel as tau0 grows.
    const cplx f2 = amp * std::exp(cplx(-lam * std::abs((1.0 - p.beta) * dt), (w + ob) * dt));
    const cplx f3 = amp * std::exp(cplx(-lam * std::abs((1.0 + p.beta) * dt), (w - ob) * dt));
    return f1 + f2 + f3 + f4;
}

} // namespace qslmq
