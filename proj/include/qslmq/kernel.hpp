#pragma once

#include "qslmq/model.hpp"

namespace qslmq {

// Which reservoir correlation function feeds the Volterra solver.
enum class KernelKind {
    FiniteCavity, // four-term form with boundary echoes, depends on t + t1
    Continuum,    // infinite-cavity limit, depends on t - t1 only
};

// Continuum kernel (gamma lambda / 8) [e^{eps0 dt} + e^{eps1 dt}], dt >= 0.
// Each term decays at least at rate lambda (1 -+ beta).
inline cplx eval_continuum(const DerivedQuantities& d, double dt) {
    return 0.125 * d.gamma_lambda() * (std::exp(d.eps0 * dt) + std::exp(d.eps1 * dt));
}

// Finite-cavity kernel: the two Doppler-split bulk terms of the continuum form
// plus two boundary-echo terms carrying e^{-2 lambda tau0}-scale suppression
// and a t + t1 dependence that breaks stationarity. Requires finite tau0 and
// 0 <= t1 <= t.
cplx eval_finite_cavity(const DerivedQuantities& d, const ModelParams& p, double t, double t1);

} // namespace qslmq
