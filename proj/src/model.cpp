#include "qslmq/model.hpp"

#include <cstdio>

#include "qslmq/errors.hpp"

namespace qslmq {

namespace {

[[noreturn]] void reject(const char* field, double value, const char* why) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.17g: %s", field, value, why);
    throw ValidationError(buf);
}

void require_finite(const char* field, double v) {
    if (!std::isfinite(v)) reject(field, v, "must be finite");
}

} // namespace

void validate(const ModelParams& p) {
    require_finite("omega0", p.omega0);
    require_finite("gamma", p.gamma);
    require_finite("lambda", p.lambda);
    require_finite("omega_drive", p.omega_drive);
    require_finite("delta", p.delta);
    require_finite("beta", p.beta);
    require_finite("tau", p.tau);
    if (!(p.omega0 > 0)) reject("omega0", p.omega0, "must be > 0");
    if (!(p.gamma >= 0)) reject("gamma", p.gamma, "must be >= 0");
    if (!(p.lambda > 0)) reject("lambda", p.lambda, "must be > 0");
    if (!(p.omega_drive >= 0)) reject("omega_drive", p.omega_drive, "must be >= 0");
    if (!(p.beta >= 0 && p.beta < 1)) reject("beta", p.beta, "must lie in [0, 1)");
    if (std::isnan(p.tau0)) reject("tau0", p.tau0, "must be > 0 or infinite");
    if (!(p.tau0 > 0)) reject("tau0", p.tau0, "must be > 0 or infinite");
    if (!(p.tau > 0)) reject("tau", p.tau, "must be > 0");
}

DerivedQuantities derive(const ModelParams& p) {
    validate(p);
    DerivedQuantities d;
    d.gamma = p.gamma;
    d.lambda = p.lambda;
    d.omega_f = p.omega0 - p.delta;
    d.omega_D = std::sqrt(p.delta * p.delta + 4.0 * p.omega_drive * p.omega_drive);
    d.phase_w = d.omega_D - p.delta;
    d.mu = cplx(p.lambda, p.omega0);
    d.eta = cplx(p.lambda, p.delta - d.omega_D);
    const cplx mu_beta = d.mu * p.beta;
    d.eps0 = mu_beta - d.eta;
    d.eps1 = -d.eta - mu_beta;
    const double quarter = 0.25 * p.gamma * p.lambda;
    d.cubic_c2 = -(d.eps0 + d.eps1);
    d.cubic_c1 = d.eps0 * d.eps1 + quarter;
    d.cubic_c0 = -0.5 * quarter * (d.eps0 + d.eps1);
    return d;
}

Regime classify_regime(const ModelParams& p) {
    validate(p);
    const double two_gamma = 2.0 * p.gamma;
    if (p.lambda > two_gamma) return Regime::Weak;
    if (p.lambda < two_gamma) return Regime::Strong;
    return Regime::Boundary;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Weak: return "Weak";
        case Regime::Strong: return "Strong";
        case Regime::Boundary: return "Boundary";
    }
    return "?";
}

} // namespace qslmq
