#pragma once

#include "qslmq/amplitude.hpp"

namespace qslmq {

// Controls for the |d|C1|^2/dt| quadrature. The integrand's only
// non-smoothness is the absolute value, so sign changes are bracketed on a
// uniform scan grid, pinned by bisection, and each sign-definite piece is
// integrated by adaptive Simpson.
struct QuadratureOptions {
    int scan_per_unit = 4096;  // bracketing grid density per unit time
    double bisect_tol = 1e-12; // kink location half-width
    double abs_tol = 2e-13;    // total absolute budget across all pieces
    int max_depth = 48;        // Simpson recursion cap before QuadratureFailure
};

struct EvolutionMetrics {
    double qsl_ratio = 1.0;         // in (0, 1]
    double nm = 0.0;                // non-Markovianity, >= 0 (clamped near 0)
    double p_tau = 1.0;             // |C1(tau)|^2
    double path_integral = 0.0;     // int_0^tau |d|C1|^2/dt| dt
    double identity_residual = 0.0; // |qsl_ratio - (1-p)/(1-p+2N)|, N unclamped
};

// int_0^tau |g| with g(t) = 2 Re(C1* C1'), evaluated analytically per point.
// Throws QuadratureFailure if refinement stalls.
double path_integral(const AmplitudeSolution& sol, double tau,
                     const QuadratureOptions& opt = {});

// (1 - |C1(tau)|^2) / path_integral. Throws NoEvolution when the path
// integral is below 1e-15 (nothing moved, ratio undefined).
double qsl_ratio(const AmplitudeSolution& sol, double tau,
                 const QuadratureOptions& opt = {});

// N = (path_integral + |C1(tau)|^2 - 1) / 2 for the optimal dressed-basis
// pair {|E><E|, |G><G|}; clamped to 0 when |N| <= 1e-12.
double non_markovianity(const AmplitudeSolution& sol, double tau,
                        const QuadratureOptions& opt = {});

// All of the above from one quadrature pass. The identity residual is formed
// with the unclamped N, where it is algebraically exact; the clamped value is
// what the nm field reports.
EvolutionMetrics metrics(const AmplitudeSolution& sol, double tau,
                         const QuadratureOptions& opt = {});

} // namespace qslmq
