#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace qslmq {

using cplx = std::complex<double>;

// tau0 sentinel selecting the continuum (infinite cavity) kernel.
inline constexpr double kContinuumTau0 = std::numeric_limits<double>::infinity();

enum class Regime { Weak, Strong, Boundary };

// Physical inputs. Frequencies are in units of gamma, times in units of
// 1/gamma; gamma itself stays explicit only so scale consistency is testable.
struct ModelParams {
    double omega0 = 1.53e9;      // qubit transition frequency
    double gamma = 1.0;          // excited-state decay rate (the unit)
    double lambda = 3.0;         // Lorentzian spectral width
    double omega_drive = 0.0;    // classical driving strength
    double delta = 0.0;          // detuning omega0 - omega_f
    double beta = 0.0;           // velocity ratio v/c, in [0, 1)
    double tau0 = kContinuumTau0; // cavity transit time; infinite = continuum
    double tau = 1.0;            // evolution horizon for the measures

    bool continuum() const { return std::isinf(tau0); }
};

// Derived symbols shared by the kernel closed forms and the amplitude cubic.
// Imaginary parts are assembled from detuning-scale differences (delta,
// omega_D) rather than omega0-scale ones, so no 1e9-magnitude cancellation
// enters any frequency that multiplies time.
struct DerivedQuantities {
    double gamma = 1.0;
    double lambda = 3.0;
    double omega_f = 0.0;  // omega0 - delta
    double omega_D = 0.0;  // sqrt(delta^2 + 4 omega_drive^2)
    double phase_w = 0.0;  // omega_D - delta == omega_D - omega0 + omega_f
    cplx mu;               // lambda + i omega0
    cplx eta;              // lambda + i (delta - omega_D)
    cplx eps0;             // mu beta - eta
    cplx eps1;             // -eta - mu beta
    cplx cubic_c2, cubic_c1, cubic_c0; // s^3 + c2 s^2 + c1 s + c0

    double gamma_lambda() const { return gamma * lambda; }
};

// Throws ValidationError naming the offending field. gamma = 0 is admitted as
// the degenerate no-coupling case (the kernel vanishes identically); gamma < 0
// is rejected.
void validate(const ModelParams& p);

// Pure function; validates, then fills every derived field.
DerivedQuantities derive(const ModelParams& p);

// Weak iff lambda > 2 gamma, Strong iff lambda < 2 gamma, Boundary at equality.
Regime classify_regime(const ModelParams& p);

const char* regime_name(Regime r);

} // namespace qslmq
