#pragma once

#include <array>

#include "qslmq/model.hpp"

namespace qslmq {

// Closed-form survival amplitude C1(t) = sum_k A_k e^{s_k t}: three cubic
// roots plus their partial-fraction residues. Immutable once built.
struct AmplitudeSolution {
    std::array<cplx, 3> roots{};
    std::array<cplx, 3> residues{};
    double min_root_gap = 0.0; // min over pairs of |s_i - s_j|
};

// 2x2 density matrix in the dressed basis {|E>, |G>}.
struct QubitState {
    cplx rho_ee, rho_eg, rho_ge, rho_gg;
};

// Roots of s^3 + c2 s^2 + c1 s + c0 (Cardano with branch tracking, then Newton
// polish) and residues A_k = (s_k - eps0)(s_k - eps1) / prod_{j!=k}(s_k - s_j).
// Throws NearDegenerateRoots when min_root_gap < 1e-6 max(1, max|s_k|); the
// confluent formula is deliberately not implemented.
AmplitudeSolution solve_cubic(const DerivedQuantities& d);

inline cplx c1_at(const AmplitudeSolution& s, double t) {
    return s.residues[0] * std::exp(s.roots[0] * t) +
           s.residues[1] * std::exp(s.roots[1] * t) +
           s.residues[2] * std::exp(s.roots[2] * t);
}

inline cplx c1_dot_at(const AmplitudeSolution& s, double t) {
    return s.residues[0] * s.roots[0] * std::exp(s.roots[0] * t) +
           s.residues[1] * s.roots[1] * std::exp(s.roots[1] * t) +
           s.residues[2] * s.roots[2] * std::exp(s.roots[2] * t);
}

struct Rates {
    double decoherence; // Gamma(t) = -2 Re(C1'/C1) == -d/dt ln |C1|^2
    double lamb_shift;  // S(t)     = -2 Im(C1'/C1)
};

// Throws AmplitudeZero when |C1(t)| < 1e-13 (rates diverge at amplitude zeros).
Rates rates_at(const AmplitudeSolution& s, double t);

// rho_ee(t) = rho_ee(0) |C1|^2, rho_eg(t) = rho_eg(0) C1(t),
// rho_ge(t) = rho_ge(0) C1*(t), rho_gg(t) = 1 - rho_ee(t).
// Rejects rho0 violating hermiticity, unit trace, or rho_ee in [0, 1].
QubitState density_matrix_at(const QubitState& rho0, const AmplitudeSolution& s, double t);

} // namespace qslmq
