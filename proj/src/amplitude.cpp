#include "qslmq/amplitude.hpp"

#include <algorithm>
#include <cstdio>

#include "qslmq/errors.hpp"

namespace qslmq {

namespace {

using lcplx = std::complex<long double>;

cplx horner(cplx s, cplx c2, cplx c1, cplx c0) {
    return ((s + c2) * s + c1) * s + c0;
}

lcplx lhorner(lcplx s, lcplx c2, lcplx c1, lcplx c0) {
    return ((s + c2) * s + c1) * s + c0;
}

lcplx widen(cplx z) {
    return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())};
}

cplx narrow(lcplx z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

} // namespace

AmplitudeSolution solve_cubic(const DerivedQuantities& d) {
    const cplx c2 = d.cubic_c2, c1 = d.cubic_c1, c0 = d.cubic_c0;

    std::array<lcplx, 3> lroots;
    if (d.gamma_lambda() == 0.0) {
        // No coupling: the cubic is exactly s (s - eps0)(s - eps1) and the
        // residue formula below puts all weight on the zero root, keeping
        // C1 identically one without roundoff.  No polish: the roots are
        // already exact and Newton against rounded coefficients would move
        // them.
        lroots = {lcplx(0.0L, 0.0L), widen(d.eps0), widen(d.eps1)};
    } else {
        std::array<cplx, 3> roots;
        // Depressed form y^3 + p y + q with s = y - c2/3.
        const cplx shift = c2 / 3.0;
        const cplx p = c1 - c2 * shift;
        const cplx q = 2.0 * shift * shift * shift - shift * c1 + c0;

        cplx r = std::sqrt(0.25 * q * q + p * p * p / 27.0);
        const cplx mq2 = -0.5 * q;
        // Pick the sqrt branch that does not cancel -q/2, so |u^3| is maximal
        // and v = -p/(3u) stays well conditioned.
        if (std::real(std::conj(mq2) * r) < 0.0) r = -r;
        const cplx u3 = mq2 + r;
        if (std::abs(u3) == 0.0) {
            roots = {-shift, -shift, -shift}; // triple root; rejected below
        } else {
            const cplx u = std::pow(u3, 1.0 / 3.0);
            const cplx v = -p / (3.0 * u);
            const cplx w(-0.5, 0.5 * std::sqrt(3.0));
            const cplx wb = std::conj(w);
            roots = {u + v - shift, w * u + wb * v - shift, wb * u + w * v - shift};
        }

        // Newton polish in extended precision; near-clustered roots leave
        // |f'| ~ gap * |s|, and double evaluation noise ~ eps |s|^3 would
        // stall the roots 1e7 ulps out, wrecking the residue sum rules.
        // Keep the best iterate so a stray overshoot cannot degrade a
        // converged root.
        const lcplx lc2 = widen(c2), lc1 = widen(c1), lc0 = widen(c0);
        for (int k = 0; k < 3; ++k) {
            lcplx s = widen(roots[k]);
            lcplx best = s;
            long double best_res = std::abs(lhorner(s, lc2, lc1, lc0));
            for (int it = 0; it < 6; ++it) {
                const lcplx fp = (3.0L * s + 2.0L * lc2) * s + lc1;
                if (std::abs(fp) == 0.0L) break;
                s -= lhorner(s, lc2, lc1, lc0) / fp;
                const long double res = std::abs(lhorner(s, lc2, lc1, lc0));
                if (res < best_res) {
                    best_res = res;
                    best = s;
                }
            }
            lroots[k] = best;
        }
    }

    AmplitudeSolution sol;
    sol.roots = {narrow(lroots[0]), narrow(lroots[1]), narrow(lroots[2])};
    const std::array<cplx, 3>& roots = sol.roots;
    const double g01 = std::abs(roots[0] - roots[1]);
    const double g02 = std::abs(roots[0] - roots[2]);
    const double g12 = std::abs(roots[1] - roots[2]);
    sol.min_root_gap = std::min({g01, g02, g12});
    const double s_max = std::max({std::abs(roots[0]), std::abs(roots[1]), std::abs(roots[2])});
    const double gap_limit = 1e-6 * std::max(1.0, s_max);
    if (sol.min_root_gap < gap_limit) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "near-degenerate cubic roots: min_root_gap = %.3e below %.3e; "
                      "three-exponential amplitude unreliable here",
                      sol.min_root_gap, gap_limit);
        throw NearDegenerateRoots(buf);
    }

    const lcplx le0 = widen(d.eps0), le1 = widen(d.eps1);
    for (int k = 0; k < 3; ++k) {
        const lcplx sk = lroots[k];
        const lcplx num = (sk - le0) * (sk - le1);
        const lcplx den = (sk - lroots[(k + 1) % 3]) * (sk - lroots[(k + 2) % 3]);
        sol.residues[k] = narrow(num / den);
    }
    return sol;
}

Rates rates_at(const AmplitudeSolution& s, double t) {
    const cplx c = c1_at(s, t);
    if (std::abs(c) < 1e-13) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "|C1(%.17g)| = %.3e: rates diverge at amplitude zeros",
                      t, std::abs(c));
        throw AmplitudeZero(buf);
    }
    const cplx ratio = c1_dot_at(s, t) / c;
    return {-2.0 * std::real(ratio), -2.0 * std::imag(ratio)};
}

QubitState density_matrix_at(const QubitState& rho0, const AmplitudeSolution& s, double t) {
    const double tol = 1e-9;
    const double ee = std::real(rho0.rho_ee);
    if (std::abs(std::imag(rho0.rho_ee)) > tol || ee < -tol || ee > 1.0 + tol)
        throw ValidationError("rho0.rho_ee must be real in [0, 1]");
    if (std::abs(rho0.rho_ee + rho0.rho_gg - 1.0) > tol)
        throw ValidationError("rho0 must have unit trace");
    if (std::abs(rho0.rho_ge - std::conj(rho0.rho_eg)) > tol)
        throw ValidationError("rho0 must be Hermitian (rho_ge = conj(rho_eg))");

    const cplx c = c1_at(s, t);
    QubitState out;
    out.rho_ee = rho0.rho_ee * std::norm(c);
    out.rho_eg = rho0.rho_eg * c;
    out.rho_ge = rho0.rho_ge * std::conj(c);
    out.rho_gg = 1.0 - out.rho_ee;
    return out;
}

} // namespace qslmq
