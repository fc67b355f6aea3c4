#include "qslmq/measures.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "qslmq/errors.hpp"

namespace qslmq {

namespace {

double g_of(const AmplitudeSolution& sol, double t) {
    return 2.0 * std::real(std::conj(c1_at(sol, t)) * c1_dot_at(sol, t));
}

// Zeros of g where it actually crosses; tangential zeros leave |g| smooth and
// need no piece boundary.
std::vector<double> crossing_times(const AmplitudeSolution& sol, double tau,
                                   const QuadratureOptions& opt) {
    const int n = std::max(8, static_cast<int>(std::ceil(opt.scan_per_unit * tau)));
    const double h = tau / n;
    std::vector<double> kinks;
    bool prev_neg = g_of(sol, 0.0) < 0.0;
    double prev_t = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double t = (i == n) ? tau : i * h;
        const bool neg = g_of(sol, t) < 0.0;
        if (neg != prev_neg) {
            double a = prev_t, b = t;
            for (int it = 0; it < 80 && (b - a) > opt.bisect_tol; ++it) {
                const double m = 0.5 * (a + b);
                ((g_of(sol, m) < 0.0) == prev_neg ? a : b) = m;
            }
            kinks.push_back(0.5 * (a + b));
        }
        prev_neg = neg;
        prev_t = t;
    }
    return kinks;
}

struct SimpsonCtx {
    const AmplitudeSolution* sol;
    int max_depth;
};

double simpson_refine(const SimpsonCtx& ctx, double a, double b, double fa, double fm,
                      double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g_of(*ctx.sol, lm), frm = g_of(*ctx.sol, rm);
    const double sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = sl + sr - whole;
    // Relative floor keeps the stopping test meaningful once the requested
    // tolerance sinks below roundoff in sl + sr.
    const double stop = 15.0 * std::max(tol, 1e-16 * (std::abs(sl) + std::abs(sr)));
    if (std::abs(err) <= stop) return sl + sr + err / 15.0;
    if (depth <= 0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "adaptive Simpson stalled on [%.17g, %.17g]: |err| = %.3e, tol = %.3e",
                      a, b, std::abs(err), tol);
        throw QuadratureFailure(buf);
    }
    return simpson_refine(ctx, a, m, fa, flm, fm, sl, 0.5 * tol, depth - 1) +
           simpson_refine(ctx, m, b, fm, frm, fb, sr, 0.5 * tol, depth - 1);
}

double piece_integral(const AmplitudeSolution& sol, double a, double b, double tol,
                      int max_depth) {
    const SimpsonCtx ctx{&sol, max_depth};
    const double fa = g_of(sol, a), fb = g_of(sol, b);
    const double fm = g_of(sol, 0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_refine(ctx, a, b, fa, fm, fb, whole, tol, max_depth);
}

} // namespace

double path_integral(const AmplitudeSolution& sol, double tau, const QuadratureOptions& opt) {
    if (!(tau > 0)) throw ValidationError("tau must be > 0");
    std::vector<double> edges;
    edges.push_back(0.0);
    for (double z : crossing_times(sol, tau, opt)) {
        // Slivers thinner than the kink resolution carry O(|g'| tol^2) mass.
        if (z - edges.back() > 4.0 * opt.bisect_tol && tau - z > 4.0 * opt.bisect_tol)
            edges.push_back(z);
    }
    edges.push_back(tau);

    double total = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        const double tol = opt.abs_tol * (b - a) / tau;
        total += std::abs(piece_integral(sol, a, b, tol, opt.max_depth));
    }
    return total;
}

EvolutionMetrics metrics(const AmplitudeSolution& sol, double tau, const QuadratureOptions& opt) {
    const double path = path_integral(sol, tau, opt);
    const double p = std::norm(c1_at(sol, tau));
    if (path < 1e-15) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "path integral %.3e below 1e-15: ratio undefined", path);
        throw NoEvolution(buf);
    }
    double ratio = (1.0 - p) / path;
    if (ratio > 1.0) {
        // The denominator dominates by the triangle inequality; anything past
        // 1 is quadrature slop, and more than 1e-9 of it means a broken pass.
        if (ratio > 1.0 + 1e-9) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "qsl ratio %.17g exceeds 1 beyond tolerance", ratio);
            throw QuadratureFailure(buf);
        }
        ratio = 1.0;
    }
    const double n_raw = 0.5 * (path + p - 1.0);
    if (n_raw < -1e-12) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "non-Markovianity %.3e below -1e-12", n_raw);
        throw QuadratureFailure(buf);
    }
    EvolutionMetrics m;
    m.qsl_ratio = ratio;
    m.nm = (std::abs(n_raw) <= 1e-12) ? 0.0 : n_raw;
    m.p_tau = p;
    m.path_integral = path;
    m.identity_residual = std::abs(ratio - (1.0 - p) / ((1.0 - p) + 2.0 * n_raw));
    return m;
}

double qsl_ratio(const AmplitudeSolution& sol, double tau, const QuadratureOptions& opt) {
    return metrics(sol, tau, opt).qsl_ratio;
}

double non_markovianity(const AmplitudeSolution& sol, double tau, const QuadratureOptions& opt) {
    const double path = path_integral(sol, tau, opt);
    const double p = std::norm(c1_at(sol, tau));
    const double n_raw = 0.5 * (path + p - 1.0);
    if (n_raw < -1e-12) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "non-Markovianity %.3e below -1e-12", n_raw);
        throw QuadratureFailure(buf);
    }
    return (std::abs(n_raw) <= 1e-12) ? 0.0 : n_raw;
}

} // namespace qslmq
