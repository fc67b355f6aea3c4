#include "qslmq/csv.hpp"

#include <cstdio>
#include <fstream>

#include "qslmq/errors.hpp"

namespace qslmq {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string sweep_file_name(double lambda, double beta) {
    return "sweep_lambda" + fmt_short(lambda) + "_beta" + fmt_short(beta) + ".csv";
}

std::string sweep_csv(const SweepCurve& curve) {
    std::string out = "omega_over_gamma,qsl_ratio,nm,p_tau,identity_residual,status\n";
    for (const SweepRow& r : curve.rows) {
        out += fmt17(r.omega_over_gamma);
        out += ',';
        out += fmt17(r.qsl_ratio);
        out += ',';
        out += fmt17(r.nm);
        out += ',';
        out += fmt17(r.p_tau);
        out += ',';
        out += fmt17(r.identity_residual);
        out += ',';
        out += r.status;
        out += '\n';
    }
    return out;
}

std::string trace_csv(const TimeSeries& ts) {
    std::string out = "t,re_c1,im_c1,p,decoherence_rate,lamb_shift,status\n";
    const double nan = std::nan("");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double gamma_t = nan, s_t = nan;
        const char* status = "ok";
        try {
            const Rates r = ts.rates(i);
            gamma_t = r.decoherence;
            s_t = r.lamb_shift;
        } catch (const AmplitudeZero&) {
            status = "skipped: AmplitudeZero";
        }
        out += fmt17(ts.t[i]);
        out += ',';
        out += fmt17(std::real(ts.c1[i]));
        out += ',';
        out += fmt17(std::imag(ts.c1[i]));
        out += ',';
        out += fmt17(ts.p(i));
        out += ',';
        out += fmt17(gamma_t);
        out += ',';
        out += fmt17(s_t);
        out += ',';
        out += status;
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("failed writing output file: " + path);
}

} // namespace qslmq
