#pragma once

#include <string>

#include "qslmq/sweep.hpp"

namespace qslmq {

// All CSV content is built as strings first so byte-level determinism is a
// property of these functions alone; numbers use 17 significant digits.
std::string fmt17(double v);

// Compact %g form used only inside file names.
std::string fmt_short(double v);

std::string sweep_file_name(double lambda, double beta);

// Header omega_over_gamma,qsl_ratio,nm,p_tau,identity_residual,status; skipped
// rows carry nan fields and their status reason.
std::string sweep_csv(const SweepCurve& curve);

// Header t,re_c1,im_c1,p,decoherence_rate,lamb_shift,status; samples where the
// rates diverge (amplitude zeros) are marked skipped with nan rates.
std::string trace_csv(const TimeSeries& ts);

void write_file(const std::string& path, const std::string& content);

} // namespace qslmq
