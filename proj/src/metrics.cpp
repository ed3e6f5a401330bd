#include "binotrack/metrics.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace binotrack {

namespace {

double error_norm(const TraceRecord& r) {
    return std::sqrt(r.e1 * r.e1 + r.e2 * r.e2 + r.e3 * r.e3);
}

}  // namespace

ConvergenceSummary summarize(const Trace& trace, double settle_fraction) {
    ConvergenceSummary out;
    if (trace.empty()) return out;

    double t0 = trace.front().t;
    double t_last = trace.back().t;
    double e0 = error_norm(trace.front());
    out.final_error_norm = error_norm(trace.back());

    double threshold = settle_fraction * e0;
    if (e0 == 0.0) {
        out.settle_time = t0;
    } else {
        for (const TraceRecord& r : trace) {
            if (error_norm(r) <= threshold) {
                out.settle_time = r.t;
                break;
            }
        }
    }

    // Exponential-rate fit over the decay window: from the start until the
    // error first settles, or the whole run if it never does.
    double fit_end = out.settle_time ? *out.settle_time : t_last;
    std::vector<double> ts, logs;
    for (const TraceRecord& r : trace) {
        if (r.t > fit_end) break;
        double e = error_norm(r);
        if (e > 0.0) {
            ts.push_back(r.t);
            logs.push_back(std::log(e));
        }
    }
    if (ts.size() >= 10) {
        std::size_t n = ts.size();
        double mt = 0.0, ml = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mt += ts[i];
            ml += logs[i];
        }
        mt /= static_cast<double>(n);
        ml /= static_cast<double>(n);
        double stt = 0.0, stl = 0.0, sll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double dt = ts[i] - mt;
            double dl = logs[i] - ml;
            stt += dt * dt;
            stl += dt * dl;
            sll += dl * dl;
        }
        if (stt > 0.0) {
            double slope = stl / stt;
            out.fitted_rate = slope;
            double ss_res = sll - slope * stl;
            out.fit_r_squared = sll > 0.0
                ? 1.0 - std::max(ss_res, 0.0) / sll
                : 1.0;
        }
    }

    double band_start = t0 + 0.8 * (t_last - t0);
    double band = 0.0;
    for (const TraceRecord& r : trace) {
        if (r.t >= band_start) band = std::max(band, error_norm(r));
    }
    out.steady_state_band = band;
    return out;
}

}  // namespace binotrack
