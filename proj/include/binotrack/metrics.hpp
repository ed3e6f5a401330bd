#pragma once

#include <optional>

#include "binotrack/simulator.hpp"

namespace binotrack {

// Post-run convergence diagnostics derived from a trace.
//
// settle_time: first sample time with ||e|| below settle_fraction of the
//   initial ||e|| (absent if never reached).
// fitted_rate / fit_r_squared: least-squares slope of log ||e|| over the
//   decay window (start of run through settling, or the whole run when
//   the threshold is never reached); reported only when the window has
//   at least 10 samples with positive ||e||.
// steady_state_band: max ||e|| over the final 20% of the run.
struct ConvergenceSummary {
    double final_error_norm = 0.0;
    std::optional<double> settle_time;
    std::optional<double> fitted_rate;
    std::optional<double> fit_r_squared;
    double steady_state_band = 0.0;
};

inline constexpr double kSettleFraction = 1e-3;

ConvergenceSummary summarize(const Trace& trace,
                             double settle_fraction = kSettleFraction);

}  // namespace binotrack
