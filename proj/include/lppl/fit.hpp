#pragma once

#include <optional>

#include "lppl/model.hpp"

namespace lppl {

// Multi-start search over the nonlinear shape (tc, alpha, omega); the four
// linear parameters are profiled per shape. Deterministic for fixed inputs.
struct SearchConfig {
    double tc_horizon_days = 365.0;  // tc grid spans (t2, t2 + horizon]
    int tc_grid = 20;
    double alpha_min = 0.05;
    double alpha_max = 0.95;
    int alpha_grid = 8;
    double omega_min = 2.0;
    double omega_max = 25.0;
    int omega_grid = 14;
    int refine_starts = 10;    // best grid nodes handed to local refinement
    int max_iterations = 200;
    double tolerance = 1e-6;   // relative parameter step
    int min_window_obs = 30;
    int threads = 0;           // fan-out width for scan/bootstrap; 0 = hardware
};

// Parameter ranges a converged fit must land in to count as a bubble signature.
// All intervals are closed. The ranges are configuration, echoed into reports.
struct FilterConfig {
    double alpha_min = 0.1;
    double alpha_max = 0.9;
    double omega_min = 2.0;
    double omega_max = 25.0;
    bool require_negative_b = true;
    double tc_horizon_days = 365.0;  // max admitted tc - t2
    std::optional<double> max_relative_oscillation;  // bound on |c/b| when set
    bool negative_bubble = false;    // flips the sign convention on b
};

struct FitWindow {
    Date t1;
    Date t2;
};

struct LpplFit {
    LpplParams params;
    FitWindow window;
    double sse = 0.0;
    int n_obs = 0;
    bool converged = false;
    bool qualified = false;
};

// Best-sse fit over the window via grid search plus Nelder-Mead refinement of
// the profiled objective. Ties break toward smaller tc, then smaller omega.
LpplFit fit(const PriceSeries& window_series, const SearchConfig& search);

// Single local refinement from a given start shape; used for bootstrap refits.
LpplFit refine_fit(const LogSeries& series, FitWindow window, const Shape& start,
                   const SearchConfig& search);

bool qualify(const LpplFit& fit, const FilterConfig& filter);

}  // namespace lppl
