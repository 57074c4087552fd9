#pragma once

#include <vector>

#include "lppl/fit.hpp"

namespace lppl {

// Sub-window mesh: t2 steps back from the last observation in dt2 increments
// over t2_span days; for each t2, window lengths run min_len..max_len in dt1
// increments. All units are calendar days.
struct WindowGrid {
    double dt1 = 10.0;
    double dt2 = 10.0;
    double min_len = 110.0;
    double max_len = 1500.0;
    double t2_span = 31.0;

    void validate() const;
};

// Window endpoints for the grid, snapped inward to observation dates:
// t2 maps to the latest observation <= nominal, t1 to the earliest >= nominal.
// Windows with fewer than min_obs observations are dropped (min_obs = 0 keeps
// every nominal grid window). Output sorted by (t2 desc, length asc).
std::vector<FitWindow> generate_windows(const PriceSeries& series, const WindowGrid& grid,
                                        int min_obs = 30);

// Nominal window count for the grid before population exclusions; equals the
// arithmetic-progression sum the mesh defines.
long nominal_window_count(const PriceSeries& series, const WindowGrid& grid);

struct ScanResult {
    std::string asset_id;
    WindowGrid grid;
    std::vector<LpplFit> fits;  // one per tested window, converged or not
    int n_found = 0;
    int n_tested = 0;
    Date last_obs_date;
    Date peak_date;
};

// Fits every grid window and aggregates counts. Individual window failures are
// recorded as non-converged fits; the scan itself only fails if the grid does.
// Deterministic regardless of worker scheduling.
ScanResult scan(const PriceSeries& series, const WindowGrid& grid,
                const SearchConfig& search, const FilterConfig& filter);

}  // namespace lppl
