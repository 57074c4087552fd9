#pragma once

#include "lppl/scanner.hpp"

namespace lppl {

struct Drawdown {
    Date peak_date;
    Date trough_date;
    double depth = 0.0;      // 1 - price(trough)/price(peak), in [0, 1]
    int duration_days = 0;   // calendar days peak -> trough
    bool degenerate = false; // no decline in range
};

// Largest peak-to-trough fractional drop inside [from, to]. Ties break toward
// the earliest peak, then the shortest duration. A monotone rise gives a
// degenerate zero-depth result instead of an error.
Drawdown max_drawdown(const PriceSeries& series, Date from, Date to);

enum class MetricKind { updays, sg_derivative, bubble_index };

struct MetricPoint {
    Date date;
    double value = 0.0;
};

struct MetricSeries {
    std::vector<MetricPoint> entries;
    int window = 0;
    MetricKind kind = MetricKind::updays;
};

// Fraction of up days among nonzero-return days in the trailing window
// (d - window_days, d]. Dates whose window holds only zero returns are
// omitted; only dates with full trailing coverage are emitted.
MetricSeries updays_fraction(const ReturnSeries& returns, int window_days);

struct SgOptions {
    int window_obs = 121;     // rounded up to odd for exact centering
    int order = 3;
    bool on_log_price = true; // growth rate; raw price via flag
};

// Savitzky-Golay first derivative at the center of each full window, in units
// per observation step (multiply by kTradingDaysPerYear to annualize).
MetricSeries sg_derivative(const PriceSeries& series, const SgOptions& options = {});

constexpr double kTradingDaysPerYear = 252.0;

// OLS slope of ln-price on calendar time over [from, to], converted to a
// fractional annualized growth rate.
double trend_slope(const PriceSeries& series, Date from, Date to);

// Qualified-fit fraction n_found/n_tested of a scan ending at as_of. A proxy
// indicator; reports must label it as such.
double bubble_index(const PriceSeries& series, Date as_of, const WindowGrid& grid,
                    const SearchConfig& search, const FilterConfig& filter);

}  // namespace lppl
