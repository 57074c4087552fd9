#pragma once

#include "lppl/serialize.hpp"

namespace lppl {

struct ForecastInputs {
    std::string asset_id;
    std::string source;
    std::string data_path;
    CsvFormat csv;
    WindowGrid grid;
    SearchConfig search;
    FilterConfig filter;
    BootstrapConfig bootstrap;
};

// Everything a published forecast carries: provenance, the scan counts, the
// two quantile rows, and the full effective configuration for auditability.
struct ForecastDocument {
    ForecastInputs inputs;
    Date last_obs;
    Date peak_date;
    int n_found = 0;
    int n_tested = 0;
    ForecastQuantiles quantiles;
    int n_refit_failed = 0;
    int n_outside_horizon = 0;
};

ForecastDocument build_forecast_document(const ForecastInputs& inputs,
                                         const ScanResult& scan,
                                         const Ensemble& ensemble,
                                         const ForecastQuantiles& quantiles);

Json forecast_to_json(const ForecastDocument& doc);
std::string forecast_to_markdown(const ForecastDocument& doc);

// The two published rows, one per line: "05/95 <start> <end>", "20/80 ...".
std::string quantile_rows(const ForecastQuantiles& q);

ForecastQuantiles quantiles_from_json(const Json& j);

struct WindowVerdict {
    bool inside_outer = false;  // 5/95
    bool inside_inner = false;  // 20/80
};

struct EvaluationReport {
    std::string asset_id;
    Date t2;
    Date data_end;
    ForecastQuantiles quantiles;
    Drawdown drawdown;  // largest after t2
    WindowVerdict drawdown_onset;
    MetricPoint updays_peak;
    WindowVerdict updays_verdict;
    int updays_window = 90;
    MetricPoint growth_peak;  // annualized sg derivative
    WindowVerdict growth_verdict;
    int growth_window = 121;
    double trend_before = 0.0;  // annualized, run-up through t2
    double trend_after = 0.0;   // annualized, t2 through data end
    std::vector<MetricPoint> index_series;  // proxy bubble index, may be empty
};

struct EvaluationOptions {
    int updays_window = 90;
    int sg_window = 121;
    int peak_lookback_days = 180;  // metric peaks are searched in [t2 - lookback, end]
    int index_step_days = 0;       // 0 disables the proxy index series
};

// Post-hoc metrics for a published forecast against the full series.
EvaluationReport build_evaluation(const PriceSeries& full, const ForecastQuantiles& q,
                                  const EvaluationOptions& options,
                                  const WindowGrid& grid, const SearchConfig& search,
                                  const FilterConfig& filter);

Json evaluation_to_json(const EvaluationReport& report);
std::string evaluation_to_markdown(const EvaluationReport& report);

}  // namespace lppl
