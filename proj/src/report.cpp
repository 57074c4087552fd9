#include "lppl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lppl/errors.hpp"

namespace lppl {

namespace {

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * v);
    return buf;
}

WindowVerdict verdict_for(Date d, const ForecastQuantiles& q) {
    return {d >= q.q05 && d <= q.q95, d >= q.q20 && d <= q.q80};
}

// Metric peak restricted to dates at or after `from`; earliest date on ties.
MetricPoint peak_after(const MetricSeries& series, Date from) {
    MetricPoint best{};
    bool found = false;
    for (const auto& e : series.entries) {
        if (e.date < from) continue;
        if (!found || e.value > best.value) {
            best = e;
            found = true;
        }
    }
    if (!found) throw Error("metric series has no points after " + from.iso());
    return best;
}

}  // namespace

ForecastDocument build_forecast_document(const ForecastInputs& inputs,
                                         const ScanResult& scan,
                                         const Ensemble& ensemble,
                                         const ForecastQuantiles& quantiles) {
    ForecastDocument doc;
    doc.inputs = inputs;
    doc.last_obs = scan.last_obs_date;
    doc.peak_date = scan.peak_date;
    doc.n_found = scan.n_found;
    doc.n_tested = scan.n_tested;
    doc.quantiles = quantiles;
    doc.n_refit_failed = ensemble.n_refit_failed;
    doc.n_outside_horizon = ensemble.n_outside_horizon;
    return doc;
}

std::string quantile_rows(const ForecastQuantiles& q) {
    return "05/95 " + q.q05.iso() + " " + q.q95.iso() + "\n" +
           "20/80 " + q.q20.iso() + " " + q.q80.iso() + "\n";
}

Json forecast_to_json(const ForecastDocument& doc) {
    return Json{
        {"asset_id", doc.inputs.asset_id},
        {"data", Json{{"source", doc.inputs.source},
                      {"path", doc.inputs.data_path},
                      {"format", to_json(doc.inputs.csv)}}},
        {"results",
         Json{{"last_observation", doc.last_obs.iso()},
              {"observed_peak", doc.peak_date.iso()},
              {"intervals_found", doc.n_found},
              {"intervals_tested", doc.n_tested},
              {"quantiles", to_json(doc.quantiles)},
              {"ensemble", Json{{"size", doc.quantiles.n_ensemble},
                                {"refits_failed", doc.n_refit_failed},
                                {"outside_horizon", doc.n_outside_horizon}}}}},
        {"config", Json{{"grid", to_json(doc.inputs.grid)},
                        {"search", to_json(doc.inputs.search)},
                        {"filter", to_json(doc.inputs.filter)},
                        {"bootstrap", to_json(doc.inputs.bootstrap)}}}};
}

std::string forecast_to_markdown(const ForecastDocument& doc) {
    std::string md;
    md += "# Forecast Report: " + doc.inputs.asset_id + "\n\n";

    md += "## 1 Data source\n\n";
    md += doc.inputs.source + "\n\n";

    md += "## 2 Input Parameters\n\n";
    md += "Date of last observation used in analysis  " + doc.last_obs.iso() + "\n";
    md += "Date of observed peak of data               " + doc.peak_date.iso() + "\n";
    md += "Number LPPL intervals found                 " + std::to_string(doc.n_found) + "\n";
    md += "Number total intervals tested               " + std::to_string(doc.n_tested) + "\n\n";

    md += "## 3 Forecast quantiles for t_c\n\n";
    md += quantile_rows(doc.quantiles);
    md += "\nEnsemble size " + std::to_string(doc.quantiles.n_ensemble) +
          " (refits failed " + std::to_string(doc.n_refit_failed) +
          ", outside horizon " + std::to_string(doc.n_outside_horizon) + ")\n\n";

    md += "## 4 Effective configuration\n\n";
    Json cfg{{"grid", to_json(doc.inputs.grid)},
             {"search", to_json(doc.inputs.search)},
             {"filter", to_json(doc.inputs.filter)},
             {"bootstrap", to_json(doc.inputs.bootstrap)},
             {"csv", to_json(doc.inputs.csv)}};
    md += "```json\n" + cfg.dump(2) + "\n```\n";
    return md;
}

ForecastQuantiles quantiles_from_json(const Json& j) {
    const Json& q = j.contains("results") ? j["results"]["quantiles"] : j;
    ForecastQuantiles out;
    out.q05 = Date::parse(q.at("q05").get<std::string>());
    out.q20 = Date::parse(q.at("q20").get<std::string>());
    out.q80 = Date::parse(q.at("q80").get<std::string>());
    out.q95 = Date::parse(q.at("q95").get<std::string>());
    out.last_obs = Date::parse(q.at("last_obs").get<std::string>());
    out.n_ensemble = q.at("n_ensemble").get<int>();
    return out;
}

EvaluationReport build_evaluation(const PriceSeries& full, const ForecastQuantiles& q,
                                  const EvaluationOptions& options,
                                  const WindowGrid& grid, const SearchConfig& search,
                                  const FilterConfig& filter) {
    EvaluationReport r;
    r.asset_id = full.asset_id();
    r.t2 = q.last_obs;
    r.data_end = full.last_date();
    r.quantiles = q;
    if (r.data_end <= r.t2) {
        throw EvaluationRangeError("data ends " + r.data_end.iso() + ", not past t2 " +
                                   r.t2.iso());
    }

    r.drawdown = max_drawdown(full, r.t2, r.data_end);
    r.drawdown_onset = verdict_for(r.drawdown.peak_date, q);

    const Date lookback = r.t2 - options.peak_lookback_days;

    ReturnSeries rets = returns(full);
    MetricSeries ud = updays_fraction(rets, options.updays_window);
    r.updays_window = options.updays_window;
    r.updays_peak = peak_after(ud, lookback);
    r.updays_verdict = verdict_for(r.updays_peak.date, q);

    MetricSeries sg = sg_derivative(full, {options.sg_window, 3, true});
    r.growth_window = sg.window;
    r.growth_peak = peak_after(sg, lookback);
    r.growth_peak.value *= kTradingDaysPerYear;
    r.growth_verdict = verdict_for(r.growth_peak.date, q);

    r.trend_before = trend_slope(full, full.first_date(), r.t2);
    r.trend_after = trend_slope(full, r.t2, r.data_end);

    if (options.index_step_days > 0) {
        for (Date d = r.t2; d <= r.data_end; d += options.index_step_days) {
            try {
                r.index_series.push_back(
                    {d, bubble_index(full, d, grid, search, filter)});
            } catch (const Error&) {
                // index undefined at d (grid infeasible); skip the point
            }
        }
    }
    return r;
}

namespace {

Json to_json(const WindowVerdict& v) {
    return Json{{"inside_05_95", v.inside_outer}, {"inside_20_80", v.inside_inner}};
}

}  // namespace

Json evaluation_to_json(const EvaluationReport& r) {
    Json index = Json::array();
    for (const auto& p : r.index_series) {
        index.push_back(Json{{"date", p.date.iso()}, {"value", p.value}});
    }
    return Json{
        {"asset_id", r.asset_id},
        {"t2", r.t2.iso()},
        {"data_end", r.data_end.iso()},
        {"quantiles", lppl::to_json(r.quantiles)},
        {"drawdown", Json{{"result", lppl::to_json(r.drawdown)},
                          {"onset", to_json(r.drawdown_onset)}}},
        {"updays", Json{{"window", r.updays_window},
                        {"peak_date", r.updays_peak.date.iso()},
                        {"peak_value", r.updays_peak.value},
                        {"verdict", to_json(r.updays_verdict)}}},
        {"growth_rate", Json{{"window", r.growth_window},
                             {"peak_date", r.growth_peak.date.iso()},
                             {"peak_value_annualized", r.growth_peak.value},
                             {"verdict", to_json(r.growth_verdict)}}},
        {"trend", Json{{"annualized_before_t2", r.trend_before},
                       {"annualized_after_t2", r.trend_after}}},
        {"bubble_index_proxy", std::move(index)}};
}

std::string evaluation_to_markdown(const EvaluationReport& r) {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::string md;
    md += "# Evaluation Report: " + r.asset_id + "\n\n";
    md += "Forecast t2 " + r.t2.iso() + ", data through " + r.data_end.iso() + "\n\n";
    md += "## Forecast windows\n\n" + quantile_rows(r.quantiles) + "\n";

    md += "## Largest drawdown after t2\n\n";
    if (r.drawdown.degenerate) {
        md += "No decline observed after t2.\n\n";
    } else {
        md += pct(r.drawdown.depth) + " over " + std::to_string(r.drawdown.duration_days) +
              " days, peak " + r.drawdown.peak_date.iso() + " to trough " +
              r.drawdown.trough_date.iso() + "\n";
        md += "Onset inside 5/95 window: " + std::string(yn(r.drawdown_onset.inside_outer)) +
              "; inside 20/80: " + yn(r.drawdown_onset.inside_inner) + "\n\n";
    }

    md += "## Up-day fraction (" + std::to_string(r.updays_window) + "-day window)\n\n";
    md += "Peak " + pct(r.updays_peak.value) + " on " + r.updays_peak.date.iso() + "\n";
    md += "Peak inside 5/95 window: " + std::string(yn(r.updays_verdict.inside_outer)) +
          "; inside 20/80: " + yn(r.updays_verdict.inside_inner) + "\n\n";

    md += "## Smoothed growth rate (" + std::to_string(r.growth_window) + "-point window)\n\n";
    md += "Peak " + pct(r.growth_peak.value) + "/yr on " + r.growth_peak.date.iso() + "\n";
    md += "Peak inside 5/95 window: " + std::string(yn(r.growth_verdict.inside_outer)) +
          "; inside 20/80: " + yn(r.growth_verdict.inside_inner) + "\n\n";

    md += "## Trend slopes\n\n";
    md += "Run-up through t2: " + pct(r.trend_before) + "/yr; after t2: " +
          pct(r.trend_after) + "/yr\n\n";

    if (!r.index_series.empty()) {
        md += "## Proxy bubble index\n\n";
        md += "(qualified-fit fraction, not a published metric)\n\n";
        for (const auto& p : r.index_series) {
            md += p.date.iso() + "  " + pct(p.value) + "\n";
        }
    }
    return md;
}

}  // namespace lppl
