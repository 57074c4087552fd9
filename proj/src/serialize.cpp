#include "lppl/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace lppl {

namespace {

Json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

std::string num(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Json to_json(const LpplFit& fit) {
    const LpplParams& p = fit.params;
    return Json{{"t1", fit.window.t1.iso()},
                {"t2", fit.window.t2.iso()},
                {"a", finite_or_null(p.a)},
                {"b", finite_or_null(p.b)},
                {"c", finite_or_null(p.c)},
                {"alpha", finite_or_null(p.alpha)},
                {"omega", finite_or_null(p.omega)},
                {"phi", finite_or_null(p.phi)},
                {"tc", finite_or_null(p.tc)},
                {"tc_date", std::isfinite(p.tc)
                                ? Json(Date(int(std::floor(p.tc))).iso())
                                : Json(nullptr)},
                {"sse", finite_or_null(fit.sse)},
                {"n_obs", fit.n_obs},
                {"converged", fit.converged},
                {"qualified", fit.qualified}};
}

Json to_json(const ScanResult& scan) {
    Json fits = Json::array();
    for (const auto& f : scan.fits) fits.push_back(to_json(f));
    return Json{{"asset_id", scan.asset_id},
                {"grid", to_json(scan.grid)},
                {"last_obs_date", scan.last_obs_date.iso()},
                {"peak_date", scan.peak_date.iso()},
                {"n_found", scan.n_found},
                {"n_tested", scan.n_tested},
                {"fits", std::move(fits)}};
}

Json to_json(const ForecastQuantiles& q) {
    return Json{{"q05", q.q05.iso()}, {"q20", q.q20.iso()},
                {"q80", q.q80.iso()}, {"q95", q.q95.iso()},
                {"last_obs", q.last_obs.iso()}, {"n_ensemble", q.n_ensemble}};
}

Json to_json(const Drawdown& d) {
    return Json{{"peak_date", d.peak_date.iso()},
                {"trough_date", d.trough_date.iso()},
                {"depth", d.depth},
                {"duration_days", d.duration_days},
                {"degenerate", d.degenerate}};
}

Json to_json(const WindowGrid& g) {
    return Json{{"dt1", g.dt1}, {"dt2", g.dt2}, {"min_len", g.min_len},
                {"max_len", g.max_len}, {"t2_span", g.t2_span}};
}

Json to_json(const SearchConfig& s) {
    return Json{{"tc_horizon_days", s.tc_horizon_days},
                {"tc_grid", s.tc_grid},
                {"alpha_min", s.alpha_min},
                {"alpha_max", s.alpha_max},
                {"alpha_grid", s.alpha_grid},
                {"omega_min", s.omega_min},
                {"omega_max", s.omega_max},
                {"omega_grid", s.omega_grid},
                {"refine_starts", s.refine_starts},
                {"max_iterations", s.max_iterations},
                {"tolerance", s.tolerance},
                {"min_window_obs", s.min_window_obs},
                {"threads", s.threads}};
}

Json to_json(const FilterConfig& f) {
    Json j{{"alpha_min", f.alpha_min},
           {"alpha_max", f.alpha_max},
           {"omega_min", f.omega_min},
           {"omega_max", f.omega_max},
           {"require_negative_b", f.require_negative_b},
           {"tc_horizon_days", f.tc_horizon_days},
           {"negative_bubble", f.negative_bubble}};
    j["max_relative_oscillation"] =
        f.max_relative_oscillation ? Json(*f.max_relative_oscillation) : Json(nullptr);
    return j;
}

Json to_json(const BootstrapConfig& b) {
    return Json{{"n_bootstraps", b.n_bootstraps},
                {"horizon_days", b.horizon_days},
                {"rng_seed", b.rng_seed},
                {"resampling", b.resampling == Resampling::iid ? "iid" : "block"},
                {"block_len", b.block_len},
                {"include_parents", b.include_parents},
                {"admit_tc_before_last_obs", b.admit_tc_before_last_obs}};
}

Json to_json(const CsvFormat& f) {
    return Json{{"date_column", f.date_column},
                {"price_column", f.price_column},
                {"date_format", f.date_format},
                {"use_adjusted_close", f.use_adjusted_close},
                {"skip_invalid", f.skip_invalid},
                {"last_wins", f.last_wins}};
}

std::string scan_to_csv(const ScanResult& scan) {
    std::string out =
        "t1,t2,a,b,c,alpha,omega,phi,tc,sse,n_obs,converged,qualified\n";
    for (const auto& f : scan.fits) {
        const LpplParams& p = f.params;
        out += f.window.t1.iso() + "," + f.window.t2.iso() + "," + num(p.a) + "," +
               num(p.b) + "," + num(p.c) + "," + num(p.alpha) + "," + num(p.omega) +
               "," + num(p.phi) + "," + num(p.tc) + "," + num(f.sse) + "," +
               std::to_string(f.n_obs) + "," + (f.converged ? "1" : "0") + "," +
               (f.qualified ? "1" : "0") + "\n";
    }
    return out;
}

std::string metric_to_csv(const MetricSeries& series) {
    std::string out = "date,value\n";
    for (const auto& e : series.entries) {
        out += e.date.iso() + "," + num(e.value) + "\n";
    }
    return out;
}

const char* metric_kind_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::updays: return "updays";
        case MetricKind::sg_derivative: return "sg_derivative";
        case MetricKind::bubble_index: return "bubble_index";
    }
    return "unknown";
}

Json metric_sidecar(const MetricSeries& series) {
    Json j{{"kind", metric_kind_name(series.kind)}, {"window", series.window}};
    if (series.kind == MetricKind::updays) {
        j["convention"] = "trailing window (d - window, d], zero returns excluded";
    } else if (series.kind == MetricKind::sg_derivative) {
        j["convention"] = "centered order-3 fit on unit-spaced observations";
        j["units"] = "per observation step";
        j["annualization_factor"] = kTradingDaysPerYear;
    } else if (series.kind == MetricKind::bubble_index) {
        j["convention"] =
            "proxy index: qualified-fit fraction of a scan ending at each date";
    }
    return j;
}

}  // namespace lppl
