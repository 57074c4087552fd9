#include "lppl/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "lppl/errors.hpp"

namespace lppl {

Drawdown max_drawdown(const PriceSeries& series, Date from, Date to) {
    PriceSeries window = slice(series, from, to);
    const auto& obs = window.observations();
    if (obs.size() < 2) throw Error("max_drawdown needs >= 2 observations in range");

    Drawdown best;
    bool found = false;
    const Observation* peak = &obs.front();
    for (std::size_t i = 1; i < obs.size(); ++i) {
        if (obs[i - 1].price > peak->price) peak = &obs[i - 1];
        const double depth = 1.0 - obs[i].price / peak->price;
        if (depth <= 0.0) continue;
        const int duration = obs[i].date - peak->date;
        const bool better =
            !found || depth > best.depth ||
            (depth == best.depth &&
             (peak->date < best.peak_date ||
              (peak->date == best.peak_date && duration < best.duration_days)));
        if (better) {
            best = {peak->date, obs[i].date, depth, duration, false};
            found = true;
        }
    }
    if (!found) {
        const Observation& top = *std::max_element(
            obs.begin(), obs.end(), [](const Observation& a, const Observation& b) {
                return a.price < b.price;
            });
        return {top.date, top.date, 0.0, 0, true};
    }
    return best;
}

MetricSeries updays_fraction(const ReturnSeries& returns, int window_days) {
    if (window_days <= 0) throw Error("window_days must be positive");
    const auto& entries = returns.entries;
    if (entries.empty()) throw Error("empty return series");
    const int span = entries.back().date - entries.front().date;
    if (span < window_days - 1) {
        throw Error("return series spans " + std::to_string(span + 1) +
                    " days, below window " + std::to_string(window_days));
    }

    MetricSeries out;
    out.window = window_days;
    out.kind = MetricKind::updays;

    std::size_t lo = 0;
    int ups = 0, downs = 0;
    auto add = [&](const ReturnEntry& e, int dir) {
        if (e.sign == Sign::up) ups += dir;
        else if (e.sign == Sign::down) downs += dir;
    };

    for (std::size_t i = 0; i < entries.size(); ++i) {
        add(entries[i], +1);
        const Date d = entries[i].date;
        while (entries[lo].date <= d - window_days) add(entries[lo++], -1);
        if (d - entries.front().date < window_days - 1) continue;  // partial coverage
        if (ups + downs == 0) continue;
        out.entries.push_back({d, double(ups) / double(ups + downs)});
    }
    return out;
}

namespace {

// First-derivative weights at the center of a symmetric window, from the
// least-squares polynomial of the given order on unit-spaced abscissae.
Eigen::VectorXd sg_center_derivative_weights(int half, int order) {
    const int n = 2 * half + 1;
    Eigen::MatrixXd design(n, order + 1);
    for (int i = 0; i < n; ++i) {
        const double x = i - half;
        double p = 1.0;
        for (int j = 0; j <= order; ++j) {
            design(i, j) = p;
            p *= x;
        }
    }
    // Row 1 of the pseudo-inverse: derivative of the fitted polynomial at 0.
    Eigen::MatrixXd gram = design.transpose() * design;
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(order + 1);
    e1(1) = 1.0;
    return design * gram.ldlt().solve(e1);
}

}  // namespace

MetricSeries sg_derivative(const PriceSeries& series, const SgOptions& options) {
    int window = options.window_obs;
    if (window % 2 == 0) ++window;  // symmetric stencil needs an odd count
    if (options.order < 1) throw Error("sg order must be >= 1");
    if (window < options.order + 2) throw Error("sg window too small for order");
    const auto& obs = series.observations();
    if (static_cast<int>(obs.size()) < window) {
        throw Error("series length " + std::to_string(obs.size()) +
                    " below sg window " + std::to_string(window));
    }

    std::vector<double> values(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        values[i] = options.on_log_price ? std::log(obs[i].price) : obs[i].price;
    }

    const int half = (window - 1) / 2;
    Eigen::VectorXd weights = sg_center_derivative_weights(half, options.order);

    MetricSeries out;
    out.window = window;
    out.kind = MetricKind::sg_derivative;
    for (std::size_t c = half; c + half < obs.size(); ++c) {
        double acc = 0.0;
        for (int j = -half; j <= half; ++j) acc += weights(j + half) * values[c + j];
        out.entries.push_back({obs[c].date, acc});
    }
    return out;
}

double trend_slope(const PriceSeries& series, Date from, Date to) {
    PriceSeries window = slice(series, from, to);
    const auto& obs = window.observations();
    if (obs.size() < 2) throw Error("trend_slope needs >= 2 observations in range");

    double mean_t = 0.0, mean_y = 0.0;
    for (const auto& o : obs) {
        mean_t += o.date.ordinal();
        mean_y += std::log(o.price);
    }
    mean_t /= obs.size();
    mean_y /= obs.size();

    double cov = 0.0, var = 0.0;
    for (const auto& o : obs) {
        const double dt = o.date.ordinal() - mean_t;
        cov += dt * (std::log(o.price) - mean_y);
        var += dt * dt;
    }
    if (var == 0.0) throw Error("trend_slope: degenerate range");
    const double per_day = cov / var;
    return std::exp(per_day * 365.25) - 1.0;
}

double bubble_index(const PriceSeries& series, Date as_of, const WindowGrid& grid,
                    const SearchConfig& search, const FilterConfig& filter) {
    if (as_of <= series.first_date()) throw Error("bubble_index: as_of precedes data");
    PriceSeries upto = slice(series, series.first_date(), as_of);
    ScanResult result = scan(upto, grid, search, filter);
    if (result.n_tested == 0) throw Error("bubble_index: no windows tested at " + as_of.iso());
    return double(result.n_found) / double(result.n_tested);
}

}  // namespace lppl
