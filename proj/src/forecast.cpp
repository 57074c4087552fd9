#include "lppl/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lppl/errors.hpp"

namespace lppl {

namespace {

// splitmix64: seed mixing for per-dataset RNG streams.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic bounded draw; avoids the implementation-defined distributions.
struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() { return state = mix64(state); }
    std::size_t bounded(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

std::vector<double> residuals(const LpplFit& fit, const LogSeries& series) {
    std::vector<double> res(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        res[i] = series.y[i] - evaluate(fit.params, series.t[i]);
    }
    return res;
}

}  // namespace

LogSeries make_synthetic(const LpplFit& fit, const LogSeries& window_series,
                         const BootstrapConfig& cfg, std::uint64_t index) {
    if (!fit.converged) throw Error("make_synthetic requires a converged fit");
    const std::size_t n = window_series.size();
    if (n == 0) throw Error("make_synthetic: empty window");

    std::vector<double> res = residuals(fit, window_series);
    SplitMix rng{mix64(cfg.rng_seed ^ mix64(index + 1))};

    std::vector<double> drawn(n);
    if (cfg.resampling == Resampling::iid) {
        for (std::size_t i = 0; i < n; ++i) drawn[i] = res[rng.bounded(n)];
    } else {
        const std::size_t block = std::max<std::size_t>(1, cfg.block_len);
        std::size_t filled = 0;
        while (filled < n) {
            std::size_t start = rng.bounded(n);
            for (std::size_t j = 0; j < block && filled < n; ++j) {
                drawn[filled++] = res[(start + j) % n];
            }
        }
    }

    LogSeries out;
    out.t = window_series.t;
    out.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.y[i] = evaluate(fit.params, window_series.t[i]) + drawn[i];
    }
    return out;
}

Ensemble ensemble_tc(const ScanResult& scan, const PriceSeries& series,
                     const BootstrapConfig& cfg, const SearchConfig& search,
                     const FilterConfig& filter) {
    if (cfg.n_bootstraps < 1) throw Error("n_bootstraps must be >= 1");
    if (cfg.horizon_days <= 0) throw Error("horizon_days must be positive");

    // Parents are the scan's qualified fits, re-checked against the caller's
    // filter so a narrower filter restricts the ensemble.
    std::vector<const LpplFit*> parents;
    for (const auto& f : scan.fits) {
        if (f.converged && f.qualified && qualify(f, filter)) parents.push_back(&f);
    }
    if (parents.empty()) {
        throw NoQualifiedFitsError("scan of '" + series.asset_id() +
                                   "' has no qualified fits");
    }

    const double last_obs = static_cast<double>(scan.last_obs_date.ordinal());
    const double upper = last_obs + cfg.horizon_days;
    auto in_horizon = [&](double tc) {
        if (tc > upper) return false;
        return cfg.admit_tc_before_last_obs || tc > last_obs;
    };

    // One slot per (parent, bootstrap) pair so parallel and serial runs agree.
    struct Slot {
        double tc = 0.0;
        bool converged = false;
        bool produced = false;
    };
    const std::size_t n_jobs = parents.size() * static_cast<std::size_t>(cfg.n_bootstraps);
    std::vector<Slot> slots(n_jobs);

    auto run_job = [&](std::size_t job) {
        const std::size_t p = job / cfg.n_bootstraps;
        const LpplFit& parent = *parents[p];
        try {
            PriceSeries sub = slice(series, parent.window.t1, parent.window.t2);
            LogSeries window_series = to_log_series(sub);
            LogSeries synthetic = make_synthetic(parent, window_series, cfg, job);
            Shape start{parent.params.tc, parent.params.alpha, parent.params.omega};
            LpplFit refit = refine_fit(synthetic, parent.window, start, search);
            slots[job] = {refit.params.tc, refit.converged, true};
        } catch (const Error&) {
            slots[job] = {0.0, false, true};
        }
    };

    unsigned n_threads = search.threads > 0 ? static_cast<unsigned>(search.threads)
                                            : std::thread::hardware_concurrency();
    n_threads = std::max<unsigned>(1, std::min<std::size_t>(n_threads, n_jobs));
    if (n_threads <= 1) {
        for (std::size_t j = 0; j < n_jobs; ++j) run_job(j);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t j = t; j < n_jobs; j += n_threads) run_job(j);
            });
        }
        for (auto& th : pool) th.join();
    }

    Ensemble out;
    for (std::size_t p = 0; p < parents.size(); ++p) {
        if (cfg.include_parents) {
            const double tc = parents[p]->params.tc;
            if (in_horizon(tc)) out.tcs.push_back(tc);
            else ++out.n_outside_horizon;
        }
        for (int b = 0; b < cfg.n_bootstraps; ++b) {
            const Slot& s = slots[p * cfg.n_bootstraps + b];
            if (!s.converged) {
                ++out.n_refit_failed;
            } else if (in_horizon(s.tc)) {
                out.tcs.push_back(s.tc);
            } else {
                ++out.n_outside_horizon;
            }
        }
    }
    if (out.tcs.empty()) {
        throw EmptyEnsembleError("no ensemble tc inside the " +
                                 std::to_string(cfg.horizon_days) + "-day horizon");
    }
    return out;
}

ForecastQuantiles quantiles(std::vector<double> tcs, Date last_obs) {
    if (tcs.empty()) throw Error("quantiles of an empty ensemble");
    std::sort(tcs.begin(), tcs.end());

    // Type 7: h = (n-1)p, linear interpolation between floor(h) and floor(h)+1.
    auto at = [&](double p) {
        const std::size_t n = tcs.size();
        const double h = static_cast<double>(n - 1) * p;
        const std::size_t lo = static_cast<std::size_t>(h);
        const double frac = h - static_cast<double>(lo);
        double v = tcs[lo];
        if (lo + 1 < n) v += frac * (tcs[lo + 1] - tcs[lo]);
        return Date(static_cast<int>(std::floor(v)));
    };

    ForecastQuantiles q;
    q.q05 = at(0.05);
    q.q20 = at(0.20);
    q.q80 = at(0.80);
    q.q95 = at(0.95);
    q.last_obs = last_obs;
    q.n_ensemble = static_cast<int>(tcs.size());
    return q;
}

std::vector<ExtrapolationSample> extrapolate(const LpplFit& fit, double horizon_days,
                                             double step_days) {
    if (horizon_days <= 0 || step_days <= 0) {
        throw Error("extrapolate requires positive horizon and step");
    }
    const double t2 = static_cast<double>(fit.window.t2.ordinal());
    std::vector<ExtrapolationSample> out;
    auto push = [&](double t) {
        if (std::abs(t - fit.params.tc) < 0.5) return;  // singularity guard
        out.push_back({t, evaluate(fit.params, t), t > fit.params.tc});
    };
    double t = t2 + step_days;
    for (; t <= t2 + horizon_days - 1e-9; t += step_days) push(t);
    push(t2 + horizon_days);  // the endpoint is always sampled
    return out;
}

}  // namespace lppl
