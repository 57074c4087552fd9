#pragma once

#include <cstdint>
#include <vector>

#include "lppl/scanner.hpp"

namespace lppl {

enum class Resampling { iid, block };

struct BootstrapConfig {
    int n_bootstraps = 10;
    double horizon_days = 182.0;  // six months past the last observation
    std::uint64_t rng_seed = 0;
    Resampling resampling = Resampling::iid;
    int block_len = 10;           // circular blocks, used iff resampling == block
    bool include_parents = true;  // parent fits join the ensemble
    bool admit_tc_before_last_obs = false;  // drop the lower horizon bound when set
};

// Model curve over the fit window plus resampled residuals. Deterministic for
// a given (rng_seed, index); the index keys the per-dataset RNG stream.
LogSeries make_synthetic(const LpplFit& fit, const LogSeries& window_series,
                         const BootstrapConfig& cfg, std::uint64_t index);

struct Ensemble {
    std::vector<double> tcs;       // day ordinals, deterministic order
    int n_refit_failed = 0;        // refits dropped for non-convergence
    int n_outside_horizon = 0;     // tc values dropped by the horizon filter
};

// Refits every qualified fit on its bootstrap datasets and collects the tc
// values inside the horizon. Throws EmptyEnsembleError when nothing survives.
Ensemble ensemble_tc(const ScanResult& scan, const PriceSeries& series,
                     const BootstrapConfig& cfg, const SearchConfig& search,
                     const FilterConfig& filter);

struct ForecastQuantiles {
    Date q05;
    Date q20;
    Date q80;
    Date q95;
    Date last_obs;
    int n_ensemble = 0;
};

// Empirical quantiles by linear interpolation between closest ranks (type 7),
// floored to whole calendar days.
ForecastQuantiles quantiles(std::vector<double> tcs, Date last_obs);

struct ExtrapolationSample {
    double t = 0.0;
    double ln_price = 0.0;
    bool post_critical = false;
};

// Model samples on t2 < t <= t2 + horizon at the given step; points within
// half a day of tc are omitted.
std::vector<ExtrapolationSample> extrapolate(const LpplFit& fit, double horizon_days,
                                             double step_days);

}  // namespace lppl
