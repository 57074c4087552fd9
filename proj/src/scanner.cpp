#include "lppl/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

#include "lppl/errors.hpp"

namespace lppl {

void WindowGrid::validate() const {
    if (dt1 <= 0 || dt2 <= 0 || min_len <= 0 || max_len <= 0 || t2_span < 0) {
        throw Error("window grid fields must be positive");
    }
    if (min_len >= max_len) throw Error("window grid requires min_len < max_len");
    if (dt1 > min_len) throw Error("window grid requires dt1 <= min_len");
}

namespace {

struct ObsIndex {
    const std::vector<Observation>& obs;

    auto lower(double nominal) const {  // first obs with date >= nominal
        return std::lower_bound(obs.begin(), obs.end(), nominal,
                                [](const Observation& o, double v) {
                                    return o.date.ordinal() < v;
                                });
    }

    // Latest observation date <= nominal (snap t2 inward).
    std::optional<int> snap_t2(double nominal) const {
        auto it = std::upper_bound(obs.begin(), obs.end(), nominal,
                                   [](double v, const Observation& o) {
                                       return v < o.date.ordinal();
                                   });
        if (it == obs.begin()) return std::nullopt;
        return std::prev(it)->date.ordinal();
    }

    // Earliest observation date >= nominal (snap t1 inward).
    std::optional<int> snap_t1(double nominal) const {
        auto it = lower(nominal);
        if (it == obs.end()) return std::nullopt;
        return it->date.ordinal();
    }

    long population(int t1, int t2) const {
        return std::distance(lower(t1), lower(t2 + 1.0));
    }
};

// Visits one (t1, t2) pair per nominal grid node whose endpoints snap inward
// to observations. The per-t2 visit count is the arithmetic progression
// floor((min(max_len, t2 - first) - min_len)/dt1) + 1 on the snapped t2.
template <typename Fn>
void for_each_grid_window(const PriceSeries& series, const WindowGrid& grid, Fn&& fn) {
    const ObsIndex index{series.observations()};
    const double last = series.last_date().ordinal();
    const double first = series.first_date().ordinal();

    for (double nominal_t2 = last; nominal_t2 >= last - grid.t2_span;
         nominal_t2 -= grid.dt2) {
        const auto t2 = index.snap_t2(nominal_t2);
        if (!t2) continue;
        const double lower = std::max(*t2 - grid.max_len, first);
        const double start_t1 = *t2 - grid.min_len;
        for (double nominal_t1 = start_t1; nominal_t1 >= lower; nominal_t1 -= grid.dt1) {
            const auto t1 = index.snap_t1(nominal_t1);
            if (!t1) continue;  // unreachable: nominal_t1 >= first
            fn(*t1, *t2);
        }
    }
}

}  // namespace

std::vector<FitWindow> generate_windows(const PriceSeries& series, const WindowGrid& grid,
                                        int min_obs) {
    grid.validate();
    const ObsIndex index{series.observations()};
    const double span = series.last_date() - series.first_date();
    if (span < grid.min_len) {
        throw Error("series spans " + std::to_string(span) + " days, below min_len " +
                    std::to_string(grid.min_len));
    }

    std::vector<FitWindow> windows;
    for_each_grid_window(series, grid, [&](int t1, int t2) {
        if (min_obs > 0 && index.population(t1, t2) < min_obs) return;
        windows.push_back({Date(t1), Date(t2)});
    });

    std::stable_sort(windows.begin(), windows.end(),
                     [](const FitWindow& a, const FitWindow& b) {
                         if (a.t2 != b.t2) return a.t2 > b.t2;
                         return (a.t2 - a.t1) < (b.t2 - b.t1);
                     });
    return windows;
}

long nominal_window_count(const PriceSeries& series, const WindowGrid& grid) {
    grid.validate();
    long count = 0;
    for_each_grid_window(series, grid, [&](int, int) { ++count; });
    return count;
}

ScanResult scan(const PriceSeries& series, const WindowGrid& grid,
                const SearchConfig& search, const FilterConfig& filter) {
    std::vector<FitWindow> windows = generate_windows(series, grid, search.min_window_obs);

    ScanResult result;
    result.asset_id = series.asset_id();
    result.grid = grid;
    result.last_obs_date = series.last_date();
    result.peak_date = series.peak_date();
    result.fits.resize(windows.size());

    auto run_window = [&](std::size_t i) {
        const FitWindow& w = windows[i];
        try {
            PriceSeries sub = slice(series, w.t1, w.t2);
            LpplFit f = fit(sub, search);
            f.qualified = qualify(f, filter);
            result.fits[i] = f;
        } catch (const Error&) {
            LpplFit failed;
            failed.window = w;
            failed.sse = std::numeric_limits<double>::infinity();
            result.fits[i] = failed;
        }
    };

    unsigned n_threads = search.threads > 0 ? static_cast<unsigned>(search.threads)
                                            : std::thread::hardware_concurrency();
    n_threads = std::max<unsigned>(1, std::min<std::size_t>(n_threads, windows.size()));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < windows.size(); ++i) run_window(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < windows.size(); i += n_threads) run_window(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    result.n_tested = static_cast<int>(result.fits.size());
    result.n_found = static_cast<int>(
        std::count_if(result.fits.begin(), result.fits.end(),
                      [](const LpplFit& f) { return f.qualified; }));
    return result;
}

}  // namespace lppl
