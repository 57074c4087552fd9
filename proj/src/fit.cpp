#include "lppl/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "lppl/errors.hpp"

namespace lppl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hard validity bounds for the refinement; wider than any sensible filter so
// the search never gets clipped at a filter boundary.
struct Bounds {
    double tc_min, tc_max;
    double alpha_min = 0.01, alpha_max = 2.0;
    double omega_min = 0.5, omega_max = 60.0;

    bool ok(const Shape& s) const {
        return s.tc > tc_min && s.tc <= tc_max && s.alpha >= alpha_min &&
               s.alpha <= alpha_max && s.omega >= omega_min && s.omega <= omega_max;
    }
};

double profiled_sse(const Shape& shape, const LogSeries& series, const Bounds& bounds) {
    if (!bounds.ok(shape)) return kInf;
    try {
        double sse = profile_linear(shape, series).sse;
        return std::isfinite(sse) ? sse : kInf;
    } catch (const DegenerateShapeError&) {
        return kInf;
    }
}

using Point = std::array<double, 3>;  // (tc, alpha, omega)

Shape to_shape(const Point& x) { return Shape{x[0], x[1], x[2]}; }

struct NmResult {
    Point x{};
    double f = kInf;
    bool converged = false;
};

// Nelder-Mead on three parameters. Deterministic; stops when the relative
// simplex spread drops below tol or the iteration budget runs out.
NmResult nelder_mead(const std::function<double(const Point&)>& objective,
                     const Point& start, const Point& steps, int max_iterations,
                     double tol) {
    constexpr int n = 3;
    std::array<Point, n + 1> xs;
    std::array<double, n + 1> fs;
    xs[0] = start;
    for (int i = 0; i < n; ++i) {
        xs[i + 1] = start;
        xs[i + 1][i] += steps[i];
    }
    for (int i = 0; i <= n; ++i) fs[i] = objective(xs[i]);

    auto order = [&] {
        std::array<int, n + 1> idx{0, 1, 2, 3};
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::array<Point, n + 1> xs2;
        std::array<double, n + 1> fs2;
        for (int i = 0; i <= n; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs = xs2;
        fs = fs2;
    };

    bool converged = false;
    for (int iter = 0; iter < max_iterations; ++iter) {
        order();

        double spread = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            scale = std::max(scale, std::abs(xs[0][i]));
            for (int j = 1; j <= n; ++j) {
                spread = std::max(spread, std::abs(xs[j][i] - xs[0][i]));
            }
        }
        if (spread < tol * (1.0 + scale)) {
            converged = true;
            break;
        }

        Point centroid{0, 0, 0};
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) centroid[i] += xs[j][i] / n;
        }
        auto blend = [&](double coef) {
            Point p;
            for (int i = 0; i < n; ++i) p[i] = centroid[i] + coef * (xs[n][i] - centroid[i]);
            return p;
        };

        Point refl = blend(-1.0);
        double f_refl = objective(refl);
        if (f_refl < fs[0]) {
            Point exp_ = blend(-2.0);
            double f_exp = objective(exp_);
            if (f_exp < f_refl) {
                xs[n] = exp_;
                fs[n] = f_exp;
            } else {
                xs[n] = refl;
                fs[n] = f_refl;
            }
        } else if (f_refl < fs[n - 1]) {
            xs[n] = refl;
            fs[n] = f_refl;
        } else {
            Point contr = blend(f_refl < fs[n] ? -0.5 : 0.5);
            double f_contr = objective(contr);
            if (f_contr < std::min(f_refl, fs[n])) {
                xs[n] = contr;
                fs[n] = f_contr;
            } else {
                for (int j = 1; j <= n; ++j) {
                    for (int i = 0; i < n; ++i) xs[j][i] = xs[0][i] + 0.5 * (xs[j][i] - xs[0][i]);
                    fs[j] = objective(xs[j]);
                }
            }
        }
    }
    order();
    return NmResult{xs[0], fs[0], converged};
}

bool shape_less(const Shape& a, const Shape& b) {
    if (a.tc != b.tc) return a.tc < b.tc;
    return a.omega < b.omega;
}

// The model depends on time only through t - tc, so the search runs with the
// origin shifted to t2: tc is then O(horizon) instead of O(epoch ordinal) and
// the relative step tolerance means what it says.
LogSeries shift_origin(const LogSeries& series, double t2) {
    LogSeries out;
    out.t.reserve(series.size());
    out.y = series.y;
    for (double t : series.t) out.t.push_back(t - t2);
    return out;
}

LpplFit build_fit(const Shape& shifted_shape, const LogSeries& shifted_series,
                  double t2, FitWindow window, bool converged) {
    LinearProfile prof = profile_linear(shifted_shape, shifted_series);
    LpplFit out;
    out.params = to_params(shifted_shape, prof);
    out.params.tc += t2;
    out.window = window;
    out.sse = prof.sse;
    out.n_obs = static_cast<int>(shifted_series.size());
    out.converged = converged;
    out.qualified = false;
    return out;
}

}  // namespace

LpplFit refine_fit(const LogSeries& series, FitWindow window, const Shape& start,
                   const SearchConfig& search) {
    const double t2 = series.t.back();
    LogSeries shifted = shift_origin(series, t2);
    Bounds bounds{0.0, 2.0 * search.tc_horizon_days};
    auto objective = [&](const Point& x) {
        return profiled_sse(to_shape(x), shifted, bounds);
    };

    Point x0{start.tc - t2, start.alpha, start.omega};
    Point steps{std::max(2.0, 0.05 * x0[0]), 0.05, 0.5};
    NmResult r = nelder_mead(objective, x0, steps, search.max_iterations, search.tolerance);
    if (!std::isfinite(r.f)) {
        throw FitError("refinement could not find an admissible shape");
    }
    return build_fit(to_shape(r.x), shifted, t2, window, r.converged);
}

LpplFit fit(const PriceSeries& window_series, const SearchConfig& search) {
    LogSeries series = to_log_series(window_series);
    if (static_cast<int>(series.size()) < search.min_window_obs) {
        throw FitError("window population " + std::to_string(series.size()) +
                       " below minimum " + std::to_string(search.min_window_obs));
    }
    FitWindow window{window_series.first_date(), window_series.last_date()};
    const double t2 = series.t.back();
    LogSeries shifted = shift_origin(series, t2);
    Bounds bounds{0.0, 2.0 * search.tc_horizon_days};

    auto linspace = [](double lo, double hi, int count) {
        std::vector<double> out;
        if (count <= 1) {
            out.push_back(lo);
            return out;
        }
        for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
        return out;
    };

    struct Node {
        double sse;
        Shape shape;  // tc relative to t2
    };
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(search.tc_grid) * search.alpha_grid *
                  search.omega_grid);
    for (int k = 1; k <= search.tc_grid; ++k) {
        const double tc = search.tc_horizon_days * k / search.tc_grid;
        for (double alpha : linspace(search.alpha_min, search.alpha_max, search.alpha_grid)) {
            for (double omega : linspace(search.omega_min, search.omega_max, search.omega_grid)) {
                Shape shape{tc, alpha, omega};
                double sse = profiled_sse(shape, shifted, bounds);
                if (std::isfinite(sse)) nodes.push_back({sse, shape});
            }
        }
    }
    if (nodes.empty()) throw FitError("no admissible start converged");

    std::stable_sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
        if (a.sse != b.sse) return a.sse < b.sse;
        return shape_less(a.shape, b.shape);
    });

    auto objective = [&](const Point& x) {
        return profiled_sse(to_shape(x), shifted, bounds);
    };

    const int n_starts = std::min<int>(search.refine_starts, static_cast<int>(nodes.size()));
    bool have_best = false;
    NmResult best;
    for (int i = 0; i < n_starts; ++i) {
        const Shape& s0 = nodes[i].shape;
        Point x0{s0.tc, s0.alpha, s0.omega};
        Point steps{std::max(2.0, 0.05 * s0.tc), 0.05, 0.5};
        NmResult r = nelder_mead(objective, x0, steps, search.max_iterations,
                                 search.tolerance);
        if (!std::isfinite(r.f)) continue;
        if (!have_best || r.f < best.f ||
            (r.f == best.f && shape_less(to_shape(r.x), to_shape(best.x)))) {
            best = r;
            have_best = true;
        }
    }
    if (!have_best) throw FitError("no admissible start converged");
    return build_fit(to_shape(best.x), shifted, t2, window, best.converged);
}

bool qualify(const LpplFit& fit, const FilterConfig& filter) {
    if (!fit.converged) return false;
    const LpplParams& p = fit.params;
    if (p.alpha < filter.alpha_min || p.alpha > filter.alpha_max) return false;
    if (p.omega < filter.omega_min || p.omega > filter.omega_max) return false;
    if (filter.require_negative_b) {
        const bool sign_ok = filter.negative_bubble ? (p.b > 0.0) : (p.b < 0.0);
        if (!sign_ok) return false;
    }
    const double lead = p.tc - static_cast<double>(fit.window.t2.ordinal());
    if (!(lead > 0.0 && lead <= filter.tc_horizon_days)) return false;
    if (filter.max_relative_oscillation) {
        if (p.b == 0.0) return false;
        if (std::abs(p.c / p.b) > *filter.max_relative_oscillation) return false;
    }
    return true;
}

}  // namespace lppl
