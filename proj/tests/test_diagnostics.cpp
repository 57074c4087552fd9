#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "lppl/diagnostics.hpp"
#include "lppl/errors.hpp"

using namespace lppl;
using testutil::daily_series;
using testutil::synthetic_lppl;

namespace {

// All-pairs drawdown with the library's tie rules, as the independent oracle.
Drawdown brute_force_drawdown(const std::vector<Observation>& obs) {
    Drawdown best;
    bool found = false;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            const double depth = 1.0 - obs[j].price / obs[i].price;
            if (depth <= 0.0) continue;
            const int duration = obs[j].date - obs[i].date;
            const bool better =
                !found || depth > best.depth ||
                (depth == best.depth &&
                 (obs[i].date < best.peak_date ||
                  (obs[i].date == best.peak_date && duration < best.duration_days)));
            if (better) {
                best = {obs[i].date, obs[j].date, depth, duration, false};
                found = true;
            }
        }
    }
    if (!found) best.degenerate = true;
    return best;
}

}  // namespace

TEST_CASE("drawdown basics") {
    PriceSeries series = daily_series(Date(0), {100, 90, 95, 80, 85});
    Drawdown d = max_drawdown(series, Date(0), Date(4));
    CHECK(d.peak_date == Date(0));
    CHECK(d.trough_date == Date(3));
    CHECK(d.depth == doctest::Approx(0.20).epsilon(1e-12));
    CHECK(d.duration_days == 3);
    CHECK_FALSE(d.degenerate);

    PriceSeries rising = daily_series(Date(0), {10, 11, 12, 13});
    Drawdown none = max_drawdown(rising, Date(0), Date(3));
    CHECK(none.degenerate);
    CHECK(none.depth == 0.0);
    CHECK(none.peak_date == none.trough_date);

    CHECK_THROWS_AS(max_drawdown(series, Date(4), Date(10)), Error);
}

TEST_CASE("drawdown equals brute force on random series") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> step(0.0, 0.02);
    std::uniform_int_distribution<int> len(2, 200);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> prices{100.0};
        const int n = len(rng);
        for (int i = 1; i < n; ++i) prices.push_back(prices.back() * std::exp(step(rng)));
        PriceSeries series = daily_series(Date(1000), prices);

        Drawdown fast = max_drawdown(series, Date(1000), Date(1000 + n));
        Drawdown slow = brute_force_drawdown(series.observations());
        CHECK(fast.degenerate == slow.degenerate);
        if (!fast.degenerate) {
            CHECK(fast.depth == slow.depth);
            CHECK(fast.peak_date == slow.peak_date);
            CHECK(fast.trough_date == slow.trough_date);
        }
    }
}

TEST_CASE("drawdown depth is scale-invariant") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> step(0.0, 0.03);
    std::vector<double> prices{50.0};
    for (int i = 0; i < 120; ++i) prices.push_back(prices.back() * std::exp(step(rng)));
    PriceSeries base = daily_series(Date(0), prices);
    std::vector<double> scaled;
    for (double p : prices) scaled.push_back(p * 1234.5);
    PriceSeries other = daily_series(Date(0), scaled);

    Drawdown a = max_drawdown(base, Date(0), Date(120));
    Drawdown b = max_drawdown(other, Date(0), Date(120));
    CHECK(a.depth == doctest::Approx(b.depth).epsilon(1e-12));
    CHECK(a.peak_date == b.peak_date);
}

TEST_CASE("updays fraction hand counts") {
    SUBCASE("all-up window") {
        std::vector<double> prices;
        for (int i = 0; i <= 40; ++i) prices.push_back(100.0 + i);
        MetricSeries m = updays_fraction(returns(daily_series(Date(0), prices)), 30);
        REQUIRE(!m.entries.empty());
        for (const auto& e : m.entries) CHECK(e.value == 1.0);
    }

    SUBCASE("up, down, up, zero in one window counts 2/3") {
        PriceSeries series = daily_series(Date(0), {1, 2, 1, 2, 2});
        MetricSeries m = updays_fraction(returns(series), 4);
        REQUIRE(!m.entries.empty());
        CHECK(m.entries.back().date == Date(4));
        CHECK(m.entries.back().value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    }

    SUBCASE("windows with only zero returns are omitted") {
        std::vector<double> prices(20, 7.0);  // constant: every return is zero
        prices.push_back(8.0);                // one final up day
        MetricSeries m = updays_fraction(returns(daily_series(Date(0), prices)), 5);
        // only the last date has a nonzero return inside its trailing window
        REQUIRE(m.entries.size() == 1);
        CHECK(m.entries[0].date == Date(20));
        CHECK(m.entries[0].value == 1.0);
    }

    SUBCASE("span shorter than the window is an error") {
        PriceSeries series = daily_series(Date(0), {1, 2, 3});
        CHECK_THROWS_AS(updays_fraction(returns(series), 30), Error);
    }
}

TEST_CASE("updays fraction against a hand-rolled oracle on random data") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> move(-1, 1);
    std::vector<double> prices{100.0};
    for (int i = 0; i < 150; ++i) prices.push_back(prices.back() + move(rng));
    for (auto& p : prices) p += 200.0;  // keep positive
    PriceSeries series = daily_series(Date(500), prices);
    ReturnSeries rets = returns(series);

    for (int window : {30, 60, 90}) {
        MetricSeries m = updays_fraction(rets, window);
        for (const auto& e : m.entries) {
            int ups = 0, downs = 0;
            for (const auto& r : rets.entries) {
                if (r.date > e.date - window && r.date <= e.date) {
                    if (r.sign == Sign::up) ++ups;
                    if (r.sign == Sign::down) ++downs;
                }
            }
            REQUIRE(ups + downs > 0);
            CHECK(e.value == doctest::Approx(double(ups) / (ups + downs)).epsilon(1e-12));
            CHECK(e.value >= 0.0);
            CHECK(e.value <= 1.0);
        }
    }
}

TEST_CASE("savitzky-golay derivative is exact for low-order polynomials") {
    const int n = 260;
    for (int window : {121, 181}) {
        SUBCASE("linear ln-price") {
            const double slope = 0.0013;
            std::vector<double> prices;
            for (int i = 0; i < n; ++i) prices.push_back(std::exp(5.0 + slope * i));
            MetricSeries m = sg_derivative(daily_series(Date(0), prices), {window, 3, true});
            REQUIRE(!m.entries.empty());
            CHECK(static_cast<int>(m.entries.size()) == n - window + 1);
            for (const auto& e : m.entries) {
                CHECK(e.value == doctest::Approx(slope).epsilon(1e-9));
            }
        }
        SUBCASE("cubic ln-price") {
            auto cubic = [](double x) {
                return 4.0 + 1e-3 * x - 2e-5 * x * x + 5e-8 * x * x * x;
            };
            auto dcubic = [](double x) { return 1e-3 - 4e-5 * x + 15e-8 * x * x; };
            std::vector<double> prices;
            for (int i = 0; i < n; ++i) prices.push_back(std::exp(cubic(i)));
            MetricSeries m = sg_derivative(daily_series(Date(0), prices), {window, 3, true});
            const int half = (window - 1) / 2;
            for (std::size_t k = 0; k < m.entries.size(); ++k) {
                const double center = half + k;
                CHECK(m.entries[k].value ==
                      doctest::Approx(dcubic(center)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("savitzky-golay matches a direct per-window polynomial fit") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> noise(0.0, 0.05);
    const int n = 160;
    const int window = 121;
    std::vector<double> values;
    for (int i = 0; i < n; ++i) values.push_back(3.0 + 0.01 * i + noise(rng));
    std::vector<double> prices;
    for (double v : values) prices.push_back(std::exp(v));
    MetricSeries m = sg_derivative(daily_series(Date(0), prices), {window, 3, true});

    const int half = (window - 1) / 2;
    for (std::size_t k = 0; k < m.entries.size(); ++k) {
        // direct cubic least squares over the window, derivative at its center
        const int c = half + static_cast<int>(k);
        double s[7] = {0}, t[4] = {0};
        for (int j = -half; j <= half; ++j) {
            double p = 1.0;
            for (int d = 0; d <= 6; ++d) {
                s[d] += p;
                if (d <= 3) t[d] += p * values[c + j];
                p *= j;
            }
        }
        // solve the 4x4 normal equations by gaussian elimination
        double A[4][5];
        for (int r = 0; r < 4; ++r) {
            for (int col = 0; col < 4; ++col) A[r][col] = s[r + col];
            A[r][4] = t[r];
        }
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            std::swap(A[col], A[piv]);
            for (int r = 0; r < 4; ++r) {
                if (r == col) continue;
                const double f = A[r][col] / A[col][col];
                for (int cc = col; cc < 5; ++cc) A[r][cc] -= f * A[col][cc];
            }
        }
        const double deriv_at_center = A[1][4] / A[1][1];
        CHECK(m.entries[k].value == doctest::Approx(deriv_at_center).epsilon(1e-8));
    }
}

TEST_CASE("savitzky-golay is linear in the input") {
    const int n = 140;
    const int window = 121;
    std::mt19937_64 rng(47);
    std::normal_distribution<double> noise(0.0, 0.1);
    std::vector<double> x, y;
    for (int i = 0; i < n; ++i) {
        x.push_back(2.0 + noise(rng));
        y.push_back(3.0 + noise(rng));
    }
    const double a = 1.7, b = -0.6;
    std::vector<double> xa, yb, mix;
    for (int i = 0; i < n; ++i) {
        xa.push_back(std::exp(x[i]));
        yb.push_back(std::exp(y[i]));
        mix.push_back(std::exp(a * x[i] + b * y[i]));
    }
    SgOptions opt{window, 3, true};
    MetricSeries mx = sg_derivative(daily_series(Date(0), xa), opt);
    MetricSeries my = sg_derivative(daily_series(Date(0), yb), opt);
    MetricSeries mm = sg_derivative(daily_series(Date(0), mix), opt);
    for (std::size_t k = 0; k < mm.entries.size(); ++k) {
        CHECK(mm.entries[k].value ==
              doctest::Approx(a * mx.entries[k].value + b * my.entries[k].value)
                  .epsilon(1e-9));
    }
}

TEST_CASE("savitzky-golay edge cases") {
    std::vector<double> prices(50, 100.0);
    CHECK_THROWS_AS(sg_derivative(daily_series(Date(0), prices), {121, 3, true}), Error);

    // even window is widened to the next odd count
    std::vector<double> longer(130, 100.0);
    for (std::size_t i = 0; i < longer.size(); ++i) longer[i] += 0.1 * i;
    MetricSeries m = sg_derivative(daily_series(Date(0), longer), {120, 3, false});
    CHECK(m.window == 121);
}

TEST_CASE("trend slope analytic cases") {
    SUBCASE("price doubling over a year annualizes to 100%") {
        const double m = std::log(2.0) / 365.25;
        std::vector<double> prices;
        for (int i = 0; i <= 400; ++i) prices.push_back(100.0 * std::exp(m * i));
        PriceSeries series = daily_series(Date(0), prices);
        CHECK(trend_slope(series, Date(0), Date(400)) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("constant price has zero slope") {
        std::vector<double> prices(60, 42.0);
        PriceSeries series = daily_series(Date(0), prices);
        CHECK(trend_slope(series, Date(0), Date(59)) == doctest::Approx(0.0));
    }
    SUBCASE("degenerate range") {
        PriceSeries series = daily_series(Date(0), {1, 2, 3});
        CHECK_THROWS_AS(trend_slope(series, Date(2), Date(10)), Error);
    }
}

TEST_CASE("bubble index bounds and monotone response") {
    Date t1 = Date::parse("2009-01-05");
    Date t2 = t1 + 260;
    LpplParams truth{11.0, -0.15, 0.03, 0.5, 8.0, 1.0, double(t2.ordinal() + 40)};
    PriceSeries bubble = synthetic_lppl(truth, t1, t2);

    SearchConfig light;
    light.tc_grid = 10;
    light.alpha_grid = 5;
    light.omega_grid = 8;
    light.refine_starts = 4;
    WindowGrid grid;
    grid.t2_span = 0;

    SUBCASE("impossible filters give zero") {
        FilterConfig impossible;
        impossible.alpha_min = 0.9;
        impossible.alpha_max = 0.1;
        CHECK(bubble_index(bubble, t2, grid, light, impossible) == 0.0);
    }

    SUBCASE("wide-open filters on clean data give one") {
        FilterConfig open;
        open.alpha_min = 0.01;
        open.alpha_max = 2.0;
        open.omega_min = 0.5;
        open.omega_max = 60.0;
        open.require_negative_b = false;
        open.tc_horizon_days = 2.0 * SearchConfig{}.tc_horizon_days;
        CHECK(bubble_index(bubble, t2, grid, light, open) == 1.0);
    }

    SUBCASE("mid-bubble index exceeds a flat prefix") {
        // flat prefix, then the bubble takes over
        std::vector<Observation> obs;
        for (Date d = t1 - 200; d < t1; d += 1) {
            obs.push_back({d, std::exp(evaluate(truth, t1.ordinal())) * 0.999});
        }
        for (const auto& o : bubble.observations()) obs.push_back(o);
        PriceSeries combined("combined", "fixture", std::move(obs));

        const double mid = bubble_index(combined, t2, grid, light, FilterConfig{});
        const double flat = bubble_index(combined, t1 - 60, grid, light, FilterConfig{});
        CHECK(mid > flat);
    }

    CHECK_THROWS_AS(bubble_index(bubble, t1, WindowGrid{}, light, FilterConfig{}), Error);
}
