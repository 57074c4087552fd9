#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "lppl/errors.hpp"
#include "lppl/model.hpp"

using namespace lppl;
using testutil::daily_series;

namespace {

// Independent long-double evaluation of the model, kept deliberately separate
// from the implementation path.
long double reference_eval(long double a, long double b, long double c,
                           long double alpha, long double omega, long double phi,
                           long double tc, long double t) {
    const long double d = fabsl(t - tc);
    const long double u = expl(alpha * logl(d));
    return a + b * u + c * u * cosl(omega * logl(d) + phi);
}

LogSeries sample_series(const LpplParams& p, double t_start, int n, double dt = 1.0) {
    LogSeries s;
    for (int i = 0; i < n; ++i) {
        const double t = t_start + i * dt;
        s.t.push_back(t);
        s.y.push_back(evaluate(p, t));
    }
    return s;
}

}  // namespace

TEST_CASE("evaluate constant and unit-distance cases") {
    LpplParams p{7.5, 0.0, 0.0, 0.4, 9.0, 1.0, 1000.0};
    for (double t : {0.0, 500.0, 999.0, 1200.0}) CHECK(evaluate(p, t) == doctest::Approx(7.5));

    LpplParams q{2.0, -0.5, 0.0, 0.37, 9.0, 1.0, 1000.0};
    CHECK(evaluate(q, 999.0) == doctest::Approx(1.5).epsilon(1e-14));  // |t-tc| = 1
    CHECK(evaluate(q, 1001.0) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("evaluate matches the high-precision oracle") {
    // Frozen from a 50-digit evaluation of the model formula.
    LpplParams p1{7.0, -0.5, 0.1, 0.5, 8.0, 0.0, 100.0};
    CHECK(evaluate(p1, 0.0) ==
          doctest::Approx(2.654140692367177108).epsilon(1e-12));

    LpplParams p2{1.25, -0.03, 0.004, 0.33, 11.5, 2.1, 14800.0};
    CHECK(evaluate(p2, 14650.5) ==
          doctest::Approx(1.072536321301890776).epsilon(1e-12));

    LpplParams p3{10.2, -0.8, 0.21, 0.7, 6.28, 5.9, 20000.0};
    CHECK(evaluate(p3, 19000.0) ==
          doctest::Approx(-75.89288958730555281).epsilon(1e-12));
}

TEST_CASE("evaluate agrees with an independent evaluation at random points") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ua(-5, 15), ub(-2, 2), uc(-1, 1),
        ualpha(0.05, 0.95), uomega(2, 25), uphi(0, 6.28), udist(0.5, 2000);
    for (int i = 0; i < 200; ++i) {
        LpplParams p{ua(rng), ub(rng), uc(rng), ualpha(rng), uomega(rng), uphi(rng), 5000.0};
        const double t = p.tc - udist(rng);
        const double got = evaluate(p, t);
        const double want = static_cast<double>(
            reference_eval(p.a, p.b, p.c, p.alpha, p.omega, p.phi, p.tc, t));
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("evaluate throws at the critical time") {
    LpplParams p{1, -1, 0.1, 0.5, 8, 0, 123.0};
    CHECK_THROWS_AS(evaluate(p, 123.0), Error);
}

TEST_CASE("evaluate is invariant under phi -> phi + 2pi") {
    LpplParams p{3.0, -0.4, 0.2, 0.6, 7.0, 1.3, 800.0};
    LpplParams q = p;
    q.phi += 2.0 * std::numbers::pi;
    for (double t : {100.0, 400.0, 799.0}) {
        CHECK(evaluate(p, t) == doctest::Approx(evaluate(q, t)).epsilon(1e-12));
    }
}

TEST_CASE("profile_linear recovers an exact fit") {
    LpplParams truth{4.2, -0.7, 0.15, 0.45, 8.5, 0.9, 400.0};
    LogSeries data = sample_series(truth, 0.0, 150);

    LinearProfile prof = profile_linear({truth.tc, truth.alpha, truth.omega}, data);
    CHECK(prof.a == doctest::Approx(truth.a).epsilon(1e-9));
    CHECK(prof.b == doctest::Approx(truth.b).epsilon(1e-9));
    const double c1 = truth.c * std::cos(truth.phi);
    const double c2 = -truth.c * std::sin(truth.phi);
    CHECK(prof.c1 == doctest::Approx(c1).epsilon(1e-9));
    CHECK(prof.c2 == doctest::Approx(c2).epsilon(1e-9));
    CHECK(prof.sse <= 1e-18);

    LpplParams back = to_params({truth.tc, truth.alpha, truth.omega}, prof);
    CHECK(back.c == doctest::Approx(truth.c).epsilon(1e-9));
    CHECK(back.phi == doctest::Approx(truth.phi).epsilon(1e-9));
}

TEST_CASE("profile_linear on constant data") {
    LogSeries flat;
    for (int i = 0; i < 80; ++i) {
        flat.t.push_back(i);
        flat.y.push_back(3.75);
    }
    LinearProfile prof = profile_linear({200.0, 0.5, 10.0}, flat);
    CHECK(prof.a == doctest::Approx(3.75).epsilon(1e-12));
    CHECK(prof.b == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(prof.c1 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(prof.c2 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(prof.sse <= 1e-18);
}

TEST_CASE("profile_linear rejects degenerate shapes") {
    LogSeries flat;
    for (int i = 0; i < 50; ++i) {
        flat.t.push_back(i);
        flat.y.push_back(1.0 + 0.01 * i);
    }
    // alpha = 0 makes the power-law column constant, collinear with the intercept
    CHECK_THROWS_AS(profile_linear({200.0, 0.0, 10.0}, flat), DegenerateShapeError);
    // tc inside the sample interval
    CHECK_THROWS_AS(profile_linear({25.0, 0.5, 10.0}, flat), DegenerateShapeError);
}

TEST_CASE("profile_linear sse is a minimum over the linear parameters") {
    std::mt19937_64 rng(314);
    std::normal_distribution<double> noise(0.0, 0.05);
    LogSeries data;
    for (int i = 0; i < 50; ++i) {
        data.t.push_back(i * 2.0);
        data.y.push_back(5.0 - 0.01 * i + noise(rng));
    }
    Shape shape{150.0, 0.5, 9.0};
    LinearProfile prof = profile_linear(shape, data);

    auto sse_of = [&](double a, double b, double c1, double c2) {
        double acc = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double d = std::abs(data.t[i] - shape.tc);
            const double u = std::pow(d, shape.alpha);
            const double w = shape.omega * std::log(d);
            const double model = a + b * u + c1 * u * std::cos(w) + c2 * u * std::sin(w);
            acc += (data.y[i] - model) * (data.y[i] - model);
        }
        return acc;
    };

    CHECK(sse_of(prof.a, prof.b, prof.c1, prof.c2) == doctest::Approx(prof.sse).epsilon(1e-9));

    std::uniform_real_distribution<double> delta(-1e-4, 1e-4);
    for (int trial = 0; trial < 1000; ++trial) {
        const double perturbed =
            sse_of(prof.a + delta(rng), prof.b + delta(rng), prof.c1 + delta(rng),
                   prof.c2 + delta(rng));
        CHECK(perturbed >= prof.sse - 1e-12 * std::max(1.0, prof.sse));
    }
}

TEST_CASE("scaling prices shifts only the offset") {
    LpplParams truth{2.0, -0.3, 0.05, 0.5, 10.0, 0.4, 300.0};
    Shape shape{truth.tc, truth.alpha, truth.omega};
    std::mt19937_64 rng(99);
    std::normal_distribution<double> noise(0.0, 0.01);

    LogSeries data = sample_series(truth, 0.0, 100);
    for (auto& y : data.y) y += noise(rng);
    LinearProfile base = profile_linear(shape, data);

    const double k = 12.5;
    LogSeries scaled = data;
    for (auto& y : scaled.y) y += std::log(k);  // prices scaled by k
    LinearProfile other = profile_linear(shape, scaled);

    CHECK(other.a == doctest::Approx(base.a + std::log(k)).epsilon(1e-9));
    CHECK(other.b == doctest::Approx(base.b).epsilon(1e-9));
    CHECK(other.c1 == doctest::Approx(base.c1).epsilon(1e-7));
    CHECK(other.c2 == doctest::Approx(base.c2).epsilon(1e-7));
    CHECK(other.sse == doctest::Approx(base.sse).epsilon(1e-9));
}

TEST_CASE("to_params canonicalizes phi into [0, 2pi)") {
    LinearProfile prof{1.0, -0.5, -0.3, 0.4, 0.0};
    LpplParams p = to_params({100.0, 0.5, 8.0}, prof);
    CHECK(p.phi >= 0.0);
    CHECK(p.phi < 2.0 * std::numbers::pi);
    CHECK(p.c == doctest::Approx(std::hypot(0.3, 0.4)).epsilon(1e-15));
    // reconstruct the two linear oscillation coefficients
    CHECK(p.c * std::cos(p.phi) == doctest::Approx(prof.c1).epsilon(1e-12));
    CHECK(-p.c * std::sin(p.phi) == doctest::Approx(prof.c2).epsilon(1e-12));
}
