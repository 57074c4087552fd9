#pragma once

#include <vector>

#include "lppl/timeseries.hpp"

namespace lppl {

// The seven parameters of the log-periodic power law
//   ln P(t) = a + b|t - tc|^alpha + c|t - tc|^alpha cos(omega ln|t - tc| + phi)
// on the calendar-day ordinal time axis. b < 0 for an upward bubble.
struct LpplParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double alpha = 0.5;
    double omega = 10.0;
    double phi = 0.0;   // canonical range [0, 2*pi)
    double tc = 0.0;    // critical time, day ordinal
};

// Model ln-price at time t. Throws at the singularity t == tc.
double evaluate(const LpplParams& params, double t);

// Log-price samples on the real time axis, strictly increasing t.
struct LogSeries {
    std::vector<double> t;
    std::vector<double> y;

    std::size_t size() const { return t.size(); }
};

LogSeries to_log_series(const PriceSeries& series);

// The nonlinear part of the model; the rest is profiled out linearly.
struct Shape {
    double tc = 0.0;
    double alpha = 0.5;
    double omega = 10.0;
};

// Least-squares solution of the linear reparameterization
//   y = a + b u + c1 u cos(omega ln d) + c2 u sin(omega ln d),  u = d^alpha, d = |t - tc|.
// The paper-form amplitude/phase are c = sqrt(c1^2 + c2^2), phi = atan2(-c2, c1).
struct LinearProfile {
    double a = 0.0;
    double b = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double sse = 0.0;
};

// Exact linear least squares for a fixed shape. The shape's tc must lie strictly
// outside the sample interval. Throws DegenerateShapeError on rank deficiency.
LinearProfile profile_linear(const Shape& shape, const LogSeries& series);

// Converts a profiled solution back to the seven-parameter form, phi in [0, 2*pi).
LpplParams to_params(const Shape& shape, const LinearProfile& profile);

}  // namespace lppl
