#include "lppl/model.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "lppl/errors.hpp"

namespace lppl {

double evaluate(const LpplParams& p, double t) {
    const double d = std::abs(t - p.tc);
    if (d == 0.0) {
        throw Error("lppl model is singular at t == tc");
    }
    const double u = std::pow(d, p.alpha);
    return p.a + p.b * u + p.c * u * std::cos(p.omega * std::log(d) + p.phi);
}

LogSeries to_log_series(const PriceSeries& series) {
    LogSeries out;
    out.t.reserve(series.size());
    out.y.reserve(series.size());
    for (const auto& o : series.observations()) {
        out.t.push_back(static_cast<double>(o.date.ordinal()));
        out.y.push_back(std::log(o.price));
    }
    return out;
}

LinearProfile profile_linear(const Shape& shape, const LogSeries& series) {
    const std::size_t n = series.size();
    if (n == 0) throw Error("profile_linear: empty series");
    if (shape.tc >= series.t.front() && shape.tc <= series.t.back()) {
        throw DegenerateShapeError("tc lies inside the sample interval");
    }

    Eigen::MatrixXd design(n, 4);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(series.t[i] - shape.tc);
        const double u = std::pow(d, shape.alpha);
        const double w = shape.omega * std::log(d);
        design(i, 0) = 1.0;
        design(i, 1) = u;
        design(i, 2) = u * std::cos(w);
        design(i, 3) = u * std::sin(w);
        rhs(i) = series.y[i];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 4) {
        throw DegenerateShapeError("rank-deficient design matrix for shape (tc=" +
                                   std::to_string(shape.tc) + ", alpha=" +
                                   std::to_string(shape.alpha) + ", omega=" +
                                   std::to_string(shape.omega) + ")");
    }
    Eigen::Vector4d beta = qr.solve(rhs);

    LinearProfile out;
    out.a = beta(0);
    out.b = beta(1);
    out.c1 = beta(2);
    out.c2 = beta(3);
    out.sse = (design * beta - rhs).squaredNorm();
    return out;
}

LpplParams to_params(const Shape& shape, const LinearProfile& profile) {
    LpplParams p;
    p.a = profile.a;
    p.b = profile.b;
    p.c = std::hypot(profile.c1, profile.c2);
    p.alpha = shape.alpha;
    p.omega = shape.omega;
    p.tc = shape.tc;
    // c cos(w + phi) = c1 cos(w) + c2 sin(w)  =>  c cos(phi) = c1, c sin(phi) = -c2
    double phi = (p.c > 0.0) ? std::atan2(-profile.c2, profile.c1) : 0.0;
    const double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    p.phi = phi;
    return p;
}

}  // namespace lppl
