#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "lppl/model.hpp"
#include "lppl/timeseries.hpp"

namespace testutil {

using namespace lppl;

inline PriceSeries daily_series(Date start, const std::vector<double>& prices,
                                std::string asset = "test") {
    std::vector<Observation> obs;
    obs.reserve(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) {
        obs.push_back({start + static_cast<int>(i), prices[i]});
    }
    return PriceSeries(std::move(asset), "fixture", std::move(obs));
}

// Daily prices following the model exactly, plus optional gaussian ln-noise.
inline PriceSeries synthetic_lppl(const LpplParams& params, Date t1, Date t2,
                                  double noise_std = 0.0, unsigned rng_seed = 0,
                                  std::string asset = "synthetic") {
    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> noise(0.0, noise_std);
    std::vector<Observation> obs;
    for (Date d = t1; d <= t2; d += 1) {
        double ln_p = evaluate(params, static_cast<double>(d.ordinal()));
        if (noise_std > 0.0) ln_p += noise(rng);
        obs.push_back({d, std::exp(ln_p)});
    }
    return PriceSeries(std::move(asset), "fixture", std::move(obs));
}

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("lppl_test_" + name);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
    return path.string();
}

}  // namespace testutil
