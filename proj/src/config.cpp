#include "lppl/config.hpp"

#include <fstream>

#include "lppl/errors.hpp"

namespace lppl {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw Error("expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& v) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw Error("");
        return d;
    } catch (...) {
        throw Error("expected a number, got '" + v + "'");
    }
}

int parse_int(const std::string& v) {
    try {
        std::size_t used = 0;
        int i = std::stoi(v, &used);
        if (used != v.size()) throw Error("");
        return i;
    } catch (...) {
        throw Error("expected an integer, got '" + v + "'");
    }
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error("cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) {
            throw Error(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        kv[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
    }
    return kv;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "asset.id") cfg.asset_id = value;
        else if (key == "data.path") cfg.data_path = value;
        else if (key == "data.preset") {
            if (value == "yahoo") cfg.csv = CsvFormat::yahoo();
            else if (value == "default") cfg.csv = CsvFormat{};
            else throw Error("unknown preset '" + value + "' (default|yahoo)");
        }
        else if (key == "data.date_column") cfg.csv.date_column = value;
        else if (key == "data.price_column") cfg.csv.price_column = value;
        else if (key == "data.date_format") cfg.csv.date_format = value;
        else if (key == "data.use_adjusted_close") cfg.csv.use_adjusted_close = parse_bool(value);
        else if (key == "data.skip_invalid") cfg.csv.skip_invalid = parse_bool(value);
        else if (key == "data.last_wins") cfg.csv.last_wins = parse_bool(value);
        else if (key == "grid.dt1") cfg.grid.dt1 = parse_double(value);
        else if (key == "grid.dt2") cfg.grid.dt2 = parse_double(value);
        else if (key == "grid.min_len") cfg.grid.min_len = parse_double(value);
        else if (key == "grid.max_len") cfg.grid.max_len = parse_double(value);
        else if (key == "grid.t2_span") cfg.grid.t2_span = parse_double(value);
        else if (key == "search.tc_horizon_days") cfg.search.tc_horizon_days = parse_double(value);
        else if (key == "search.tc_grid") cfg.search.tc_grid = parse_int(value);
        else if (key == "search.alpha_min") cfg.search.alpha_min = parse_double(value);
        else if (key == "search.alpha_max") cfg.search.alpha_max = parse_double(value);
        else if (key == "search.alpha_grid") cfg.search.alpha_grid = parse_int(value);
        else if (key == "search.omega_min") cfg.search.omega_min = parse_double(value);
        else if (key == "search.omega_max") cfg.search.omega_max = parse_double(value);
        else if (key == "search.omega_grid") cfg.search.omega_grid = parse_int(value);
        else if (key == "search.refine_starts") cfg.search.refine_starts = parse_int(value);
        else if (key == "search.max_iterations") cfg.search.max_iterations = parse_int(value);
        else if (key == "search.tolerance") cfg.search.tolerance = parse_double(value);
        else if (key == "search.min_window_obs") cfg.search.min_window_obs = parse_int(value);
        else if (key == "search.threads") cfg.search.threads = parse_int(value);
        else if (key == "filter.alpha_min") cfg.filter.alpha_min = parse_double(value);
        else if (key == "filter.alpha_max") cfg.filter.alpha_max = parse_double(value);
        else if (key == "filter.omega_min") cfg.filter.omega_min = parse_double(value);
        else if (key == "filter.omega_max") cfg.filter.omega_max = parse_double(value);
        else if (key == "filter.require_negative_b") cfg.filter.require_negative_b = parse_bool(value);
        else if (key == "filter.tc_horizon_days") cfg.filter.tc_horizon_days = parse_double(value);
        else if (key == "filter.max_relative_oscillation") {
            cfg.filter.max_relative_oscillation =
                value == "none" ? std::nullopt : std::optional<double>(parse_double(value));
        }
        else if (key == "filter.negative_bubble") cfg.filter.negative_bubble = parse_bool(value);
        else if (key == "bootstrap.n_bootstraps") cfg.bootstrap.n_bootstraps = parse_int(value);
        else if (key == "bootstrap.horizon_days") cfg.bootstrap.horizon_days = parse_double(value);
        else if (key == "bootstrap.resampling") {
            if (value == "iid") cfg.bootstrap.resampling = Resampling::iid;
            else if (value == "block") cfg.bootstrap.resampling = Resampling::block;
            else throw Error("unknown resampling '" + value + "' (iid|block)");
        }
        else if (key == "bootstrap.block_len") cfg.bootstrap.block_len = parse_int(value);
        else if (key == "bootstrap.include_parents") cfg.bootstrap.include_parents = parse_bool(value);
        else if (key == "bootstrap.admit_tc_before_last_obs") {
            cfg.bootstrap.admit_tc_before_last_obs = parse_bool(value);
        }
        else if (key == "output.dir") cfg.output_dir = value;
        else if (key == "seed") {
            cfg.seed = std::stoull(value);
            cfg.bootstrap.rng_seed = *cfg.seed;
        }
        else throw Error("unknown config key '" + key + "'");
    } catch (const Error& e) {
        throw Error(std::string("config ") + key + ": " + e.what());
    }
}

void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) apply_setting(cfg, k, v);
}

ForecastInputs to_inputs(const RunConfig& cfg, const PriceSeries& series) {
    ForecastInputs inputs;
    inputs.asset_id = cfg.asset_id;
    inputs.source = series.source();
    inputs.data_path = cfg.data_path;
    inputs.csv = cfg.csv;
    inputs.grid = cfg.grid;
    inputs.search = cfg.search;
    inputs.filter = cfg.filter;
    inputs.bootstrap = cfg.bootstrap;
    return inputs;
}

}  // namespace lppl
