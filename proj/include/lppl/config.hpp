#pragma once

#include <map>
#include <optional>

#include "lppl/report.hpp"

namespace lppl {

struct RunConfig {
    std::string asset_id = "asset";
    std::string data_path;
    CsvFormat csv;
    WindowGrid grid;
    SearchConfig search;
    FilterConfig filter;
    BootstrapConfig bootstrap;
    std::string output_dir = ".";
    std::optional<std::uint64_t> seed;  // mandatory for forecast runs
};

// Flat "key = value" file, one setting per line, '#' comments. Keys use the
// dotted names accepted by apply_setting.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies one dotted setting, e.g. "grid.dt1" or "filter.alpha_min".
// Throws lppl::Error on unknown keys or unparseable values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& kv);

ForecastInputs to_inputs(const RunConfig& cfg, const PriceSeries& series);

}  // namespace lppl
