#pragma once

#include <json.hpp>

#include "lppl/diagnostics.hpp"
#include "lppl/forecast.hpp"

namespace lppl {

using Json = nlohmann::ordered_json;

Json to_json(const LpplFit& fit);
Json to_json(const ScanResult& scan);
Json to_json(const ForecastQuantiles& quantiles);
Json to_json(const Drawdown& drawdown);
Json to_json(const WindowGrid& grid);
Json to_json(const SearchConfig& search);
Json to_json(const FilterConfig& filter);
Json to_json(const BootstrapConfig& bootstrap);
Json to_json(const CsvFormat& format);

// One fit per row; infinite sse from failed windows serializes empty.
std::string scan_to_csv(const ScanResult& scan);

// "date,value" rows plus a JSON sidecar describing kind and conventions.
std::string metric_to_csv(const MetricSeries& series);
Json metric_sidecar(const MetricSeries& series);

const char* metric_kind_name(MetricKind kind);

}  // namespace lppl
