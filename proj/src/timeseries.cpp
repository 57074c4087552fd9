#include "lppl/timeseries.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "lppl/errors.hpp"

namespace lppl {

PriceSeries::PriceSeries(std::string asset_id, std::string source,
                         std::vector<Observation> obs)
    : asset_id_(std::move(asset_id)), source_(std::move(source)), obs_(std::move(obs)) {
    if (obs_.empty()) {
        throw IngestError("price series '" + asset_id_ + "' is empty");
    }
    for (std::size_t i = 0; i < obs_.size(); ++i) {
        if (!(obs_[i].price > 0.0)) {
            throw IngestError("non-positive price " + std::to_string(obs_[i].price) +
                              " at " + obs_[i].date.iso());
        }
        if (i > 0 && obs_[i].date <= obs_[i - 1].date) {
            throw IngestError("dates not strictly increasing at " + obs_[i].date.iso());
        }
    }
}

Date PriceSeries::peak_date() const {
    const Observation* best = &obs_.front();
    for (const auto& o : obs_) {
        if (o.price > best->price) best = &o;
    }
    return best->date;
}

CsvFormat CsvFormat::yahoo() {
    CsvFormat f;
    f.date_column = "Date";
    f.price_column = "Close";
    f.use_adjusted_close = true;
    return f;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n\"");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n\"");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(trim(field));
    if (!line.empty() && line.back() == delim) out.push_back("");
    return out;
}

}  // namespace

PriceSeries load_csv(const std::string& path, const CsvFormat& format,
                     std::string asset_id, std::string source) {
    std::ifstream file(path);
    if (!file) throw IngestError("cannot open " + path);

    std::string line;
    if (!std::getline(file, line)) throw IngestError(path + ": empty file");

    auto header = split(line, ',');
    int date_col = -1, price_col = -1, adj_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string h = lower(header[i]);
        if (h == lower(format.date_column)) date_col = static_cast<int>(i);
        if (h == lower(format.price_column)) price_col = static_cast<int>(i);
        if (h == "adj close" || h == "adj_close" || h == "adjclose")
            adj_col = static_cast<int>(i);
    }
    if (date_col < 0 || price_col < 0) {
        throw IngestError(path + ": header lacks columns '" + format.date_column +
                          "'/'" + format.price_column + "'");
    }
    if (format.use_adjusted_close && adj_col >= 0) price_col = adj_col;

    std::vector<Observation> rows;
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split(line, ',');
        auto bad = [&](const std::string& why) {
            if (format.skip_invalid) return true;
            throw IngestError(path + ":" + std::to_string(line_no) + ": " + why);
        };
        if (fields.size() <= std::size_t(std::max(date_col, price_col))) {
            if (bad("too few columns")) continue;
        }
        Date date;
        double price = 0.0;
        try {
            date = Date::parse(fields[date_col], format.date_format);
            const std::string& p = fields[price_col];
            if (p.empty() || lower(p) == "null" || lower(p) == "nan") {
                if (bad("missing price")) continue;
            }
            price = std::stod(p);
        } catch (const Error&) {
            if (bad("unparseable date '" + fields[date_col] + "'")) continue;
        } catch (const std::exception&) {
            if (bad("unparseable price '" + fields[price_col] + "'")) continue;
        }
        if (!(price > 0.0)) {
            if (bad("non-positive price")) continue;
        }
        rows.push_back({date, price});
    }
    if (rows.empty()) throw IngestError(path + ": zero valid rows");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Observation& a, const Observation& b) { return a.date < b.date; });

    std::vector<Observation> dedup;
    dedup.reserve(rows.size());
    for (const auto& r : rows) {
        if (!dedup.empty() && dedup.back().date == r.date) {
            if (!format.last_wins) {
                throw IngestError(path + ": duplicate date " + r.date.iso());
            }
            dedup.back() = r;
        } else {
            dedup.push_back(r);
        }
    }

    if (asset_id.empty()) asset_id = path;
    if (source.empty()) source = "csv:" + path;
    return PriceSeries(std::move(asset_id), std::move(source), std::move(dedup));
}

void write_csv(const PriceSeries& series, const std::string& path) {
    std::ofstream file(path, std::ios::binary);  // binary keeps LF on every platform
    if (!file) throw IngestError("cannot write " + path);
    file << "date,close\n";
    char buf[64];
    for (const auto& o : series.observations()) {
        std::snprintf(buf, sizeof(buf), "%.17g", o.price);
        file << o.date.iso() << ',' << buf << '\n';
    }
}

ReturnSeries returns(const PriceSeries& series) {
    const auto& obs = series.observations();
    if (obs.size() < 2) throw Error("series too short for returns (need >= 2)");
    ReturnSeries out;
    out.entries.reserve(obs.size() - 1);
    for (std::size_t i = 1; i < obs.size(); ++i) {
        double r = obs[i].price - obs[i - 1].price;
        Sign s = r > 0 ? Sign::up : (r < 0 ? Sign::down : Sign::zero);
        out.entries.push_back({obs[i].date, r, s});
    }
    return out;
}

PriceSeries slice(const PriceSeries& series, Date t1, Date t2) {
    if (!(t1 < t2)) throw Error("slice requires t1 < t2");
    std::vector<Observation> kept;
    for (const auto& o : series.observations()) {
        if (o.date >= t1 && o.date <= t2) kept.push_back(o);
    }
    if (kept.empty()) {
        throw Error("slice [" + t1.iso() + ", " + t2.iso() + "] of '" +
                    series.asset_id() + "' is empty");
    }
    return PriceSeries(series.asset_id(), series.source(), std::move(kept));
}

}  // namespace lppl
