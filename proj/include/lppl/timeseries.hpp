#pragma once

#include <string>
#include <vector>

#include "lppl/dates.hpp"

namespace lppl {

struct Observation {
    Date date;
    double price = 0.0;
};

// Dated, strictly positive prices. Dates strictly increasing, never empty.
// Immutable after construction; safe to share across workers.
class PriceSeries {
public:
    PriceSeries(std::string asset_id, std::string source, std::vector<Observation> obs);

    const std::vector<Observation>& observations() const { return obs_; }
    const std::string& asset_id() const { return asset_id_; }
    const std::string& source() const { return source_; }

    std::size_t size() const { return obs_.size(); }
    Date first_date() const { return obs_.front().date; }
    Date last_date() const { return obs_.back().date; }

    // Argmax of price over the full series; earliest date on ties.
    Date peak_date() const;

private:
    std::string asset_id_;
    std::string source_;
    std::vector<Observation> obs_;
};

enum class Sign { up, down, zero };

struct ReturnEntry {
    Date date;      // date of the later close
    double value = 0.0;
    Sign sign = Sign::zero;
};

struct ReturnSeries {
    std::vector<ReturnEntry> entries;
};

struct CsvFormat {
    std::string date_column = "date";
    std::string price_column = "close";
    std::string date_format = "%Y-%m-%d";
    bool use_adjusted_close = false;  // prefer an "adj close" column when present
    bool skip_invalid = false;        // drop unusable rows instead of failing
    bool last_wins = false;           // duplicate dates keep the last row seen

    // Yahoo historical export: Date,Open,High,Low,Close,Adj Close,Volume.
    static CsvFormat yahoo();
};

PriceSeries load_csv(const std::string& path, const CsvFormat& format,
                     std::string asset_id = "", std::string source = "");

// Canonical reproducibility snapshot: header "date,close", ISO dates, LF endings.
void write_csv(const PriceSeries& series, const std::string& path);

// One-day close-to-close differences; entry i carries the date of close i+1.
ReturnSeries returns(const PriceSeries& series);

// All observations with t1 <= date <= t2. Throws on an empty result.
PriceSeries slice(const PriceSeries& series, Date t1, Date t2);

}  // namespace lppl
