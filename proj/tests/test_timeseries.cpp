#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lppl/errors.hpp"
#include "lppl/timeseries.hpp"

using namespace lppl;
using testutil::daily_series;
using testutil::temp_dir;
using testutil::write_file;

TEST_CASE("date parsing and arithmetic") {
    Date d = Date::parse("2009-10-29");
    CHECK(d.iso() == "2009-10-29");
    CHECK((d + 1).iso() == "2009-10-30");
    CHECK(Date::parse("2009-11-02") - d == 4);
    CHECK(Date::parse("10/29/2009", "%m/%d/%Y") == d);
    CHECK(Date::parse("1969-12-31").ordinal() == -1);
    CHECK_THROWS_AS(Date::parse("2009-13-01"), Error);
    CHECK_THROWS_AS(Date::parse("not a date"), Error);
}

TEST_CASE("load_csv parses a minimal well-formed file") {
    auto dir = temp_dir("csv_min");
    auto path = write_file(dir / "mini.csv",
                           "date,close\n2009-01-02,100.0\n2009-01-05,101.0\n");
    PriceSeries s = load_csv(path, CsvFormat{}, "mini");
    REQUIRE(s.size() == 2);
    CHECK(s.first_date() == Date::parse("2009-01-02"));
    CHECK(s.observations()[1].price == 101.0);
}

TEST_CASE("load_csv rejects non-positive prices unless skip_invalid") {
    auto dir = temp_dir("csv_bad");
    auto path = write_file(dir / "zero.csv",
                           "date,close\n2009-01-02,100.0\n2009-01-05,0\n2009-01-06,99.5\n");
    CHECK_THROWS_WITH_AS(load_csv(path, CsvFormat{}), doctest::Contains("non-positive"),
                         IngestError);

    CsvFormat lenient;
    lenient.skip_invalid = true;
    PriceSeries s = load_csv(path, lenient);
    CHECK(s.size() == 2);
}

TEST_CASE("load_csv duplicate dates") {
    auto dir = temp_dir("csv_dup");
    auto path = write_file(dir / "dup.csv",
                           "date,close\n2009-01-02,100\n2009-01-02,101\n2009-01-03,102\n");
    CHECK_THROWS_WITH_AS(load_csv(path, CsvFormat{}), doctest::Contains("duplicate"),
                         IngestError);

    CsvFormat fmt;
    fmt.last_wins = true;
    PriceSeries s = load_csv(path, fmt);
    REQUIRE(s.size() == 2);
    CHECK(s.observations()[0].price == 101.0);
}

TEST_CASE("load_csv yahoo preset uses adjusted close and sorts rows") {
    auto dir = temp_dir("csv_yahoo");
    auto path = write_file(dir / "yahoo.csv",
                           "Date,Open,High,Low,Close,Adj Close,Volume\n"
                           "2009-01-05,10,12,9,11,10.5,1000\n"
                           "2009-01-02,9,11,8,10,9.5,900\n");
    PriceSeries s = load_csv(path, CsvFormat::yahoo(), "^TEST");
    REQUIRE(s.size() == 2);
    CHECK(s.observations()[0].date == Date::parse("2009-01-02"));
    CHECK(s.observations()[0].price == 9.5);
    CHECK(s.observations()[1].price == 10.5);
}

TEST_CASE("load_csv error paths") {
    auto dir = temp_dir("csv_err");
    CHECK_THROWS_AS(load_csv((dir / "missing.csv").string(), CsvFormat{}), IngestError);

    auto garbled = write_file(dir / "garbled.csv", "no header here\n");
    CHECK_THROWS_AS(load_csv(garbled, CsvFormat{}), IngestError);

    CsvFormat lenient;
    lenient.skip_invalid = true;
    auto empty = write_file(dir / "allbad.csv", "date,close\nxxxx,yyy\n");
    CHECK_THROWS_WITH_AS(load_csv(empty, lenient), doctest::Contains("zero valid rows"),
                         IngestError);
}

TEST_CASE("write_csv then load_csv is the identity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> price(0.5, 5000.0);
    std::vector<double> prices;
    for (int i = 0; i < 60; ++i) prices.push_back(price(rng));
    PriceSeries original = daily_series(Date::parse("2008-03-01"), prices, "rt");

    auto dir = temp_dir("csv_rt");
    auto path = (dir / "rt.csv").string();
    write_csv(original, path);
    PriceSeries loaded = load_csv(path, CsvFormat{}, "rt");

    REQUIRE(loaded.size() == original.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded.observations()[i].date == original.observations()[i].date);
        CHECK(loaded.observations()[i].price == original.observations()[i].price);
    }
}

TEST_CASE("returns signs follow the definition") {
    auto series = daily_series(Date(0), {100, 101, 101, 99});
    ReturnSeries r = returns(series);
    REQUIRE(r.entries.size() == 3);
    CHECK(r.entries[0].sign == Sign::up);
    CHECK(r.entries[1].sign == Sign::zero);
    CHECK(r.entries[2].sign == Sign::down);
    CHECK(r.entries[0].date == Date(1));

    auto constant = daily_series(Date(0), {5, 5, 5, 5});
    for (const auto& e : returns(constant).entries) CHECK(e.sign == Sign::zero);

    auto mixed = daily_series(Date(0), {1, 2, 1, 2, 2});
    auto signs = returns(mixed).entries;
    REQUIRE(signs.size() == 4);
    CHECK(signs[0].sign == Sign::up);
    CHECK(signs[1].sign == Sign::down);
    CHECK(signs[2].sign == Sign::up);
    CHECK(signs[3].sign == Sign::zero);

    CHECK_THROWS_AS(returns(daily_series(Date(0), {1.0})), Error);
}

TEST_CASE("returns signs are invariant under positive scaling") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> step(-1.0, 1.0);
    for (double k : {0.001, 3.0, 1e6}) {
        std::vector<double> prices{50.0};
        for (int i = 0; i < 100; ++i) prices.push_back(std::max(1.0, prices.back() + step(rng)));
        auto base = returns(daily_series(Date(0), prices));
        std::vector<double> scaled;
        for (double p : prices) scaled.push_back(p * k);
        auto other = returns(daily_series(Date(0), scaled));
        for (std::size_t i = 0; i < base.entries.size(); ++i) {
            CHECK(base.entries[i].sign == other.entries[i].sign);
        }
    }
}

TEST_CASE("slice keeps inclusive bounds and provenance") {
    std::vector<double> prices(10, 100.0);
    for (std::size_t i = 0; i < prices.size(); ++i) prices[i] += i;
    auto series = daily_series(Date(100), prices, "sliced");

    PriceSeries whole = slice(series, Date(100), Date(109));
    CHECK(whole.size() == series.size());
    CHECK(whole.source() == series.source());

    PriceSeries mid = slice(series, Date(102), Date(106));
    CHECK(mid.size() == 5);
    CHECK(mid.first_date() == Date(102));
    CHECK(mid.last_date() == Date(106));

    CHECK_THROWS_AS(slice(series, Date(0), Date(50)), Error);
    CHECK_THROWS_AS(slice(series, Date(106), Date(102)), Error);

    // idempotence
    PriceSeries twice = slice(mid, Date(102), Date(106));
    CHECK(twice.size() == mid.size());
}

TEST_CASE("PriceSeries invariants are enforced") {
    CHECK_THROWS_AS(PriceSeries("x", "s", {}), IngestError);
    CHECK_THROWS_AS(PriceSeries("x", "s", {{Date(0), 1.0}, {Date(0), 2.0}}), IngestError);
    CHECK_THROWS_AS(PriceSeries("x", "s", {{Date(0), -1.0}}), IngestError);
}

TEST_CASE("peak_date is the earliest argmax") {
    auto series = daily_series(Date(0), {1, 5, 3, 5, 2});
    CHECK(series.peak_date() == Date(1));
}
