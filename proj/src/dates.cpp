#include "lppl/dates.hpp"

#include <chrono>
#include <cstdio>

#include "lppl/errors.hpp"

namespace lppl {

namespace {

using days_t = std::chrono::sys_days;

int to_ordinal(int y, unsigned m, unsigned d) {
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                    std::chrono::day{d}};
    if (!ymd.ok()) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "invalid calendar date %04d-%02u-%02u", y, m, d);
        throw Error(buf);
    }
    return static_cast<int>(days_t{ymd}.time_since_epoch().count());
}

}  // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    return Date(to_ordinal(year, month, day));
}

Date Date::parse(const std::string& iso) {
    return parse(iso, "%Y-%m-%d");
}

Date Date::parse(const std::string& text, const std::string& format) {
    int y = 0;
    unsigned m = 0, d = 0;
    bool have_y = false, have_m = false, have_d = false;
    std::size_t pos = 0;

    auto read_int = [&](int width_max) -> long {
        std::size_t start = pos;
        bool neg = false;
        if (pos < text.size() && text[pos] == '-' && width_max > 2) {
            neg = true;
            ++pos;
        }
        long v = 0;
        int digits = 0;
        while (pos < text.size() && digits < width_max &&
               text[pos] >= '0' && text[pos] <= '9') {
            v = v * 10 + (text[pos] - '0');
            ++pos;
            ++digits;
        }
        if (digits == 0) {
            throw Error("cannot parse date '" + text + "' with format '" + format +
                        "' (expected digits at position " + std::to_string(start) + ")");
        }
        return neg ? -v : v;
    };

    for (std::size_t i = 0; i < format.size(); ++i) {
        if (format[i] == '%' && i + 1 < format.size()) {
            char tok = format[++i];
            switch (tok) {
                case 'Y': y = static_cast<int>(read_int(5)); have_y = true; break;
                case 'm': m = static_cast<unsigned>(read_int(2)); have_m = true; break;
                case 'd': d = static_cast<unsigned>(read_int(2)); have_d = true; break;
                default:
                    throw Error(std::string("unsupported date format token %") + tok);
            }
        } else {
            if (pos >= text.size() || text[pos] != format[i]) {
                throw Error("cannot parse date '" + text + "' with format '" + format + "'");
            }
            ++pos;
        }
    }
    if (pos != text.size() || !have_y || !have_m || !have_d) {
        throw Error("cannot parse date '" + text + "' with format '" + format + "'");
    }
    return Date(to_ordinal(y, m, d));
}

std::string Date::iso() const {
    std::chrono::year_month_day ymd{days_t{std::chrono::days{days_}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

}  // namespace lppl
