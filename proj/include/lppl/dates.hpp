#pragma once

#include <compare>
#include <string>

namespace lppl {

// Calendar date on a whole-day ordinal axis (days since 1970-01-01).
// All window arithmetic in the library is done on this axis.
class Date {
public:
    Date() = default;
    constexpr explicit Date(int ordinal) : days_(ordinal) {}

    static Date from_ymd(int year, unsigned month, unsigned day);

    // Parses "YYYY-MM-DD".
    static Date parse(const std::string& iso);

    // Parses with a format built from %Y, %m, %d tokens and literal separators,
    // e.g. "%m/%d/%Y". Throws lppl::Error on mismatch.
    static Date parse(const std::string& text, const std::string& format);

    int ordinal() const { return days_; }
    std::string iso() const;

    auto operator<=>(const Date&) const = default;
    Date operator+(int d) const { return Date(days_ + d); }
    Date operator-(int d) const { return Date(days_ - d); }
    Date& operator+=(int d) { days_ += d; return *this; }
    Date& operator-=(int d) { days_ -= d; return *this; }
    int operator-(const Date& o) const { return days_ - o.days_; }

private:
    int days_ = 0;
};

}  // namespace lppl
