#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace tsforge {

/// A calendar day, stored as a serial day number (days since 1970-01-01).
/// Comparison and day arithmetic operate on the serial number.
class Date {
public:
    Date() = default;
    Date(int year, int month, int day);

    /// Parses "YYYY-MM-DD". Throws DataError on malformed input or
    /// out-of-range month/day.
    static Date parse_iso(const std::string& text);

    static Date from_serial(std::int64_t days) {
        Date d;
        d.days_ = days;
        return d;
    }

    std::int64_t serial() const { return days_; }

    int year() const;
    int month() const;
    int day() const;

    /// 0 = Monday .. 6 = Sunday.
    int weekday() const { return static_cast<int>(((days_ + 3) % 7 + 7) % 7); }

    bool is_weekend() const { return weekday() >= 5; }

    std::string to_string() const;  // ISO-8601

    Date plus_days(std::int64_t n) const { return from_serial(days_ + n); }

    /// The next day that falls on a weekday (Mon..Fri).
    Date next_weekday() const;

    auto operator<=>(const Date&) const = default;

private:
    std::int64_t days_ = 0;
};

}  // namespace tsforge
