#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tsforge/calendar.hpp"

namespace tsforge::data {

struct Observation {
    Date date;
    double close = 0.0;
};

/// Dated closing prices for one index. Dates are strictly increasing and
/// every close is positive; construction enforces both.
class PriceSeries {
public:
    PriceSeries() = default;
    PriceSeries(std::string name, std::vector<Observation> observations);

    const std::string& name() const { return name_; }
    const std::vector<Observation>& observations() const { return observations_; }

    std::size_t size() const { return observations_.size(); }
    bool empty() const { return observations_.empty(); }
    const Observation& at(std::size_t i) const { return observations_.at(i); }
    const Observation& front() const { return observations_.front(); }
    const Observation& back() const { return observations_.back(); }

    std::vector<double> closes() const;
    std::vector<Date> dates() const;

private:
    std::string name_;
    std::vector<Observation> observations_;
};

/// Reads a `date,close` CSV (header required, ISO dates, '.' decimal point).
/// Rows are sorted by date before the series invariants are checked, so files
/// only need consistent rows, not a particular order. Errors report the
/// offending line number.
PriceSeries load_csv(const std::filesystem::path& path, std::string name = "");

/// Writes the same format load_csv reads, with round-trip exact closes.
void save_csv(const PriceSeries& series, const std::filesystem::path& path);

}  // namespace tsforge::data
