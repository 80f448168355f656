#include "tsforge/price_series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tsforge/errors.hpp"
#include "tsforge/text.hpp"

namespace tsforge::data {

PriceSeries::PriceSeries(std::string name, std::vector<Observation> observations)
    : name_(std::move(name)), observations_(std::move(observations)) {
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const Observation& obs = observations_[i];
        if (!(obs.close > 0.0) || !std::isfinite(obs.close)) {
            throw DataError(name_ + ": non-positive close " + format_double(obs.close) + " at " +
                            obs.date.to_string());
        }
        if (i > 0 && observations_[i - 1].date >= obs.date) {
            if (observations_[i - 1].date == obs.date) {
                throw DataError(name_ + ": duplicate date " + obs.date.to_string());
            }
            throw DataError(name_ + ": dates not increasing near " + obs.date.to_string());
        }
    }
}

std::vector<double> PriceSeries::closes() const {
    std::vector<double> out;
    out.reserve(observations_.size());
    for (const Observation& obs : observations_) out.push_back(obs.close);
    return out;
}

std::vector<Date> PriceSeries::dates() const {
    std::vector<Date> out;
    out.reserve(observations_.size());
    for (const Observation& obs : observations_) out.push_back(obs.date);
    return out;
}

PriceSeries load_csv(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open CSV file: " + path.string());
    }
    if (name.empty()) name = path.stem().string();

    std::string line;
    std::size_t line_no = 0;
    std::vector<Observation> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view content = trim(line);
        if (content.empty()) continue;
        if (line_no == 1) {
            // Header row is mandatory.
            if (content != "date,close") {
                throw DataError(path.string() + ":1: expected header 'date,close', got '" +
                                std::string(content) + "'");
            }
            continue;
        }
        const auto fields = split(content, ',');
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (fields.size() != 2) {
            throw DataError(where + ": expected 2 fields, got " + std::to_string(fields.size()));
        }
        Observation obs;
        try {
            obs.date = Date::parse_iso(std::string(trim(fields[0])));
        } catch (const DataError& e) {
            throw DataError(where + ": " + e.what());
        }
        obs.close = parse_double(fields[1], where);
        if (!(obs.close > 0.0)) {
            throw DataError(where + ": non-positive close " + format_double(obs.close));
        }
        rows.push_back(obs);
    }
    if (rows.empty()) {
        throw DataError(path.string() + ": no data rows");
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Observation& a, const Observation& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i - 1].date == rows[i].date) {
            throw DataError(path.string() + ": duplicate date " + rows[i].date.to_string());
        }
    }
    return PriceSeries(std::move(name), std::move(rows));
}

void save_csv(const PriceSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write CSV file: " + path.string());
    }
    out << "date,close\n";
    for (const Observation& obs : series.observations()) {
        out << obs.date.to_string() << ',' << format_double(obs.close) << '\n';
    }
    if (!out) {
        throw DataError("write failed: " + path.string());
    }
}

}  // namespace tsforge::data
