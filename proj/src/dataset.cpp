#include "tsforge/dataset.hpp"

#include <cmath>

#include "tsforge/errors.hpp"
#include "tsforge/text.hpp"

namespace tsforge::data {

AlignedTable align_calendars(const PriceSeries& primary, const PriceSeries& secondary) {
    if (primary.empty() || secondary.empty()) {
        throw DataError("align_calendars: empty input series");
    }
    if (secondary.front().date > primary.front().date) {
        throw DataError("align_calendars: secondary series '" + secondary.name() + "' starts " +
                        secondary.front().date.to_string() + ", after primary's first date " +
                        primary.front().date.to_string() + "; nothing to carry forward");
    }

    AlignedTable out;
    out.dates.reserve(primary.size());
    out.primary.reserve(primary.size());
    out.secondary.reserve(primary.size());

    const auto& sec = secondary.observations();
    std::size_t j = 0;  // index of the last secondary observation at or before the current date
    for (const Observation& obs : primary.observations()) {
        while (j + 1 < sec.size() && sec[j + 1].date <= obs.date) ++j;
        out.dates.push_back(obs.date);
        out.primary.push_back(obs.close);
        out.secondary.push_back(sec[j].close);
    }
    return out;
}

std::size_t split_count(std::size_t n_rows, double fraction) {
    if (!(fraction > 0.0) || !(fraction < 1.0)) {
        throw DataError("split fraction must lie in (0, 1), got " + format_double(fraction));
    }
    const auto train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n_rows)));
    if (train == 0 || train >= n_rows) {
        throw DataError("empty segment after split: " + std::to_string(train) + "/" +
                        std::to_string(n_rows - train) + " from " + std::to_string(n_rows) +
                        " rows");
    }
    return train;
}

std::size_t split_at_date(std::span<const Date> dates, const Date& last_train_date) {
    if (dates.empty()) throw DataError("split: empty calendar");
    if (last_train_date < dates.front() || last_train_date > dates.back()) {
        throw DataError("split date " + last_train_date.to_string() +
                        " lies outside the calendar " + dates.front().to_string() + ".." +
                        dates.back().to_string());
    }
    std::size_t train = 0;
    while (train < dates.size() && dates[train] <= last_train_date) ++train;
    if (train == 0 || train >= dates.size()) {
        throw DataError("empty segment after split at " + last_train_date.to_string());
    }
    return train;
}

namespace {

AlignedDataset scale_and_pack(const AlignedTable& table, std::size_t split_index,
                              std::size_t lookback) {
    if (lookback == 0) throw DataError("lookback must be at least 1");

    AlignedDataset ds;
    ds.dates = table.dates;
    ds.split_index = split_index;
    ds.lookback = lookback;

    const std::span<const double> train_primary(table.primary.data(), split_index);
    const std::span<const double> train_secondary(table.secondary.data(), split_index);
    ds.scalers[0] = fit_scaler(train_primary);
    ds.scalers[1] = fit_scaler(train_secondary);

    ds.features.resize(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        ds.features[i] = {apply_scaler(ds.scalers[0], table.primary[i]),
                          apply_scaler(ds.scalers[1], table.secondary[i])};
    }
    return ds;
}

}  // namespace

AlignedDataset build_dataset(const AlignedTable& table, double train_fraction,
                             std::size_t lookback) {
    return scale_and_pack(table, split_count(table.size(), train_fraction), lookback);
}

AlignedDataset build_dataset(const AlignedTable& table, const Date& last_train_date,
                             std::size_t lookback) {
    return scale_and_pack(table, split_at_date(table.dates, last_train_date), lookback);
}

DatasetSplit split(const AlignedDataset& ds) {
    const std::size_t k = ds.split_index;
    return DatasetSplit{
        std::span<const Date>(ds.dates.data(), k),
        std::span<const Date>(ds.dates.data() + k, ds.dates.size() - k),
        std::span<const std::array<double, 2>>(ds.features.data(), k),
        std::span<const std::array<double, 2>>(ds.features.data() + k, ds.features.size() - k),
    };
}

std::vector<Sample> make_windows(const AlignedDataset& ds) {
    const std::size_t n_train = ds.split_index;
    const std::size_t lookback = ds.lookback;
    if (n_train <= lookback) {
        throw DataError("training segment of " + std::to_string(n_train) +
                        " rows is too short for lookback " + std::to_string(lookback));
    }

    std::vector<Sample> samples;
    samples.reserve(n_train - lookback);
    for (std::size_t i = 0; i + lookback < n_train; ++i) {
        Sample s;
        s.window.reserve(lookback);
        for (std::size_t r = i; r < i + lookback; ++r) {
            s.window.push_back({ds.features[r][0], ds.features[r][1]});
        }
        s.target = ds.features[i + lookback][0];
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace tsforge::data
