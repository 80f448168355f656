#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "tsforge/calendar.hpp"
#include "tsforge/price_series.hpp"
#include "tsforge/scaler.hpp"

namespace tsforge::data {

/// Default training share. A two-year daily history of 501 trading days keeps
/// an 89-day holdout, i.e. 412/501 ("just over 80%"); the same ratio applies
/// to other lengths via rounding.
inline constexpr double kDefaultTrainFraction = 412.0 / 501.0;

inline constexpr std::size_t kDefaultLookback = 5;

/// Two calendars merged onto the primary's trading days. Where the secondary
/// lacks a date, its most recent earlier value is carried forward, so both
/// columns are total over `dates`.
struct AlignedTable {
    std::vector<Date> dates;
    std::vector<double> primary;
    std::vector<double> secondary;

    std::size_t size() const { return dates.size(); }
};

AlignedTable align_calendars(const PriceSeries& primary, const PriceSeries& secondary);

/// Count-based split rule: train row count = round(fraction * n).
/// Throws DataError when either segment would be empty.
std::size_t split_count(std::size_t n_rows, double fraction);

/// Date-based split: rows dated on or before `last_train_date` are training.
/// The date must lie inside the calendar and leave both segments nonempty.
std::size_t split_at_date(std::span<const Date> dates, const Date& last_train_date);

/// Scaled feature table ready for supervised windowing. Each feature column
/// ([0] primary close, [1] secondary close) has its own ScalerParams, fitted
/// on the training rows only; test rows may scale outside [0, 1].
struct AlignedDataset {
    std::vector<Date> dates;
    std::vector<std::array<double, 2>> features;  // scaled
    std::size_t split_index = 0;                  // number of training rows
    std::size_t lookback = kDefaultLookback;
    std::array<ScalerParams, 2> scalers{};

    std::size_t size() const { return dates.size(); }
    std::size_t train_size() const { return split_index; }
    std::size_t test_size() const { return dates.size() - split_index; }
};

AlignedDataset build_dataset(const AlignedTable& table, double train_fraction,
                             std::size_t lookback);
AlignedDataset build_dataset(const AlignedTable& table, const Date& last_train_date,
                             std::size_t lookback);

/// Train/test views over a dataset's rows.
struct DatasetSplit {
    std::span<const Date> train_dates, test_dates;
    std::span<const std::array<double, 2>> train_features, test_features;
};

DatasetSplit split(const AlignedDataset& dataset);

/// One supervised sample: `window` holds lookback consecutive rows of scaled
/// features, `target` the scaled primary close of the row after the window.
struct Sample {
    std::vector<std::vector<double>> window;
    double target = 0.0;
};

/// Sliding windows over the training segment only. N training rows yield
/// N - lookback samples; no window or target touches the test segment.
std::vector<Sample> make_windows(const AlignedDataset& dataset);

}  // namespace tsforge::data
