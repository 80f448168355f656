#pragma once

#include <filesystem>
#include <string>

#include "tsforge/price_series.hpp"

namespace tsforge::eval {

/// Fraction of test days whose predicted direction (sign of
/// forecast_t - actual_{t-1}) matches the realized direction (sign of
/// actual_t - actual_{t-1}). Zero moves count as a direction of their own.
/// Requires identical date sets and at least two observations.
double directional_accuracy(const data::PriceSeries& forecast, const data::PriceSeries& actual);

/// Root mean squared error over the forecast dates, in index points.
double rmse(const data::PriceSeries& forecast, const data::PriceSeries& actual);

/// (last - first) / first.
double overall_return(const data::PriceSeries& series);

/// The constant daily rate i_avg with (1 + i_avg)^n = prod(1 + i_t) over the
/// n = length-1 daily returns, i.e. (last/first)^(1/n) - 1.
double avg_daily_return(const data::PriceSeries& series);

struct EngineMetrics {
    double directional_accuracy = 0.0;
    double rmse = 0.0;
    double overall_return = 0.0;
    double avg_daily_return = 0.0;
};

/// All four comparison metrics for both engines plus the observed-return
/// baselines, mirroring the four report tables (accuracy pair, RMSE pair,
/// overall-return pair + actual, average-daily pair + actual).
struct ForecastReport {
    data::PriceSeries lstm_forecast;
    data::PriceSeries sarima_forecast;
    data::PriceSeries actual;
    EngineMetrics lstm;
    EngineMetrics sarima;
    double actual_overall_return = 0.0;
    double actual_avg_daily_return = 0.0;
};

/// Throws DataError unless all three series share dates exactly.
ForecastReport build_report(const data::PriceSeries& lstm_forecast,
                            const data::PriceSeries& sarima_forecast,
                            const data::PriceSeries& actual);

EngineMetrics compute_metrics(const data::PriceSeries& forecast, const data::PriceSeries& actual);

/// Flat key-value metrics block (`lstm.rmse=...`), one metric per line, '.'
/// decimal separator. `extra` lines, when given, are appended verbatim.
std::string metrics_text(const ForecastReport& report);
void write_metrics_file(const ForecastReport& report, const std::filesystem::path& path,
                        const std::string& extra = "");

/// Plot data: CSV `date,actual,forecast`, one file per engine.
void write_plot_csv(const data::PriceSeries& actual, const data::PriceSeries& forecast,
                    const std::filesystem::path& path);

}  // namespace tsforge::eval
