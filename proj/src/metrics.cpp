#include "tsforge/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tsforge/errors.hpp"
#include "tsforge/text.hpp"

namespace tsforge::eval {

namespace {

void require_same_dates(const data::PriceSeries& a, const data::PriceSeries& b) {
    if (a.size() != b.size()) {
        throw DataError("series '" + a.name() + "' and '" + b.name() + "' differ in length (" +
                        std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.at(i).date != b.at(i).date) {
            throw DataError("series '" + a.name() + "' and '" + b.name() + "' diverge at " +
                            a.at(i).date.to_string() + " vs " + b.at(i).date.to_string());
        }
    }
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

double directional_accuracy(const data::PriceSeries& forecast, const data::PriceSeries& actual) {
    require_same_dates(forecast, actual);
    if (actual.size() < 2) {
        throw DataError("directional accuracy needs at least two observations");
    }
    std::size_t hits = 0;
    for (std::size_t t = 1; t < actual.size(); ++t) {
        const double prev = actual.at(t - 1).close;
        const int predicted = sign_of(forecast.at(t).close - prev);
        const int realized = sign_of(actual.at(t).close - prev);
        if (predicted == realized) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(actual.size() - 1);
}

double rmse(const data::PriceSeries& forecast, const data::PriceSeries& actual) {
    require_same_dates(forecast, actual);
    if (actual.empty()) throw DataError("rmse: empty series");
    double acc = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        const double diff = actual.at(t).close - forecast.at(t).close;
        acc += diff * diff;
    }
    return std::sqrt(acc / static_cast<double>(actual.size()));
}

double overall_return(const data::PriceSeries& series) {
    if (series.size() < 2) throw DataError("overall_return needs at least two observations");
    const double first = series.front().close;
    const double last = series.back().close;
    return (last - first) / first;
}

double avg_daily_return(const data::PriceSeries& series) {
    if (series.size() < 2) throw DataError("avg_daily_return needs at least two observations");
    // PriceSeries enforces positive closes, so the geometric mean is defined.
    const double first = series.front().close;
    const double last = series.back().close;
    const auto n = static_cast<double>(series.size() - 1);
    return std::pow(last / first, 1.0 / n) - 1.0;
}

EngineMetrics compute_metrics(const data::PriceSeries& forecast, const data::PriceSeries& actual) {
    EngineMetrics m;
    m.directional_accuracy = directional_accuracy(forecast, actual);
    m.rmse = rmse(forecast, actual);
    m.overall_return = overall_return(forecast);
    m.avg_daily_return = avg_daily_return(forecast);
    return m;
}

ForecastReport build_report(const data::PriceSeries& lstm_forecast,
                            const data::PriceSeries& sarima_forecast,
                            const data::PriceSeries& actual) {
    require_same_dates(lstm_forecast, actual);
    require_same_dates(sarima_forecast, actual);

    ForecastReport report;
    report.lstm_forecast = lstm_forecast;
    report.sarima_forecast = sarima_forecast;
    report.actual = actual;
    report.lstm = compute_metrics(lstm_forecast, actual);
    report.sarima = compute_metrics(sarima_forecast, actual);
    report.actual_overall_return = overall_return(actual);
    report.actual_avg_daily_return = avg_daily_return(actual);
    return report;
}

std::string metrics_text(const ForecastReport& report) {
    std::ostringstream os;
    auto line = [&os](const std::string& key, double value) {
        os << key << '=' << format_double(value) << '\n';
    };
    line("lstm.directional_accuracy", report.lstm.directional_accuracy);
    line("sarima.directional_accuracy", report.sarima.directional_accuracy);
    line("lstm.rmse", report.lstm.rmse);
    line("sarima.rmse", report.sarima.rmse);
    line("lstm.overall_return", report.lstm.overall_return);
    line("sarima.overall_return", report.sarima.overall_return);
    line("actual.overall_return", report.actual_overall_return);
    line("lstm.avg_daily_return", report.lstm.avg_daily_return);
    line("sarima.avg_daily_return", report.sarima.avg_daily_return);
    line("actual.avg_daily_return", report.actual_avg_daily_return);
    return os.str();
}

void write_metrics_file(const ForecastReport& report, const std::filesystem::path& path,
                        const std::string& extra) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write metrics file: " + path.string());
    out << metrics_text(report);
    if (!extra.empty()) out << extra;
    if (!out) throw DataError("metrics write failed: " + path.string());
}

void write_plot_csv(const data::PriceSeries& actual, const data::PriceSeries& forecast,
                    const std::filesystem::path& path) {
    require_same_dates(forecast, actual);
    std::ofstream out(path);
    if (!out) throw DataError("cannot write plot file: " + path.string());
    out << "date,actual,forecast\n";
    for (std::size_t i = 0; i < actual.size(); ++i) {
        out << actual.at(i).date.to_string() << ',' << format_double(actual.at(i).close) << ','
            << format_double(forecast.at(i).close) << '\n';
    }
    if (!out) throw DataError("plot write failed: " + path.string());
}

}  // namespace tsforge::eval
