#include "tsforge/runner.hpp"

#include <filesystem>
#include <fstream>

#include "tsforge/dataset.hpp"
#include "tsforge/errors.hpp"
#include "tsforge/lstm.hpp"
#include "tsforge/text.hpp"

namespace tsforge::cli {

namespace {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
    if (!out) throw DataError("write failed: " + path.string());
}

fs::path prepare_out_dir(const RunConfig& config) {
    const fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir)) {
        throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    return dir;
}

data::PriceSeries test_actuals(const data::AlignedTable& table, std::size_t split_index,
                               const std::string& name) {
    std::vector<data::Observation> rows;
    rows.reserve(table.size() - split_index);
    for (std::size_t i = split_index; i < table.size(); ++i) {
        rows.push_back({table.dates[i], table.primary[i]});
    }
    return data::PriceSeries(name, std::move(rows));
}

data::PriceSeries rename(const data::PriceSeries& series, const std::string& name) {
    return data::PriceSeries(name, series.observations());
}

sarima::SarimaFit fit_sarima_engine(const RunConfig& config, std::span<const double> train) {
    if (config.sarima_auto) {
        return sarima::auto_fit(train, config.sarima_max_p, config.sarima_max_q,
                                config.sarima_spec.d, config.sarima_spec.D,
                                config.sarima_spec.s);
    }
    return sarima::fit(config.sarima_spec, train);
}

data::PriceSeries sarima_forecast_series(const sarima::SarimaFit& fit,
                                         std::span<const Date> test_dates) {
    const std::vector<double> values =
        sarima::forecast(fit, static_cast<int>(test_dates.size()));
    std::vector<data::Observation> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        rows.push_back({test_dates[i], values[i]});
    }
    return data::PriceSeries("sarima_forecast", std::move(rows));
}

std::string engine_metrics_text(const std::string& prefix, const eval::EngineMetrics& m) {
    std::string out;
    out += prefix + ".directional_accuracy=" + format_double(m.directional_accuracy) + "\n";
    out += prefix + ".rmse=" + format_double(m.rmse) + "\n";
    out += prefix + ".overall_return=" + format_double(m.overall_return) + "\n";
    out += prefix + ".avg_daily_return=" + format_double(m.avg_daily_return) + "\n";
    return out;
}

std::string actual_metrics_text(const data::PriceSeries& actual) {
    std::string out;
    out += "actual.overall_return=" + format_double(eval::overall_return(actual)) + "\n";
    out += "actual.avg_daily_return=" + format_double(eval::avg_daily_return(actual)) + "\n";
    return out;
}

}  // namespace

ValidationReport validate(const RunConfig& config) {
    ValidationReport report;
    auto error = [&report](const std::string& msg) { report.errors.push_back(msg); };
    auto warn = [&report](const std::string& msg) { report.warnings.push_back(msg); };

    if (config.primary_csv.empty()) {
        error("data.primary_csv is not set");
    } else if (!fs::exists(config.primary_csv)) {
        error("primary CSV does not exist: " + config.primary_csv);
    }
    if (config.secondary_csv.empty()) {
        error("data.secondary_csv is not set");
    } else if (!fs::exists(config.secondary_csv)) {
        error("secondary CSV does not exist: " + config.secondary_csv);
    }

    if (!(config.split_fraction > 0.0) || !(config.split_fraction < 1.0)) {
        error("data.split_fraction must lie in (0, 1), got " +
              format_double(config.split_fraction));
    }
    if (config.lookback < 1) error("data.lookback must be at least 1");
    if (config.lstm_epochs < 1) error("lstm.epochs must be at least 1");
    if (config.lstm_batch_size < 1) error("lstm.batch_size must be at least 1");
    if (config.lstm_hidden < 1) error("lstm.hidden must be at least 1");
    if (config.lstm_grad_clip_norm < 0.0) error("lstm.grad_clip_norm must be >= 0");
    if (!(config.lstm_learning_rate > 0.0)) error("lstm.learning_rate must be positive");
    try {
        config.sarima_spec.validate();
    } catch (const ConfigError& e) {
        error(e.what());
    }
    if (config.sarima_auto && (config.sarima_max_p < 0 || config.sarima_max_q < 0)) {
        error("sarima auto-search bounds must be non-negative");
    }

    // Data-dependent checks only run when the primary file already parses.
    if (!config.primary_csv.empty() && fs::exists(config.primary_csv) &&
        config.split_fraction > 0.0 && config.split_fraction < 1.0) {
        try {
            const data::PriceSeries primary = data::load_csv(config.primary_csv);
            const std::size_t n = primary.size();
            const std::size_t train = data::split_count(n, config.split_fraction);
            if (train <= config.lookback) {
                error("training segment of " + std::to_string(train) +
                      " rows is too short for lookback " + std::to_string(config.lookback));
            }
            const auto s = static_cast<std::size_t>(config.sarima_spec.s);
            if (config.sarima_spec.P + config.sarima_spec.D + config.sarima_spec.Q > 0 &&
                train < s + 50) {
                warn("training length " + std::to_string(train) +
                     " is thin for seasonal period " + std::to_string(config.sarima_spec.s) +
                     " (want at least s + 50 = " + std::to_string(s + 50) + ")");
            }
        } catch (const std::exception& e) {
            error(e.what());
        }
    }
    return report;
}

RunResult run(const RunConfig& config) {
    const fs::path dir = prepare_out_dir(config);
    if (config.primary_csv.empty()) throw ConfigError("data.primary_csv is not set");
    if (config.secondary_csv.empty()) throw ConfigError("data.secondary_csv is not set");

    const data::PriceSeries primary = data::load_csv(config.primary_csv, "primary");
    const data::PriceSeries secondary = data::load_csv(config.secondary_csv, "secondary");
    const data::AlignedTable table = data::align_calendars(primary, secondary);
    const data::AlignedDataset dataset =
        data::build_dataset(table, config.split_fraction, config.lookback);

    RunResult result;

    // LSTM engine.
    const lstm::LstmModel model = lstm::train(config.lstm_config(), dataset);
    const data::PriceSeries lstm_one_step = lstm::predict(model, dataset,
                                                          lstm::PredictMode::OneStep);
    const data::PriceSeries lstm_recursive = lstm::predict(model, dataset,
                                                           lstm::PredictMode::Recursive);
    const data::PriceSeries& lstm_headline =
        config.lstm_mode == LstmMode::Recursive ? lstm_recursive : lstm_one_step;

    // SARIMA engine, on the aligned primary closes in original units.
    const std::span<const double> train_closes(table.primary.data(), dataset.split_index);
    result.sarima_fit = fit_sarima_engine(config, train_closes);
    for (const std::string& w : result.sarima_fit.warnings) {
        result.warnings.push_back("sarima: " + w);
    }

    const std::span<const Date> test_dates(dataset.dates.data() + dataset.split_index,
                                           dataset.test_size());
    const data::PriceSeries sarima_fc = sarima_forecast_series(result.sarima_fit, test_dates);
    const data::PriceSeries actual = test_actuals(table, dataset.split_index, "actual");

    result.report = eval::build_report(lstm_headline, sarima_fc, actual);

    // Artifacts.
    write_text_file(dir / "manifest.txt", config.manifest_text());
    data::save_csv(result.report.lstm_forecast, dir / "lstm_forecast.csv");
    data::save_csv(sarima_fc, dir / "sarima_forecast.csv");
    eval::write_plot_csv(actual, result.report.lstm_forecast, dir / "lstm_plot.csv");
    eval::write_plot_csv(actual, sarima_fc, dir / "sarima_plot.csv");
    write_text_file(dir / "sarima_summary.txt", sarima::fit_summary(result.sarima_fit));
    lstm::save_checkpoint(model, dir / "lstm_checkpoint.json");

    std::string extra;
    if (config.lstm_mode == LstmMode::Both) {
        extra = engine_metrics_text("lstm_recursive", eval::compute_metrics(lstm_recursive,
                                                                            actual));
        data::save_csv(rename(lstm_recursive, "lstm_recursive_forecast"),
                       dir / "lstm_recursive_forecast.csv");
        eval::write_plot_csv(actual, lstm_recursive, dir / "lstm_recursive_plot.csv");
    }
    eval::write_metrics_file(result.report, dir / "metrics.txt", extra);
    return result;
}

sarima::SarimaFit run_sarima_only(const RunConfig& config, std::vector<std::string>* warnings) {
    const fs::path dir = prepare_out_dir(config);
    if (config.primary_csv.empty()) throw ConfigError("data.primary_csv is not set");

    const data::PriceSeries primary = data::load_csv(config.primary_csv, "primary");
    const std::size_t split = data::split_count(primary.size(), config.split_fraction);
    const std::vector<double> closes = primary.closes();
    const std::span<const double> train(closes.data(), split);

    sarima::SarimaFit fit = fit_sarima_engine(config, train);
    if (warnings != nullptr) {
        for (const std::string& w : fit.warnings) warnings->push_back("sarima: " + w);
    }

    std::vector<Date> dates = primary.dates();
    const std::span<const Date> test_dates(dates.data() + split, dates.size() - split);
    const data::PriceSeries fc = sarima_forecast_series(fit, test_dates);

    std::vector<data::Observation> actual_rows(primary.observations().begin() +
                                                   static_cast<std::ptrdiff_t>(split),
                                               primary.observations().end());
    const data::PriceSeries actual("actual", std::move(actual_rows));

    write_text_file(dir / "manifest.txt", config.manifest_text());
    write_text_file(dir / "sarima_summary.txt", sarima::fit_summary(fit));
    data::save_csv(fc, dir / "sarima_forecast.csv");
    eval::write_plot_csv(actual, fc, dir / "sarima_plot.csv");
    write_text_file(dir / "metrics.txt",
                    engine_metrics_text("sarima", eval::compute_metrics(fc, actual)) +
                        actual_metrics_text(actual));
    return fit;
}

void run_lstm_only(const RunConfig& config) {
    const fs::path dir = prepare_out_dir(config);
    if (config.primary_csv.empty()) throw ConfigError("data.primary_csv is not set");
    if (config.secondary_csv.empty()) throw ConfigError("data.secondary_csv is not set");

    const data::PriceSeries primary = data::load_csv(config.primary_csv, "primary");
    const data::PriceSeries secondary = data::load_csv(config.secondary_csv, "secondary");
    const data::AlignedTable table = data::align_calendars(primary, secondary);
    const data::AlignedDataset dataset =
        data::build_dataset(table, config.split_fraction, config.lookback);

    const lstm::LstmModel model = lstm::train(config.lstm_config(), dataset);
    const data::PriceSeries one_step = lstm::predict(model, dataset, lstm::PredictMode::OneStep);
    const data::PriceSeries recursive = lstm::predict(model, dataset,
                                                      lstm::PredictMode::Recursive);
    const data::PriceSeries& headline =
        config.lstm_mode == LstmMode::Recursive ? recursive : one_step;
    const data::PriceSeries actual = test_actuals(table, dataset.split_index, "actual");

    write_text_file(dir / "manifest.txt", config.manifest_text());
    lstm::save_checkpoint(model, dir / "lstm_checkpoint.json");
    data::save_csv(headline, dir / "lstm_forecast.csv");
    eval::write_plot_csv(actual, headline, dir / "lstm_plot.csv");

    std::string text = engine_metrics_text("lstm", eval::compute_metrics(headline, actual));
    if (config.lstm_mode == LstmMode::Both) {
        text += engine_metrics_text("lstm_recursive", eval::compute_metrics(recursive, actual));
        data::save_csv(rename(recursive, "lstm_recursive_forecast"),
                       dir / "lstm_recursive_forecast.csv");
        eval::write_plot_csv(actual, recursive, dir / "lstm_recursive_plot.csv");
    }
    text += actual_metrics_text(actual);
    write_text_file(dir / "metrics.txt", text);
}

}  // namespace tsforge::cli
