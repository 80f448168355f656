#include "tsforge.h"

#include <cstring>
#include <string>

#include "tsforge/errors.hpp"
#include "tsforge/price_series.hpp"
#include "tsforge/runner.hpp"
#include "tsforge/sarima.hpp"
#include "tsforge/synthetic.hpp"
#include "tsforge/version.hpp"

namespace {

thread_local std::string g_last_error;

void copy_to_buffer(const std::string& text, char* buf, size_t buf_size) {
    if (buf == nullptr || buf_size == 0) return;
    const size_t n = std::min(text.size(), buf_size - 1);
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
}

template <typename Fn>
tsf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return TSF_OK;
    } catch (const tsforge::ConfigError& e) {
        g_last_error = e.what();
        return TSF_ERR_CONFIG;
    } catch (const tsforge::DataError& e) {
        g_last_error = e.what();
        return TSF_ERR_DATA;
    } catch (const tsforge::NumericError& e) {
        g_last_error = e.what();
        return TSF_ERR_NUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TSF_ERR_NUMERIC;
    } catch (...) {
        g_last_error = "unknown error";
        return TSF_ERR_NUMERIC;
    }
}

tsf_status null_argument(const char* what) {
    g_last_error = std::string("null argument: ") + what;
    return TSF_ERR_CONFIG;
}

}  // namespace

struct tsf_config {
    tsforge::cli::RunConfig impl;
};

struct tsf_series {
    tsforge::data::PriceSeries impl;
};

struct tsf_sarima {
    tsforge::sarima::SarimaFit impl;
};

extern "C" {

const char* tsf_version(void) { return tsforge::kVersion; }

const char* tsf_last_error(void) { return g_last_error.c_str(); }

tsf_config* tsf_config_new(void) { return new (std::nothrow) tsf_config(); }

void tsf_config_free(tsf_config* config) { delete config; }

tsf_status tsf_config_load_file(tsf_config* config, const char* path) {
    if (config == nullptr || path == nullptr) return null_argument("config/path");
    return guarded([&] { config->impl.load_file(path); });
}

tsf_status tsf_config_set(tsf_config* config, const char* key, const char* value) {
    if (config == nullptr || key == nullptr || value == nullptr) {
        return null_argument("config/key/value");
    }
    return guarded([&] { config->impl.set(key, value); });
}

tsf_status tsf_config_get(const tsf_config* config, const char* key, char* buf, size_t buf_size) {
    if (config == nullptr || key == nullptr || buf == nullptr) {
        return null_argument("config/key/buf");
    }
    return guarded([&] { copy_to_buffer(config->impl.get(key), buf, buf_size); });
}

tsf_status tsf_run(const tsf_config* config) {
    if (config == nullptr) return null_argument("config");
    return guarded([&] { tsforge::cli::run(config->impl); });
}

tsf_status tsf_run_sarima_only(const tsf_config* config) {
    if (config == nullptr) return null_argument("config");
    return guarded([&] { tsforge::cli::run_sarima_only(config->impl, nullptr); });
}

tsf_status tsf_run_lstm_only(const tsf_config* config) {
    if (config == nullptr) return null_argument("config");
    return guarded([&] { tsforge::cli::run_lstm_only(config->impl); });
}

tsf_status tsf_validate(const tsf_config* config, char* buf, size_t buf_size, int* n_errors,
                        int* n_warnings) {
    if (config == nullptr) return null_argument("config");
    return guarded([&] {
        const tsforge::cli::ValidationReport report = tsforge::cli::validate(config->impl);
        std::string text;
        for (const std::string& e : report.errors) text += "error: " + e + "\n";
        for (const std::string& w : report.warnings) text += "warning: " + w + "\n";
        copy_to_buffer(text, buf, buf_size);
        if (n_errors != nullptr) *n_errors = static_cast<int>(report.errors.size());
        if (n_warnings != nullptr) *n_warnings = static_cast<int>(report.warnings.size());
    });
}

void tsf_generate_params_init(tsf_generate_params* params) {
    if (params == nullptr) return;
    const tsforge::cli::SyntheticParams defaults;
    params->seed = defaults.seed;
    params->days = defaults.days;
    params->correlation = defaults.correlation;
    params->drift = defaults.drift;
    params->volatility = defaults.volatility;
    params->seasonal_amplitude = defaults.seasonal_amplitude;
    params->seasonal_period = defaults.seasonal_period;
    params->drop_rate = defaults.drop_rate;
}

tsf_status tsf_generate(const tsf_generate_params* params, const char* out_dir) {
    if (params == nullptr || out_dir == nullptr) return null_argument("params/out_dir");
    return guarded([&] {
        tsforge::cli::SyntheticParams sp;
        sp.seed = params->seed;
        sp.days = params->days;
        sp.correlation = params->correlation;
        sp.drift = params->drift;
        sp.volatility = params->volatility;
        sp.seasonal_amplitude = params->seasonal_amplitude;
        sp.seasonal_period = params->seasonal_period;
        sp.drop_rate = params->drop_rate;
        tsforge::cli::write_synthetic_csvs(sp, out_dir);
    });
}

tsf_status tsf_series_load_csv(const char* path, tsf_series** out) {
    if (path == nullptr || out == nullptr) return null_argument("path/out");
    *out = nullptr;
    return guarded([&] { *out = new tsf_series{tsforge::data::load_csv(path)}; });
}

void tsf_series_free(tsf_series* series) { delete series; }

int tsf_series_size(const tsf_series* series) {
    return series == nullptr ? -1 : static_cast<int>(series->impl.size());
}

tsf_status tsf_series_at(const tsf_series* series, int index, char* date_buf,
                         size_t date_buf_size, double* close) {
    if (series == nullptr) return null_argument("series");
    return guarded([&] {
        if (index < 0 || static_cast<std::size_t>(index) >= series->impl.size()) {
            throw tsforge::DataError("series index out of range: " + std::to_string(index));
        }
        const auto& obs = series->impl.at(static_cast<std::size_t>(index));
        if (date_buf != nullptr) copy_to_buffer(obs.date.to_string(), date_buf, date_buf_size);
        if (close != nullptr) *close = obs.close;
    });
}

tsf_status tsf_sarima_fit(const tsf_series* series, int p, int d, int q, int P, int D, int Q,
                          int s, tsf_sarima** out) {
    if (series == nullptr || out == nullptr) return null_argument("series/out");
    *out = nullptr;
    return guarded([&] {
        const tsforge::sarima::SarimaSpec spec{p, d, q, P, D, Q, s};
        const std::vector<double> closes = series->impl.closes();
        *out = new tsf_sarima{tsforge::sarima::fit(spec, closes)};
    });
}

void tsf_sarima_free(tsf_sarima* fit) { delete fit; }

int tsf_sarima_converged(const tsf_sarima* fit) {
    return fit != nullptr && fit->impl.converged ? 1 : 0;
}

tsf_status tsf_sarima_forecast(const tsf_sarima* fit, int horizon, double* out_values) {
    if (fit == nullptr || out_values == nullptr) return null_argument("fit/out_values");
    return guarded([&] {
        const std::vector<double> values = tsforge::sarima::forecast(fit->impl, horizon);
        std::memcpy(out_values, values.data(), values.size() * sizeof(double));
    });
}

tsf_status tsf_sarima_summary(const tsf_sarima* fit, char* buf, size_t buf_size) {
    if (fit == nullptr || buf == nullptr) return null_argument("fit/buf");
    return guarded([&] { copy_to_buffer(tsforge::sarima::fit_summary(fit->impl), buf, buf_size); });
}

}  // extern "C"
