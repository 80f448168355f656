#pragma once

#include <string>
#include <vector>

#include "tsforge/metrics.hpp"
#include "tsforge/run_config.hpp"
#include "tsforge/sarima.hpp"

namespace tsforge::cli {

/// Non-fatal findings from a dry-run configuration check. `errors` would stop
/// a run; `warnings` would not. validate() itself never throws.
struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

ValidationReport validate(const RunConfig& config);

struct RunResult {
    eval::ForecastReport report;
    sarima::SarimaFit sarima_fit;
    std::vector<std::string> warnings;  // e.g. optimizer non-convergence
};

/// Full experiment: load both CSVs, align, split, train the LSTM, fit the
/// SARIMA model, forecast the test segment with both, score, and write every
/// artifact (manifest, forecasts, plots, metrics, SARIMA summary, LSTM
/// checkpoint) under config.out_dir. Fit non-convergence is surfaced as a
/// warning, not an error.
RunResult run(const RunConfig& config);

/// SARIMA-only pipeline; needs only the primary CSV.
sarima::SarimaFit run_sarima_only(const RunConfig& config, std::vector<std::string>* warnings);

/// LSTM-only pipeline; needs both CSVs.
void run_lstm_only(const RunConfig& config);

}  // namespace tsforge::cli
