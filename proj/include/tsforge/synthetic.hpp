#pragma once

#include <cstdint>
#include <filesystem>

#include "tsforge/calendar.hpp"
#include "tsforge/price_series.hpp"

namespace tsforge::cli {

/// Regime for the synthetic two-index generator. The primary is a geometric
/// random walk with drift plus a log-scale sinusoidal seasonal component; the
/// secondary is a correlated random walk whose calendar randomly drops dates
/// (exercising fill-forward alignment). Deterministic per seed.
struct SyntheticParams {
    std::uint64_t seed = 42;
    int days = 501;                   // primary trading days
    double correlation = 0.5;         // daily log-return innovation correlation
    double drift = 3e-4;              // primary daily log drift
    double volatility = 0.01;         // primary daily log volatility
    double seasonal_amplitude = 0.02; // log-scale sinusoid amplitude
    int seasonal_period = 250;        // trading days per seasonal cycle
    double secondary_drift = 2e-4;
    double secondary_volatility = 0.012;
    double drop_rate = 0.05;          // chance a secondary date is missing
    double primary_start = 50000.0;
    double secondary_start = 3000.0;
    Date start_date = Date(2015, 12, 15);

    void validate() const;
};

struct SyntheticPair {
    data::PriceSeries primary;
    data::PriceSeries secondary;
};

/// The secondary calendar opens five trading days before the primary's and
/// never drops its first date, so alignment always has a value to carry
/// forward. Weekends are skipped.
SyntheticPair generate_synthetic(const SyntheticParams& params);

/// Writes `primary.csv` and `secondary.csv` under out_dir; returns the pair.
SyntheticPair write_synthetic_csvs(const SyntheticParams& params,
                                   const std::filesystem::path& out_dir);

}  // namespace tsforge::cli
