#include "tsforge/synthetic.hpp"

#include <cmath>
#include <vector>

#include "tsforge/errors.hpp"
#include "tsforge/rng.hpp"
#include "tsforge/text.hpp"

namespace tsforge::cli {

void SyntheticParams::validate() const {
    if (days < 2) throw ConfigError("synthetic generator needs at least 2 days");
    if (std::abs(correlation) > 1.0) {
        throw ConfigError("correlation must lie in [-1, 1], got " + format_double(correlation));
    }
    if (volatility < 0.0 || secondary_volatility < 0.0) {
        throw ConfigError("volatility must be non-negative");
    }
    if (drop_rate < 0.0 || drop_rate >= 1.0) {
        throw ConfigError("drop_rate must lie in [0, 1), got " + format_double(drop_rate));
    }
    if (seasonal_period < 1) throw ConfigError("seasonal_period must be at least 1");
    if (!(primary_start > 0.0) || !(secondary_start > 0.0)) {
        throw ConfigError("start prices must be positive");
    }
}

SyntheticPair generate_synthetic(const SyntheticParams& params) {
    params.validate();
    Rng rng(params.seed);

    constexpr int kSecondaryLead = 5;  // trading days before the primary opens

    // One shared weekday calendar; the first kSecondaryLead days belong to the
    // secondary only.
    Date day = params.start_date;
    while (day.is_weekend()) day = day.plus_days(1);
    std::vector<Date> secondary_calendar;
    for (int i = 0; i < kSecondaryLead; ++i) {
        secondary_calendar.push_back(day);
        day = day.next_weekday();
    }
    std::vector<Date> primary_calendar;
    for (int i = 0; i < params.days; ++i) {
        primary_calendar.push_back(day);
        day = day.next_weekday();
    }

    const double root = std::sqrt(1.0 - params.correlation * params.correlation);

    std::vector<data::Observation> secondary_rows;
    double log_secondary = std::log(params.secondary_start);
    for (const Date& d : secondary_calendar) {
        const double shock = rng.normal();
        log_secondary += params.secondary_drift + params.secondary_volatility * shock;
        secondary_rows.push_back({d, std::exp(log_secondary)});
    }

    std::vector<data::Observation> primary_rows;
    double log_base = std::log(params.primary_start);
    const double omega = 2.0 * M_PI / static_cast<double>(params.seasonal_period);
    for (int t = 0; t < params.days; ++t) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        log_base += params.drift + params.volatility * z1;
        const double seasonal = params.seasonal_amplitude * std::sin(omega * t);
        primary_rows.push_back({primary_calendar[static_cast<std::size_t>(t)],
                                std::exp(log_base + seasonal)});

        const double sec_shock = params.correlation * z1 + root * z2;
        log_secondary += params.secondary_drift + params.secondary_volatility * sec_shock;
        // Drop draws come after the price path so the path itself does not
        // depend on the drop pattern.
        const bool keep = rng.uniform() >= params.drop_rate;
        if (keep) {
            secondary_rows.push_back(
                {primary_calendar[static_cast<std::size_t>(t)], std::exp(log_secondary)});
        }
    }

    return SyntheticPair{data::PriceSeries("primary", std::move(primary_rows)),
                         data::PriceSeries("secondary", std::move(secondary_rows))};
}

SyntheticPair write_synthetic_csvs(const SyntheticParams& params,
                                   const std::filesystem::path& out_dir) {
    SyntheticPair pair = generate_synthetic(params);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create output directory " + out_dir.string());
    data::save_csv(pair.primary, out_dir / "primary.csv");
    data::save_csv(pair.secondary, out_dir / "secondary.csv");
    return pair;
}

}  // namespace tsforge::cli
