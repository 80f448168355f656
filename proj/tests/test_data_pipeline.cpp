#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "tsforge/calendar.hpp"
#include "tsforge/dataset.hpp"
#include "tsforge/errors.hpp"
#include "tsforge/price_series.hpp"
#include "tsforge/rng.hpp"
#include "tsforge/scaler.hpp"

using namespace tsforge;
using namespace tsforge::data;
using tsforge::testutil::TempDir;

TEST_CASE("dates parse, format and order") {
    const Date d = Date::parse_iso("2017-01-03");
    CHECK(d.year() == 2017);
    CHECK(d.month() == 1);
    CHECK(d.day() == 3);
    CHECK(d.to_string() == "2017-01-03");
    CHECK(d < Date::parse_iso("2017-01-04"));
    CHECK(d.weekday() == 1);  // a Tuesday
    CHECK_FALSE(d.is_weekend());
    CHECK(Date(2017, 1, 7).is_weekend());
    CHECK(Date(2017, 1, 6).next_weekday() == Date(2017, 1, 9));

    CHECK_THROWS_AS(Date::parse_iso("2017-13-01"), DataError);
    CHECK_THROWS_AS(Date::parse_iso("2017-02-30"), DataError);
    CHECK_THROWS_AS(Date::parse_iso("03/01/2017"), DataError);
    CHECK_NOTHROW(Date::parse_iso("2016-02-29"));  // leap day
}

TEST_CASE("load_csv parses well-formed files") {
    TempDir tmp;
    const auto file = tmp.write_file("a.csv", "date,close\n2017-01-03,100.0\n2017-01-04,101.5\n");
    const PriceSeries series = load_csv(file);
    REQUIRE(series.size() == 2);
    CHECK(series.at(0).date == Date(2017, 1, 3));
    CHECK(series.at(0).close == 100.0);
    CHECK(series.at(1).close == 101.5);
    CHECK(series.name() == "a");
}

TEST_CASE("load_csv sorts rows by date") {
    TempDir tmp;
    const auto file = tmp.write_file("a.csv", "date,close\n2017-01-04,101.5\n2017-01-03,100.0\n");
    const PriceSeries series = load_csv(file);
    REQUIRE(series.size() == 2);
    CHECK(series.at(0).date < series.at(1).date);
}

TEST_CASE("load_csv rejects bad input with line numbers") {
    TempDir tmp;
    SUBCASE("duplicate date") {
        const auto file =
            tmp.write_file("a.csv", "date,close\n2017-01-03,100.0\n2017-01-03,101.5\n");
        CHECK_THROWS_WITH_AS(load_csv(file), doctest::Contains("duplicate date"), DataError);
    }
    SUBCASE("non-positive close") {
        const auto file = tmp.write_file("a.csv", "date,close\n2017-01-03,-5\n");
        CHECK_THROWS_WITH_AS(load_csv(file), doctest::Contains("non-positive close"), DataError);
    }
    SUBCASE("unparsable row reports its line") {
        const auto file = tmp.write_file("a.csv", "date,close\n2017-01-03,100.0\nnot-a-row\n");
        CHECK_THROWS_WITH_AS(load_csv(file), doctest::Contains(":3"), DataError);
    }
    SUBCASE("missing header") {
        const auto file = tmp.write_file("a.csv", "2017-01-03,100.0\n");
        CHECK_THROWS_AS(load_csv(file), DataError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_csv(tmp.path() / "absent.csv"), DataError);
    }
}

TEST_CASE("csv round trip preserves values exactly") {
    TempDir tmp;
    std::vector<Observation> rows;
    Rng rng(7);
    Date d(2016, 3, 1);
    for (int i = 0; i < 50; ++i) {
        rows.push_back({d, 1000.0 * (1.0 + rng.uniform())});
        d = d.next_weekday();
    }
    const PriceSeries series("x", rows);
    const auto file = tmp.path() / "x.csv";
    save_csv(series, file);
    const PriceSeries reloaded = load_csv(file);
    REQUIRE(reloaded.size() == series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        CHECK(reloaded.at(i).date == series.at(i).date);
        CHECK(reloaded.at(i).close == series.at(i).close);  // bit-exact
    }
}

namespace {

PriceSeries make_series(const std::vector<std::pair<const char*, double>>& rows,
                        const std::string& name = "s") {
    std::vector<Observation> obs;
    for (const auto& [date, close] : rows) obs.push_back({Date::parse_iso(date), close});
    return PriceSeries(name, obs);
}

}  // namespace

TEST_CASE("align_calendars carries the most recent secondary value forward") {
    const PriceSeries primary = make_series(
        {{"2017-01-02", 10.0}, {"2017-01-03", 11.0}, {"2017-01-04", 12.0}}, "p");
    const PriceSeries secondary = make_series({{"2017-01-02", 5.0}, {"2017-01-04", 6.0}}, "q");
    const AlignedTable table = align_calendars(primary, secondary);
    REQUIRE(table.size() == 3);
    CHECK(table.secondary[0] == 5.0);
    CHECK(table.secondary[1] == 5.0);  // gap filled from Jan 2
    CHECK(table.secondary[2] == 6.0);
}

TEST_CASE("align_calendars with identical calendars is a plain join") {
    const PriceSeries primary = make_series({{"2017-01-02", 10.0}, {"2017-01-03", 11.0}}, "p");
    const PriceSeries secondary = make_series({{"2017-01-02", 5.0}, {"2017-01-03", 6.0}}, "q");
    const AlignedTable table = align_calendars(primary, secondary);
    REQUIRE(table.size() == 2);
    CHECK(table.secondary[0] == 5.0);
    CHECK(table.secondary[1] == 6.0);
}

TEST_CASE("align_calendars rejects a secondary that starts too late") {
    const PriceSeries primary = make_series({{"2017-01-02", 10.0}, {"2017-01-03", 11.0}}, "p");
    const PriceSeries secondary = make_series({{"2017-01-03", 5.0}}, "q");
    CHECK_THROWS_AS(align_calendars(primary, secondary), DataError);
}

TEST_CASE("alignment totality: every filled value is the latest at-or-before observation") {
    Rng rng(11);
    std::vector<Observation> prows, srows;
    Date d(2016, 1, 4);
    for (int i = 0; i < 120; ++i) {
        prows.push_back({d, 100.0 + rng.uniform()});
        d = d.next_weekday();
    }
    d = Date(2015, 12, 28);
    for (int i = 0; i < 130; ++i) {
        if (srows.empty() || rng.uniform() > 0.3) srows.push_back({d, 50.0 + rng.uniform()});
        d = d.next_weekday();
    }
    const PriceSeries primary("p", prows), secondary("q", srows);
    const AlignedTable table = align_calendars(primary, secondary);
    REQUIRE(table.size() == primary.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        // Brute-force scan for the reference value.
        double expected = 0.0;
        bool found = false;
        for (const Observation& o : srows) {
            if (o.date <= table.dates[i]) {
                expected = o.close;
                found = true;
            }
        }
        REQUIRE(found);
        CHECK(table.secondary[i] == expected);
        CHECK(table.primary[i] == prows[i].close);
    }
}

TEST_CASE("scaler maps the fit range onto [0,1]") {
    const std::vector<double> column = {100.0, 150.0, 200.0};
    const ScalerParams p = fit_scaler(column);
    CHECK(apply_scaler(p, 100.0) == doctest::Approx(0.0));
    CHECK(apply_scaler(p, 150.0) == doctest::Approx(0.5));
    CHECK(apply_scaler(p, 200.0) == doctest::Approx(1.0));
    // Out-of-range values extrapolate linearly: (250 - 100) / (200 - 100).
    CHECK(apply_scaler(p, 250.0) == doctest::Approx(1.5));
    CHECK(invert_scaler(p, apply_scaler(p, 137.25)) == doctest::Approx(137.25).epsilon(1e-12));
}

TEST_CASE("scaler rejects constant or too-short columns") {
    CHECK_THROWS_AS(fit_scaler(std::vector<double>{5.0, 5.0, 5.0}), NumericError);
    CHECK_THROWS_AS(fit_scaler(std::vector<double>{5.0}), NumericError);
}

TEST_CASE("scaler round trip is the identity for arbitrary finite values") {
    Rng rng(3);
    const ScalerParams p{123.4, 5678.9};
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(-1e6, 1e6);
        const double back = invert_scaler(p, apply_scaler(p, x));
        CHECK(std::abs(back - x) <= 1e-12 * std::max(1.0, std::abs(x)));
    }
}

TEST_CASE("split_count reproduces the reference 412/89 split and plain fractions") {
    CHECK(split_count(501, kDefaultTrainFraction) == 412);
    CHECK(501 - split_count(501, kDefaultTrainFraction) == 89);
    CHECK(split_count(10, 0.8) == 8);
    CHECK_THROWS_AS(split_count(10, 1.0), DataError);
    CHECK_THROWS_AS(split_count(10, 0.0), DataError);
    CHECK_THROWS_AS(split_count(1, 0.5), DataError);  // empty segment either way
}

namespace {

AlignedTable synthetic_table(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    AlignedTable table;
    Date d(2016, 1, 4);
    double p = 1000.0, s = 500.0;
    for (std::size_t i = 0; i < n; ++i) {
        p *= 1.0 + 0.01 * (rng.uniform() - 0.5);
        s *= 1.0 + 0.01 * (rng.uniform() - 0.5);
        table.dates.push_back(d);
        table.primary.push_back(p);
        table.secondary.push_back(s);
        d = d.next_weekday();
    }
    return table;
}

}  // namespace

TEST_CASE("build_dataset scales training rows into [0,1] and keeps the default ratio") {
    const AlignedTable table = synthetic_table(501, 17);
    const AlignedDataset ds = build_dataset(table, kDefaultTrainFraction, 5);
    CHECK(ds.split_index == 412);
    CHECK(ds.test_size() == 89);
    CHECK(static_cast<double>(ds.split_index) / static_cast<double>(ds.size()) >= 0.80);
    for (std::size_t i = 0; i < ds.split_index; ++i) {
        for (double f : ds.features[i]) {
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
        }
    }
    const DatasetSplit views = split(ds);
    CHECK(views.train_features.size() == 412);
    CHECK(views.test_features.size() == 89);
    CHECK(views.train_dates.back() < views.test_dates.front());
}

TEST_CASE("build_dataset can split at an explicit date") {
    const AlignedTable table = synthetic_table(100, 23);
    const Date cut = table.dates[59];
    const AlignedDataset ds = build_dataset(table, cut, 5);
    CHECK(ds.split_index == 60);  // rows dated on or before the cut
    CHECK_THROWS_AS(build_dataset(table, table.dates.back(), 5), DataError);
    CHECK_THROWS_AS(build_dataset(table, Date(1999, 1, 1), 5), DataError);
}

TEST_CASE("make_windows yields N - L samples whose targets stay in training") {
    const AlignedTable table = synthetic_table(501, 31);
    const AlignedDataset ds = build_dataset(table, kDefaultTrainFraction, 5);
    const std::vector<Sample> samples = make_windows(ds);
    REQUIRE(samples.size() == 412 - 5);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        REQUIRE(samples[i].window.size() == 5);
        // Target is the scaled primary close of the row after the window.
        CHECK(samples[i].target == ds.features[i + 5][0]);
        // Neither the window nor the target crosses into the test segment.
        CHECK(i + 5 < ds.split_index);
    }
}

TEST_CASE("make_windows with lookback 1 follows the definition") {
    AlignedTable table = synthetic_table(4, 5);
    const AlignedDataset ds = build_dataset(table, 0.75, 1);
    REQUIRE(ds.split_index == 3);
    const std::vector<Sample> samples = make_windows(ds);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].window[0][0] == ds.features[0][0]);
    CHECK(samples[0].target == ds.features[1][0]);
    CHECK(samples[1].window[0][0] == ds.features[1][0]);
    CHECK(samples[1].target == ds.features[2][0]);
}

TEST_CASE("make_windows rejects a training segment shorter than the lookback") {
    const AlignedTable table = synthetic_table(5, 9);
    const AlignedDataset ds = build_dataset(table, 0.8, 5);  // 4 training rows, L = 5
    CHECK_THROWS_AS(make_windows(ds), DataError);
}

TEST_CASE("price series rejects invariant violations") {
    CHECK_THROWS_AS(make_series({{"2017-01-03", 1.0}, {"2017-01-03", 2.0}}), DataError);
    CHECK_THROWS_AS(make_series({{"2017-01-04", 1.0}, {"2017-01-03", 2.0}}), DataError);
    CHECK_THROWS_AS(make_series({{"2017-01-03", 0.0}}), DataError);
    CHECK_THROWS_AS(make_series({{"2017-01-03", -2.0}}), DataError);
}
