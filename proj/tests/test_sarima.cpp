#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tsforge/errors.hpp"
#include "tsforge/rng.hpp"
#include "tsforge/sarima.hpp"

using namespace tsforge;
using namespace tsforge::sarima;

namespace {

// Independent simulation oracle: w_t = mu + sum phi_i (w_{t-i} - mu)
//                                       + sum theta_j e_{t-j} + e_t.
std::vector<double> simulate_arma(std::size_t n, const std::vector<double>& phi,
                                  const std::vector<double>& theta, double mu, double sigma,
                                  std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t burn = 200;
    std::vector<double> w, e;
    w.reserve(n + burn);
    e.reserve(n + burn);
    for (std::size_t t = 0; t < n + burn; ++t) {
        const double eps = sigma * rng.normal();
        double value = mu + eps;
        for (std::size_t i = 0; i < phi.size() && i < t; ++i) {
            value += phi[i] * (w[t - i - 1] - mu);
        }
        for (std::size_t j = 0; j < theta.size() && j < t; ++j) {
            value += theta[j] * e[t - j - 1];
        }
        w.push_back(value);
        e.push_back(eps);
    }
    return std::vector<double>(w.begin() + static_cast<std::ptrdiff_t>(burn), w.end());
}

std::vector<double> random_walk(std::size_t n, std::uint64_t seed, double start = 1000.0) {
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    double level = start;
    for (std::size_t i = 0; i < n; ++i) {
        level += rng.normal();
        out.push_back(level);
    }
    return out;
}

}  // namespace

TEST_CASE("difference applies regular then seasonal lags") {
    CHECK(difference(std::vector<double>{1, 3, 6, 10}, 1, 0, 1) == std::vector<double>{2, 3, 4});
    CHECK(difference(std::vector<double>{1, 2, 3, 4, 5}, 0, 1, 2) == std::vector<double>{2, 2, 2});
    // d=1 then D=1 (s=2): first differences [1,2,3,4,5], then lag-2 [2,2,2].
    CHECK(difference(std::vector<double>{1, 2, 4, 7, 11, 16}, 1, 1, 2) ==
          std::vector<double>{2, 2, 2});
    CHECK_THROWS_AS(difference(std::vector<double>{1, 2}, 1, 1, 2), DataError);
}

TEST_CASE("undifference inverts hand examples") {
    SUBCASE("d=1 cumulative sum from the tail") {
        const std::vector<double> tail = {90.0, 100.0};
        CHECK(undifference(std::vector<double>{2, 3}, tail, 1, 0, 1) ==
              std::vector<double>{102, 105});
    }
    SUBCASE("seasonal D=1 adds the value one period back") {
        const std::vector<double> tail = {7.0, 6.0, 8.0, 9.0};
        CHECK(undifference(std::vector<double>{1, 1}, tail, 0, 1, 2) ==
              std::vector<double>{9, 10});
    }
    SUBCASE("insufficient tail is rejected") {
        CHECK_THROWS_AS(undifference(std::vector<double>{1}, std::vector<double>{1.0}, 0, 1, 2),
                        DataError);
    }
}

TEST_CASE("difference after undifference is the identity") {
    Rng rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = static_cast<int>(rng.below(3));
        const int D = static_cast<int>(rng.below(2));
        const int s = (trial % 2 == 0) ? 2 : 12;
        const std::size_t context = static_cast<std::size_t>(d + D * s);
        const std::size_t n = context + 5 + rng.below(20);
        std::vector<double> series(n);
        for (double& x : series) x = rng.uniform(-10.0, 10.0);

        const std::size_t horizon = 4;
        std::vector<double> continuation(horizon);
        for (double& x : continuation) x = rng.uniform(-10.0, 10.0);

        // Differenced continuation: join, difference, keep the last `horizon`.
        std::vector<double> joined(series);
        joined.insert(joined.end(), continuation.begin(), continuation.end());
        const std::vector<double> diffed = difference(joined, d, D, s);
        const std::vector<double> fc(diffed.end() - static_cast<std::ptrdiff_t>(horizon),
                                     diffed.end());

        const std::vector<double> restored = undifference(fc, series, d, D, s);
        REQUIRE(restored.size() == horizon);
        for (std::size_t i = 0; i < horizon; ++i) {
            CHECK(std::abs(restored[i] - continuation[i]) < 1e-10);
        }
    }
}

TEST_CASE("css residuals match hand recursions") {
    SUBCASE("white-noise model returns the series") {
        const std::vector<double> w = {1.5, -2.0, 0.25};
        CHECK(css_residuals({}, {}, 0.0, w) == w);
    }
    SUBCASE("AR(1) phi=0.5 on [1,1,1]") {
        const std::vector<double> phi = {0.5};
        const std::vector<double> e = css_residuals(phi, {}, 0.0, std::vector<double>{1, 1, 1});
        REQUIRE(e.size() == 3);
        CHECK(e[0] == doctest::Approx(1.0));
        CHECK(e[1] == doctest::Approx(0.5));
        CHECK(e[2] == doctest::Approx(0.5));
    }
    SUBCASE("MA(1) theta=0.5 on [1,0,0]") {
        const std::vector<double> theta = {0.5};
        const std::vector<double> e = css_residuals({}, theta, 0.0, std::vector<double>{1, 0, 0});
        REQUIRE(e.size() == 3);
        CHECK(e[0] == doctest::Approx(1.0));
        CHECK(e[1] == doctest::Approx(-0.5));
        CHECK(e[2] == doctest::Approx(0.25));
    }
}

TEST_CASE("multiplicative expansion places seasonal terms at lag multiples") {
    // (1 - 0.5B)(1 - 0.4B^3) = 1 - 0.5B - 0.4B^3 + 0.2B^4
    const std::vector<double> a =
        expand_multiplicative(std::vector<double>{0.5}, std::vector<double>{0.4}, 3, -1.0);
    REQUIRE(a.size() == 4);
    CHECK(a[0] == doctest::Approx(0.5));
    CHECK(a[1] == doctest::Approx(0.0));
    CHECK(a[2] == doctest::Approx(0.4));
    CHECK(a[3] == doctest::Approx(-0.2));

    // (1 + 0.5B)(1 + 0.4B^3) = 1 + 0.5B + 0.4B^3 + 0.2B^4
    const std::vector<double> b =
        expand_multiplicative(std::vector<double>{0.5}, std::vector<double>{0.4}, 3, 1.0);
    CHECK(b[3] == doctest::Approx(0.2));
}

TEST_CASE("ar_stationary identifies the stationarity region") {
    CHECK(ar_stationary(std::vector<double>{0.5}));
    CHECK(ar_stationary(std::vector<double>{0.5, 0.3}));
    CHECK(ar_stationary(std::vector<double>{0.0, 0.0}));
    CHECK_FALSE(ar_stationary(std::vector<double>{1.0}));
    CHECK_FALSE(ar_stationary(std::vector<double>{1.01}));
    CHECK_FALSE(ar_stationary(std::vector<double>{0.9, 0.2}));   // phi1 + phi2 >= 1
    CHECK_FALSE(ar_stationary(std::vector<double>{-0.5, 0.6}));  // phi2 - phi1 >= 1... outside
    // Seasonal AR expanded to lag s stays stationary for |Phi| < 1.
    const std::vector<double> seasonal =
        expand_multiplicative({}, std::vector<double>{0.5}, 250, -1.0);
    CHECK(ar_stationary(seasonal));
}

TEST_CASE("fit recovers an AR(1) coefficient from simulated data") {
    const std::vector<double> w = simulate_arma(2000, {0.7}, {}, 0.0, 1.0, 424242);
    const SarimaFit fit_result = fit(SarimaSpec{1, 0, 0, 0, 0, 0, 1}, w);
    REQUIRE(fit_result.phi.size() == 1);
    CHECK(fit_result.converged);
    CHECK(fit_result.phi[0] > 0.65);
    CHECK(fit_result.phi[0] < 0.75);
}

TEST_CASE("fit of the pure-mean model matches sample moments") {
    Rng rng(7);
    std::vector<double> w(500);
    for (double& x : w) x = 3.0 + rng.normal();
    const SarimaFit fit_result = fit(SarimaSpec{0, 0, 0, 0, 0, 0, 1}, w);
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    double var = 0.0;
    for (double x : w) var += (x - mean) * (x - mean);
    var /= static_cast<double>(w.size());
    CHECK(std::abs(fit_result.intercept - mean) < 1e-6);
    CHECK(fit_result.sigma2 == doctest::Approx(var).epsilon(0.05));
}

TEST_CASE("fit lowers the objective relative to the zero-coefficient start") {
    const std::vector<double> w = simulate_arma(600, {0.5}, {0.3}, 0.2, 1.0, 5);
    const SarimaSpec spec{1, 0, 1, 0, 0, 0, 1};
    const SarimaFit fit_result = fit(spec, w);

    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    const std::vector<double> start_resid = css_residuals({}, {}, mean, w);
    double start_sse = 0.0;
    for (double e : start_resid) start_sse += e * e;
    double fit_sse = 0.0;
    for (double e : fit_result.residuals) fit_sse += e * e;
    CHECK(fit_sse <= start_sse);
}

TEST_CASE("fit recovers ARMA(1,1) parameters across seeds") {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const std::vector<double> w = simulate_arma(2000, {0.5}, {0.3}, 0.0, 1.0, seed);
        const SarimaFit f = fit(SarimaSpec{1, 0, 1, 0, 0, 0, 1}, w);
        if (std::abs(f.phi[0] - 0.5) <= 0.1 && std::abs(f.theta[0] - 0.3) <= 0.1) ++hits;
    }
    CHECK(hits >= 2);  // the full 10-seed sweep runs in the acceptance suite
}

TEST_CASE("fit rejects a series that is too short after differencing") {
    CHECK_THROWS_AS(fit(SarimaSpec{2, 0, 2, 0, 0, 0, 1}, std::vector<double>{1, 2, 3, 4}),
                    DataError);
    CHECK_THROWS_AS(fit(SarimaSpec{0, 1, 0, 0, 1, 0, 10}, std::vector<double>{1, 2, 3}),
                    DataError);
}

TEST_CASE("production spec on 412 points runs on 162 differenced values and warns") {
    const std::vector<double> series = random_walk(412, 2024);
    const SarimaSpec spec{2, 0, 2, 0, 1, 0, 250};
    const SarimaFit f = fit(spec, series);
    CHECK(f.residuals.size() == 162);
    CHECK(f.phi.size() == 2);
    CHECK(f.theta.size() == 2);
    CHECK(f.data_sufficiency_warning);  // one seasonal period of coverage
}

TEST_CASE("forecast of a white-noise fit is the fitted mean") {
    Rng rng(12);
    std::vector<double> w(300);
    for (double& x : w) x = 5.0 + rng.normal();
    const SarimaFit f = fit(SarimaSpec{0, 0, 0, 0, 0, 0, 1}, w);
    const std::vector<double> fc = forecast(f, 7);
    REQUIRE(fc.size() == 7);
    for (double v : fc) CHECK(v == doctest::Approx(f.intercept));
}

TEST_CASE("pure seasonal differencing forecasts a seasonal random walk") {
    // y repeats a pattern with period 5 plus nothing else; D=1 removes it.
    const int s = 5;
    std::vector<double> series;
    for (int t = 0; t < 40; ++t) {
        series.push_back(10.0 + static_cast<double>(t % s));
    }
    const SarimaFit f = fit(SarimaSpec{0, 0, 0, 0, 1, 0, s}, series);
    const std::vector<double> fc = forecast(f, 10);
    REQUIRE(fc.size() == 10);
    for (int h = 0; h < 10; ++h) {
        // Seasonal random walk plus the (zero-ish) mean of the differenced series.
        const double expected = series[series.size() - static_cast<std::size_t>(s) +
                                       static_cast<std::size_t>(h % s)];
        CHECK(fc[static_cast<std::size_t>(h)] == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("AR(1) forecasts decay geometrically from the last observation") {
    // Hand-built fit: phi = 0.5, mu = 0, last w = 4.
    SarimaFit f;
    f.spec = SarimaSpec{1, 0, 0, 0, 0, 0, 1};
    f.phi = {0.5};
    f.intercept = 0.0;
    f.residuals = {0.0};
    f.training_tail = {4.0};
    const std::vector<double> fc = forecast(f, 4);
    REQUIRE(fc.size() == 4);
    CHECK(fc[0] == doctest::Approx(2.0));
    CHECK(fc[1] == doctest::Approx(1.0));
    CHECK(fc[2] == doctest::Approx(0.5));
    CHECK(fc[3] == doctest::Approx(0.25));
}

TEST_CASE("forecast continuity: shorter horizons prefix longer ones") {
    const std::vector<double> series = random_walk(300, 77);
    const SarimaFit f = fit(SarimaSpec{1, 1, 1, 0, 0, 0, 1}, series);
    const std::vector<double> one = forecast(f, 1);
    const std::vector<double> many = forecast(f, 12);
    CHECK(one[0] == doctest::Approx(many[0]).epsilon(1e-12));
    CHECK_THROWS_AS(forecast(f, 0), ConfigError);
}

TEST_CASE("acf basics") {
    std::vector<double> alternating(100);
    for (std::size_t i = 0; i < alternating.size(); ++i) {
        alternating[i] = (i % 2 == 0) ? 1.0 : -1.0;
    }
    const std::vector<double> rho = acf(alternating, 2);
    CHECK(rho[0] == 1.0);
    CHECK(rho[1] == doctest::Approx(-0.99));
    CHECK(rho[2] == doctest::Approx(0.98));

    CHECK_THROWS_AS(acf(std::vector<double>{1.0, 1.0, 1.0}, 1), NumericError);
    CHECK_THROWS_AS(acf(alternating, 100), DataError);
}

TEST_CASE("acf of seeded white noise stays inside the sampling band") {
    Rng rng(314159);
    std::vector<double> noise(1000);
    for (double& x : noise) x = rng.normal();
    const std::vector<double> rho = acf(noise, 20);
    const double bound = 2.0 / std::sqrt(1000.0);
    int inside = 0;
    for (int k = 1; k <= 20; ++k) {
        if (std::abs(rho[static_cast<std::size_t>(k)]) < bound) ++inside;
    }
    CHECK(inside >= 18);  // >= 90% of lags
}

TEST_CASE("ljung_box reproduces the closed-form statistic") {
    // Build a length-100 series whose lag-1 sample autocorrelation is 0.1 by
    // tuning an MA(1)-style blend, then check Q = n(n+2) rho1^2 / (n-1).
    Rng rng(2718);
    std::vector<double> base(101);
    for (double& x : base) x = rng.normal();
    auto rho1_for = [&base](double alpha) {
        std::vector<double> y(100);
        for (std::size_t t = 0; t < 100; ++t) y[t] = base[t + 1] + alpha * base[t];
        return acf(y, 1)[1];
    };
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (rho1_for(mid) < 0.1 ? lo : hi) = mid;
    }
    const double alpha = 0.5 * (lo + hi);
    std::vector<double> y(100);
    for (std::size_t t = 0; t < 100; ++t) y[t] = base[t + 1] + alpha * base[t];
    REQUIRE(acf(y, 1)[1] == doctest::Approx(0.1).epsilon(1e-9));

    const LjungBoxResult lb = ljung_box(y, 1, 0);
    CHECK(lb.statistic == doctest::Approx(100.0 * 102.0 * 0.01 / 99.0).epsilon(1e-6));
    CHECK(lb.statistic == doctest::Approx(1.0303).epsilon(1e-3));
    CHECK(lb.dof == 1);
    CHECK(lb.p_value > 0.0);
    CHECK(lb.p_value < 1.0);
}

TEST_CASE("ljung_box holds its level on white noise") {
    int non_rejections = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed * 1000003);
        std::vector<double> noise(300);
        for (double& x : noise) x = rng.normal();
        const LjungBoxResult lb = ljung_box(noise, 10, 0);
        if (lb.p_value > 0.05) ++non_rejections;
    }
    CHECK(non_rejections >= 18);  // >= 90% of 20 trials
}

TEST_CASE("ljung_box preconditions") {
    std::vector<double> x(50, 0.0);
    Rng rng(5);
    for (double& v : x) v = rng.normal();
    CHECK_THROWS_AS(ljung_box(x, 3, 3), ConfigError);
    CHECK_THROWS_AS(ljung_box(x, 60, 0), DataError);
}

TEST_CASE("standardized residuals divide by the fitted sigma") {
    SarimaFit f;
    f.residuals = {2.0, -2.0};
    f.sigma2 = 4.0;
    CHECK(standardized_residuals(f) == std::vector<double>{1.0, -1.0});

    f.sigma2 = 0.0;
    CHECK_THROWS_AS(standardized_residuals(f), NumericError);
}

TEST_CASE("standardized residuals of a real fit have unit variance") {
    const std::vector<double> w = simulate_arma(500, {0.4}, {}, 0.0, 2.5, 31);
    const SarimaFit f = fit(SarimaSpec{1, 0, 0, 0, 0, 0, 1}, w);
    const std::vector<double> z = standardized_residuals(f);
    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(z.size());
    double var = 0.0;
    for (double v : z) var += (v - mean) * (v - mean);
    var /= static_cast<double>(z.size());
    CHECK(var > 0.95);
    CHECK(var < 1.05);
}

TEST_CASE("auto_fit with a degenerate grid equals the direct fit") {
    const std::vector<double> series = random_walk(420, 88);
    const SarimaFit direct = fit(SarimaSpec{0, 0, 0, 0, 1, 0, 100}, series);
    const SarimaFit via_auto = auto_fit(series, 0, 0, 0, 1, 100);
    CHECK(via_auto.spec.p == direct.spec.p);
    CHECK(via_auto.spec.q == direct.spec.q);
    CHECK(via_auto.intercept == doctest::Approx(direct.intercept));
    CHECK(via_auto.aic == doctest::Approx(direct.aic));

    // A wider grid can only match or beat the pinned model's AIC.
    const SarimaFit wider = auto_fit(series, 2, 2, 0, 1, 100);
    CHECK(wider.aic <= direct.aic + 1e-9);
}

TEST_CASE("auto_fit prefers at least two AR terms on AR(2) data") {
    int hits = 0;
    const int trials = 20;
    for (std::uint64_t seed = 1; seed <= trials; ++seed) {
        const std::vector<double> w = simulate_arma(400, {0.6, -0.3}, {}, 0.0, 1.0, seed * 17);
        const SarimaFit f = auto_fit(w, 3, 3, 0, 0, 1);
        if (f.spec.p >= 2) ++hits;
    }
    CHECK(hits >= 18);  // >= 90% of seeded trials
}

TEST_CASE("auto_fit mostly selects (0,0) on white noise") {
    int zeros = 0;
    const int trials = 12;
    for (std::uint64_t seed = 1; seed <= trials; ++seed) {
        Rng rng(seed * 29);
        std::vector<double> noise(400);
        for (double& x : noise) x = rng.normal();
        const SarimaFit f = auto_fit(noise, 2, 2, 0, 0, 1);
        if (f.spec.p == 0 && f.spec.q == 0) ++zeros;
    }
    CHECK(zeros >= trials / 2 + 1);  // the AIC penalty dominates most seeds
}

TEST_CASE("fit_summary is a key-value block with the Ljung-Box table") {
    const std::vector<double> w = simulate_arma(300, {0.5}, {0.2}, 0.0, 1.0, 99);
    const SarimaFit f = fit(SarimaSpec{1, 0, 1, 0, 0, 0, 1}, w);
    const std::string text = fit_summary(f);
    CHECK(text.find("spec = (1,0,1)x(0,0,0)[1]") != std::string::npos);
    CHECK(text.find("phi.1 = ") != std::string::npos);
    CHECK(text.find("theta.1 = ") != std::string::npos);
    CHECK(text.find("sigma2 = ") != std::string::npos);
    CHECK(text.find("aic = ") != std::string::npos);
    CHECK(text.find("converged = ") != std::string::npos);
    CHECK(text.find("ljung_box.5.statistic = ") != std::string::npos);
    CHECK(text.find("ljung_box.10.p_value = ") != std::string::npos);
    CHECK(text.find("ljung_box.15.statistic = ") != std::string::npos);
    CHECK(text.find("ljung_box.20.p_value = ") != std::string::npos);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(SarimaSpec{-1, 0, 0, 0, 0, 0, 1}.validate(), ConfigError);
    CHECK_THROWS_AS(SarimaSpec{0, 0, 0, 0, 0, 0, 0}.validate(), ConfigError);
    CHECK_THROWS_AS(SarimaSpec{0, 0, 0, 1, 0, 0, 1}.validate(), ConfigError);
    CHECK_NOTHROW(SarimaSpec{2, 0, 2, 0, 1, 0, 250}.validate());
}
