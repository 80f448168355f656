#include "tsforge/sarima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tsforge/errors.hpp"
#include "tsforge/nelder_mead.hpp"
#include "tsforge/special_functions.hpp"
#include "tsforge/text.hpp"

namespace tsforge::sarima {

namespace {

constexpr double kInfeasiblePenalty = 1e100;

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sum_of_squares(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

std::vector<double> diff_once(std::span<const double> x, int lag) {
    std::vector<double> out;
    out.reserve(x.size() - static_cast<std::size_t>(lag));
    for (std::size_t t = static_cast<std::size_t>(lag); t < x.size(); ++t) {
        out.push_back(x[t] - x[t - static_cast<std::size_t>(lag)]);
    }
    return out;
}

}  // namespace

void SarimaSpec::validate() const {
    if (p < 0 || d < 0 || q < 0 || P < 0 || D < 0 || Q < 0) {
        throw ConfigError("SARIMA orders must be non-negative: " + to_string());
    }
    if (s < 1) {
        throw ConfigError("seasonal period must be at least 1, got " + std::to_string(s));
    }
    if (P + D + Q > 0 && s < 2) {
        throw ConfigError("seasonal structure requires s >= 2: " + to_string());
    }
}

std::string SarimaSpec::to_string() const {
    std::ostringstream os;
    os << '(' << p << ',' << d << ',' << q << ")x(" << P << ',' << D << ',' << Q << ")[" << s
       << ']';
    return os.str();
}

std::vector<double> difference(std::span<const double> series, int d, int D, int s) {
    if (d < 0 || D < 0 || s < 1) throw ConfigError("invalid differencing orders");
    const std::size_t consumed = static_cast<std::size_t>(d) + static_cast<std::size_t>(D) *
                                                                  static_cast<std::size_t>(s);
    if (series.size() <= consumed) {
        throw DataError("series of length " + std::to_string(series.size()) +
                        " too short to difference d=" + std::to_string(d) +
                        ", D=" + std::to_string(D) + ", s=" + std::to_string(s));
    }
    std::vector<double> out(series.begin(), series.end());
    for (int k = 0; k < d; ++k) out = diff_once(out, 1);
    for (int k = 0; k < D; ++k) out = diff_once(out, s);
    return out;
}

std::vector<double> undifference(std::span<const double> diffed_continuation,
                                 std::span<const double> tail, int d, int D, int s) {
    if (d < 0 || D < 0 || s < 1) throw ConfigError("invalid differencing orders");
    const std::size_t need = static_cast<std::size_t>(d) + static_cast<std::size_t>(D) *
                                                               static_cast<std::size_t>(s);
    if (tail.size() < need) {
        throw DataError("undifference: tail of " + std::to_string(tail.size()) +
                        " observations, need at least " + std::to_string(need));
    }
    if (diffed_continuation.empty()) return {};

    // Rebuild the tail of every intermediate stage: d regular differences
    // applied first, then D seasonal ones, mirroring difference().
    std::vector<std::vector<double>> stages;
    stages.emplace_back(tail.begin(), tail.end());
    for (int k = 0; k < d; ++k) stages.push_back(diff_once(stages.back(), 1));
    for (int k = 0; k < D; ++k) stages.push_back(diff_once(stages.back(), s));

    std::vector<double> current(diffed_continuation.begin(), diffed_continuation.end());
    // Invert seasonal stages first (they were applied last), then regular ones.
    for (int k = 0; k < D; ++k) {
        const std::vector<double>& prev = stages[stages.size() - 2 - static_cast<std::size_t>(k)];
        std::vector<double> restored(current.size());
        for (std::size_t h = 0; h < current.size(); ++h) {
            const double base = h < static_cast<std::size_t>(s)
                                    ? prev[prev.size() - static_cast<std::size_t>(s) + h]
                                    : restored[h - static_cast<std::size_t>(s)];
            restored[h] = current[h] + base;
        }
        current = std::move(restored);
    }
    for (int k = 0; k < d; ++k) {
        const std::vector<double>& prev = stages[static_cast<std::size_t>(d - 1 - k)];
        std::vector<double> restored(current.size());
        for (std::size_t h = 0; h < current.size(); ++h) {
            const double base = h == 0 ? prev.back() : restored[h - 1];
            restored[h] = current[h] + base;
        }
        current = std::move(restored);
    }
    return current;
}

std::vector<double> expand_multiplicative(std::span<const double> ordinary,
                                          std::span<const double> seasonal, int s, double sign) {
    const std::size_t n = ordinary.size() + seasonal.size() * static_cast<std::size_t>(s);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < ordinary.size(); ++i) out[i] += ordinary[i];
    for (std::size_t j = 0; j < seasonal.size(); ++j) {
        out[(j + 1) * static_cast<std::size_t>(s) - 1] += seasonal[j];
        for (std::size_t i = 0; i < ordinary.size(); ++i) {
            out[i + (j + 1) * static_cast<std::size_t>(s)] += sign * ordinary[i] * seasonal[j];
        }
    }
    return out;
}

std::vector<double> css_residuals(std::span<const double> ar, std::span<const double> ma,
                                  double intercept, std::span<const double> w) {
    std::vector<double> e(w.size(), 0.0);
    for (std::size_t t = 0; t < w.size(); ++t) {
        double value = w[t] - intercept;
        for (std::size_t i = 0; i < ar.size(); ++i) {
            if (t < i + 1) break;  // presample deviations are zero
            value -= ar[i] * (w[t - i - 1] - intercept);
        }
        for (std::size_t j = 0; j < ma.size(); ++j) {
            if (t < j + 1) break;  // presample errors are zero
            value -= ma[j] * e[t - j - 1];
        }
        e[t] = value;
    }
    return e;
}

bool ar_stationary(std::span<const double> ar) {
    std::vector<double> coef(ar.begin(), ar.end());
    while (!coef.empty() && coef.back() == 0.0) coef.pop_back();
    // Schur-Cohn step-down: stationary iff every reflection coefficient
    // (the highest-order coefficient at each order) has magnitude < 1.
    while (!coef.empty()) {
        const double kappa = coef.back();
        if (!std::isfinite(kappa) || std::abs(kappa) >= 1.0 - 1e-10) return false;
        const std::size_t m = coef.size();
        if (m == 1) break;
        const double denom = 1.0 - kappa * kappa;
        std::vector<double> lower(m - 1);
        for (std::size_t k = 0; k + 1 < m; ++k) {
            lower[k] = (coef[k] + kappa * coef[m - 2 - k]) / denom;
        }
        coef = std::move(lower);
    }
    return true;
}

std::vector<double> SarimaFit::expanded_ar() const {
    return expand_multiplicative(phi, seasonal_phi, spec.s, -1.0);
}

std::vector<double> SarimaFit::expanded_ma() const {
    return expand_multiplicative(theta, seasonal_theta, spec.s, 1.0);
}

namespace {

struct CoefficientLayout {
    // Order inside the optimizer's parameter vector: phi, theta, Phi, Theta, mu.
    const SarimaSpec& spec;

    std::size_t size() const { return static_cast<std::size_t>(spec.coefficient_count()) + 1; }

    void unpack(std::span<const double> x, SarimaFit& fit) const {
        std::size_t at = 0;
        auto take = [&](int count) {
            std::vector<double> v(x.begin() + static_cast<std::ptrdiff_t>(at),
                                  x.begin() + static_cast<std::ptrdiff_t>(at + count));
            at += static_cast<std::size_t>(count);
            return v;
        };
        fit.phi = take(spec.p);
        fit.theta = take(spec.q);
        fit.seasonal_phi = take(spec.P);
        fit.seasonal_theta = take(spec.Q);
        fit.intercept = x[at];
    }
};

double css_objective(const CoefficientLayout& layout, std::span<const double> w,
                     std::span<const double> x) {
    SarimaFit trial;
    trial.spec = layout.spec;
    layout.unpack(x, trial);
    const std::vector<double> ar = trial.expanded_ar();
    if (!ar_stationary(ar)) return kInfeasiblePenalty;
    const std::vector<double> ma = trial.expanded_ma();
    const std::vector<double> e = css_residuals(ar, ma, trial.intercept, w);
    const double sse = sum_of_squares(e);
    return std::isfinite(sse) ? sse : kInfeasiblePenalty;
}

std::size_t tail_length(const SarimaSpec& spec, std::size_t n) {
    const std::size_t seasonal_ar = static_cast<std::size_t>(spec.P) *
                                    static_cast<std::size_t>(spec.s);
    const std::size_t for_ar = static_cast<std::size_t>(spec.d) +
                               static_cast<std::size_t>(spec.D) * static_cast<std::size_t>(spec.s) +
                               static_cast<std::size_t>(spec.p) + seasonal_ar;
    const std::size_t len = std::max(for_ar, static_cast<std::size_t>(spec.s));
    return std::min(n, std::max<std::size_t>(len, 1));
}

}  // namespace

SarimaFit fit(const SarimaSpec& spec, std::span<const double> series) {
    spec.validate();
    const std::vector<double> w = difference(series, spec.d, spec.D, spec.s);
    const auto n = static_cast<double>(w.size());
    if (w.size() <= static_cast<std::size_t>(spec.p + spec.q)) {
        throw DataError("differenced series of " + std::to_string(w.size()) +
                        " points cannot support " + spec.to_string());
    }

    SarimaFit result;
    result.spec = spec;

    const int k_coef = spec.coefficient_count();
    if (w.size() < 10 * static_cast<std::size_t>(k_coef + 1)) {
        result.data_sufficiency_warning = true;
        result.warnings.push_back("differenced length " + std::to_string(w.size()) +
                                  " is below 10x the parameter count (" +
                                  std::to_string(k_coef + 1) + " incl. intercept)");
    }
    if ((spec.P > 0 || spec.D > 0 || spec.Q > 0) &&
        series.size() < 2 * static_cast<std::size_t>(spec.s)) {
        result.data_sufficiency_warning = true;
        result.warnings.push_back("seasonal period " + std::to_string(spec.s) + " with only " +
                                  std::to_string(series.size()) +
                                  " observations covers less than two full periods");
    }

    const CoefficientLayout layout{spec};
    std::vector<double> start(layout.size(), 0.0);
    start.back() = mean_of(w);

    if (k_coef == 0) {
        // Pure-mean model: the CSS optimum is the sample mean, exactly.
        result.intercept = start.back();
        result.converged = true;
    } else {
        const auto objective = [&](std::span<const double> x) {
            return css_objective(layout, w, x);
        };
        optim::NelderMeadOptions options;
        const optim::NelderMeadResult best = optim::nelder_mead(objective, start, options);
        layout.unpack(best.x, result);
        result.converged = best.converged;
        if (!best.converged) {
            result.warnings.push_back("simplex search stopped after " +
                                      std::to_string(best.iterations) +
                                      " iterations without meeting tolerance");
        }
    }

    result.residuals = css_residuals(result.expanded_ar(), result.expanded_ma(), result.intercept,
                                     w);
    const double sse = sum_of_squares(result.residuals);
    result.sigma2 = sse / n;
    result.aic = n * std::log(sse / n) + 2.0 * static_cast<double>(k_coef + 2);

    const std::size_t tail = tail_length(spec, series.size());
    result.training_tail.assign(series.end() - static_cast<std::ptrdiff_t>(tail), series.end());
    return result;
}

SarimaFit auto_fit(std::span<const double> series, int max_p, int max_q, int d, int D, int s) {
    if (max_p < 0 || max_q < 0) throw ConfigError("auto_fit bounds must be non-negative");

    bool have_best = false;
    SarimaFit best;
    for (int p = 0; p <= max_p; ++p) {
        for (int q = 0; q <= max_q; ++q) {
            SarimaSpec spec{p, d, q, 0, D, 0, s};
            SarimaFit candidate;
            try {
                candidate = fit(spec, series);
            } catch (const DataError&) {
                continue;  // candidate needs more data than we have
            }
            if (!candidate.converged) continue;
            if (!have_best) {
                best = std::move(candidate);
                have_best = true;
                continue;
            }
            const double delta = candidate.aic - best.aic;
            const bool better =
                delta < -1e-9 ||
                (std::abs(delta) <= 1e-9 &&
                 (candidate.spec.coefficient_count() < best.spec.coefficient_count() ||
                  (candidate.spec.coefficient_count() == best.spec.coefficient_count() &&
                   candidate.spec.q < best.spec.q)));
            if (better) best = std::move(candidate);
        }
    }
    if (!have_best) {
        throw NumericError("auto_fit: no candidate model converged");
    }
    return best;
}

std::vector<double> forecast(const SarimaFit& fit, int horizon) {
    if (horizon < 1) throw ConfigError("forecast horizon must be at least 1");
    const SarimaSpec& spec = fit.spec;
    const std::vector<double> ar = fit.expanded_ar();
    const std::vector<double> ma = fit.expanded_ma();
    const double mu = fit.intercept;

    // Differenced-scale history feeding the recursion: w values reconstructed
    // from the stored tail, residuals from the fit (zero-padded at the front).
    std::vector<double> w_ext;
    if (!ar.empty()) {
        const std::vector<double> w_tail =
            difference(fit.training_tail, spec.d, spec.D, spec.s);
        if (w_tail.size() < ar.size()) {
            throw DataError("training tail too short for the AR order");
        }
        w_ext.assign(w_tail.end() - static_cast<std::ptrdiff_t>(ar.size()), w_tail.end());
    }
    const std::size_t w_hist = w_ext.size();

    std::vector<double> e_ext(ma.size(), 0.0);
    const std::size_t available = std::min(ma.size(), fit.residuals.size());
    for (std::size_t i = 0; i < available; ++i) {
        e_ext[ma.size() - 1 - i] = fit.residuals[fit.residuals.size() - 1 - i];
    }
    const std::size_t e_hist = e_ext.size();

    std::vector<double> diffed;
    diffed.reserve(static_cast<std::size_t>(horizon));
    for (int h = 0; h < horizon; ++h) {
        double value = mu;
        for (std::size_t k = 0; k < ar.size(); ++k) {
            const std::size_t idx = w_hist + static_cast<std::size_t>(h) - 1 - k;
            value += ar[k] * (w_ext[idx] - mu);
        }
        for (std::size_t k = 0; k < ma.size(); ++k) {
            const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(e_hist) + h - 1 -
                                       static_cast<std::ptrdiff_t>(k);
            if (idx < static_cast<std::ptrdiff_t>(e_hist)) {
                value += ma[k] * e_ext[static_cast<std::size_t>(idx)];
            }
            // future errors are zero
        }
        w_ext.push_back(value);
        diffed.push_back(value);
    }
    return undifference(diffed, fit.training_tail, spec.d, spec.D, spec.s);
}

std::vector<double> acf(std::span<const double> series, int max_lag) {
    const std::size_t n = series.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
        throw DataError("acf: max_lag must satisfy 0 <= max_lag < n");
    }
    const double mean = mean_of(series);
    double denom = 0.0;
    for (double y : series) denom += (y - mean) * (y - mean);
    if (denom == 0.0) {
        throw NumericError("acf: constant series has no autocorrelation");
    }
    std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1, 0.0);
    rho[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t) {
            num += (series[t] - mean) * (series[t + static_cast<std::size_t>(k)] - mean);
        }
        rho[static_cast<std::size_t>(k)] = num / denom;
    }
    return rho;
}

LjungBoxResult ljung_box(std::span<const double> residuals, int lags, int fitted_params) {
    const auto n = static_cast<double>(residuals.size());
    if (lags <= fitted_params) {
        throw ConfigError("ljung_box: lags (" + std::to_string(lags) +
                          ") must exceed fitted parameter count (" +
                          std::to_string(fitted_params) + ")");
    }
    if (residuals.size() <= static_cast<std::size_t>(lags)) {
        throw DataError("ljung_box: need more residuals than lags");
    }
    const std::vector<double> rho = acf(residuals, lags);
    double q = 0.0;
    for (int j = 1; j <= lags; ++j) {
        q += rho[static_cast<std::size_t>(j)] * rho[static_cast<std::size_t>(j)] /
             (n - static_cast<double>(j));
    }
    q *= n * (n + 2.0);

    LjungBoxResult out;
    out.statistic = q;
    out.lags = lags;
    out.dof = lags - fitted_params;
    out.p_value = stats::chi_square_sf(q, static_cast<double>(out.dof));
    return out;
}

std::vector<double> standardized_residuals(const SarimaFit& fit) {
    if (!(fit.sigma2 > 0.0)) {
        throw NumericError("standardized residuals need sigma2 > 0");
    }
    const double sd = std::sqrt(fit.sigma2);
    std::vector<double> out;
    out.reserve(fit.residuals.size());
    for (double e : fit.residuals) out.push_back(e / sd);
    return out;
}

std::string fit_summary(const SarimaFit& fit) {
    std::ostringstream os;
    os << "spec = " << fit.spec.to_string() << '\n';
    os << "n_residuals = " << fit.residuals.size() << '\n';
    auto emit = [&os](const char* key, const std::vector<double>& coefs) {
        for (std::size_t i = 0; i < coefs.size(); ++i) {
            os << key << '.' << (i + 1) << " = " << format_double(coefs[i]) << '\n';
        }
    };
    emit("phi", fit.phi);
    emit("theta", fit.theta);
    emit("seasonal_phi", fit.seasonal_phi);
    emit("seasonal_theta", fit.seasonal_theta);
    os << "intercept = " << format_double(fit.intercept) << '\n';
    os << "sigma2 = " << format_double(fit.sigma2) << '\n';
    os << "aic = " << format_double(fit.aic) << '\n';
    os << "converged = " << (fit.converged ? "true" : "false") << '\n';
    os << "warning.data_sufficiency = " << (fit.data_sufficiency_warning ? "true" : "false")
       << '\n';
    for (std::size_t i = 0; i < fit.warnings.size(); ++i) {
        os << "warning." << (i + 1) << " = " << fit.warnings[i] << '\n';
    }
    for (int lag : {5, 10, 15, 20}) {
        const std::string key = "ljung_box." + std::to_string(lag);
        try {
            const LjungBoxResult lb = ljung_box(fit.residuals, lag, fit.spec.coefficient_count());
            os << key << ".statistic = " << format_double(lb.statistic) << '\n';
            os << key << ".p_value = " << format_double(lb.p_value) << '\n';
        } catch (const std::exception&) {
            os << key << " = n/a\n";
        }
    }
    return os.str();
}

}  // namespace tsforge::sarima
