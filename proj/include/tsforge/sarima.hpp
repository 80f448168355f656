#pragma once

#include <span>
#include <string>
#include <vector>

namespace tsforge::sarima {

/// Model orders (p, d, q) x (P, D, Q)_s.
struct SarimaSpec {
    int p = 0, d = 0, q = 0;  // non-seasonal AR, differencing, MA
    int P = 0, D = 0, Q = 0;  // seasonal counterparts
    int s = 1;                // seasonal period in observations

    /// Throws ConfigError on negative orders, s < 1, or a seasonal
    /// structure (P+D+Q > 0) with s < 2.
    void validate() const;

    int coefficient_count() const { return p + q + P + Q; }
    std::string to_string() const;  // "(p,d,q)x(P,D,Q)[s]"
};

/// Applies (1-B)^d (1-B^s)^D; output length = input - d - D*s.
std::vector<double> difference(std::span<const double> series, int d, int D, int s);

/// Inverts `difference` for values that extend the series. `tail` holds the
/// last original-unit observations (at least d + D*s of them) immediately
/// preceding the forecasts. difference(undifference(x)) == x for any valid x.
std::vector<double> undifference(std::span<const double> diffed_continuation,
                                 std::span<const double> tail, int d, int D, int s);

/// Expands a multiplicative pair, e.g. phi(B) * PHI(B^s), into plain lag
/// coefficients of length ordinary.size() + s * seasonal.size().
/// `sign` is -1 for the AR convention (1 - sum) and +1 for MA (1 + sum).
std::vector<double> expand_multiplicative(std::span<const double> ordinary,
                                          std::span<const double> seasonal, int s, double sign);

/// Conditional-sum-of-squares residual recursion on the differenced series w:
///   e_t = (w_t - mu) - sum_i ar[i] (w_{t-i} - mu) - sum_j ma[j] e_{t-j}
/// with presample deviations and errors set to zero. `ar` and `ma` are plain
/// (already expanded) lag coefficient vectors.
std::vector<double> css_residuals(std::span<const double> ar, std::span<const double> ma,
                                  double intercept, std::span<const double> w);

/// True when the AR polynomial 1 - sum a_k z^k has all roots outside the unit
/// circle (Schur-Cohn step-down on the reflection coefficients).
bool ar_stationary(std::span<const double> ar);

struct SarimaFit {
    SarimaSpec spec;
    std::vector<double> phi;             // non-seasonal AR
    std::vector<double> theta;           // non-seasonal MA
    std::vector<double> seasonal_phi;    // seasonal AR
    std::vector<double> seasonal_theta;  // seasonal MA
    double intercept = 0.0;              // mean of the differenced series
    std::vector<double> residuals;       // one per differenced observation
    double sigma2 = 0.0;                 // SSE / n
    double aic = 0.0;                    // n ln(SSE/n) + 2 (k + 1)
    bool converged = true;
    bool data_sufficiency_warning = false;
    std::vector<std::string> warnings;
    std::vector<double> training_tail;   // original-unit tail kept for forecasting

    std::vector<double> expanded_ar() const;
    std::vector<double> expanded_ma() const;
};

/// Minimizes the conditional sum of squares over all coefficients and the
/// intercept with a simplex search from a zero start. Non-stationary AR
/// candidates are rejected during the search. Non-convergence is reported via
/// `converged` and a warning, with the best point returned.
SarimaFit fit(const SarimaSpec& spec, std::span<const double> series);

/// Grid search p <= max_p, q <= max_q with fixed (d, D, s); returns the
/// converged candidate with minimal AIC (ties: fewer coefficients, then
/// lower q). Throws NumericError when no candidate converges.
SarimaFit auto_fit(std::span<const double> series, int max_p, int max_q, int d, int D, int s);

/// Recursive multi-step forecast in original units: future errors are zero,
/// future differenced values are replaced by their own forecasts, and the
/// result is undifferenced through the stored training tail.
std::vector<double> forecast(const SarimaFit& fit, int horizon);

/// Autocorrelations for lags 0..max_lag; index k holds rho_k (rho_0 == 1).
/// Throws NumericError on a constant series.
std::vector<double> acf(std::span<const double> series, int max_lag);

struct LjungBoxResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int lags = 0;
    int dof = 0;
};

/// Q = n(n+2) sum_{j<=h} rho_j^2 / (n-j), p-value from chi-square with
/// h - fitted_params degrees of freedom. Requires h > fitted_params, n > h.
LjungBoxResult ljung_box(std::span<const double> residuals, int lags, int fitted_params);

/// Residuals divided by the fitted sigma. Throws NumericError when sigma2 == 0.
std::vector<double> standardized_residuals(const SarimaFit& fit);

/// Key-value text block: spec, coefficients, sigma2, AIC, convergence flag,
/// and a Ljung-Box table at lags {5, 10, 15, 20}.
std::string fit_summary(const SarimaFit& fit);

}  // namespace tsforge::sarima
