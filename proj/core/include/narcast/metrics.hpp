#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace narcast {

/**
 * Point-forecast accuracy summary. MAPE is in percent; terms whose
 * actual value is zero are excluded from it and counted in
 * mape_excluded. pearson_r is NaN when either side is constant.
 */
struct MetricsReport {
    double rmse = 0.0;
    double mae = 0.0;
    double mape = 0.0;
    double r_squared = 0.0;
    double pearson_r = 0.0;
    std::size_t n = 0;
    std::size_t mape_excluded = 0;
};

/**
 * RMSE, MAE, MAPE (percent), coefficient of determination about the
 * mean of actuals, and Pearson correlation of the pair.
 * Throws InputError on length mismatch, empty input, or constant
 * actuals (which leave R^2 undefined).
 */
MetricsReport point_metrics(std::span<const double> predicted, std::span<const double> actual);

/// Sample Pearson correlation. Throws InputError when either input is
/// constant or shorter than 2.
double pearson_r(std::span<const double> x, std::span<const double> y);

/// Sample autocorrelation of a residual series, lags 0..max_lag.
struct AcfReport {
    std::vector<double> coefficients; // coefficients[k] = acf at lag k
    double confidence_bound = 0.0;    // +-1.96 / sqrt(n)
    std::size_t n = 0;
};

/**
 * Biased sample ACF: rho(k) = sum (e_t - mean)(e_{t+k} - mean) /
 * sum (e_t - mean)^2, with confidence bound 1.96/sqrt(n).
 * Throws InputError for constant series or max_lag >= length.
 */
AcfReport residual_autocorrelation(std::span<const double> errors, std::size_t max_lag);

/// A reported metric set as published, for internal-consistency audits.
struct ClaimedMetrics {
    double rmse = 0.0;
    double mae = 0.0;
    double mape = 0.0;
    double r_squared = 0.0;
};

/**
 * Flags combinations no single prediction set can produce:
 * RMSE < MAE, R^2 > 1, and negative error metrics. Returns one
 * human-readable violation per finding; empty when consistent.
 */
std::vector<std::string> metric_consistency_check(const ClaimedMetrics& claimed);

} // namespace narcast
