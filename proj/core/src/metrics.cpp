#include "narcast/metrics.hpp"

#include "narcast/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace narcast {

namespace {

double mean(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

MetricsReport point_metrics(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size()) {
        throw InputError("predicted and actual lengths differ");
    }
    if (actual.empty()) {
        throw InputError("cannot compute metrics of an empty series");
    }
    const std::size_t n = actual.size();
    const double actual_mean = mean(actual);

    double sse = 0.0;
    double abs_sum = 0.0;
    double ape_sum = 0.0;
    double sst = 0.0;
    std::size_t mape_terms = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = predicted[i] - actual[i];
        sse += e * e;
        abs_sum += std::fabs(e);
        sst += (actual[i] - actual_mean) * (actual[i] - actual_mean);
        if (actual[i] != 0.0) {
            ape_sum += std::fabs(e / actual[i]);
            ++mape_terms;
        }
    }
    if (sst == 0.0) {
        throw InputError("R^2 is undefined when all actual values are equal");
    }

    MetricsReport report;
    report.n = n;
    report.rmse = std::sqrt(sse / static_cast<double>(n));
    report.mae = abs_sum / static_cast<double>(n);
    report.mape_excluded = n - mape_terms;
    report.mape = 100.0 * ape_sum / static_cast<double>(mape_terms);
    report.r_squared = 1.0 - sse / sst;

    const double pred_mean = mean(predicted);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (predicted[i] - pred_mean) * (actual[i] - actual_mean);
        sxx += (predicted[i] - pred_mean) * (predicted[i] - pred_mean);
    }
    report.pearson_r = (sxx == 0.0) ? std::numeric_limits<double>::quiet_NaN()
                                    : sxy / std::sqrt(sxx * sst);
    return report;
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InputError("correlation inputs must have equal length");
    }
    if (x.size() < 2) {
        throw InputError("correlation needs at least two points");
    }
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw InputError("correlation is undefined for a constant input");
    }
    return sxy / std::sqrt(sxx * syy);
}

AcfReport residual_autocorrelation(std::span<const double> errors, std::size_t max_lag) {
    const std::size_t n = errors.size();
    if (n == 0 || max_lag >= n) {
        throw InputError("max_lag must be smaller than the series length");
    }
    const double m = mean(errors);
    double denom = 0.0;
    for (double e : errors) denom += (e - m) * (e - m);
    if (denom == 0.0) {
        throw InputError("autocorrelation is undefined for a constant series");
    }

    AcfReport report;
    report.n = n;
    report.confidence_bound = 1.96 / std::sqrt(static_cast<double>(n));
    report.coefficients.reserve(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            num += (errors[t] - m) * (errors[t + k] - m);
        }
        report.coefficients.push_back(num / denom);
    }
    return report;
}

std::vector<std::string> metric_consistency_check(const ClaimedMetrics& claimed) {
    std::vector<std::string> violations;
    const double tolerance = 1e-12 * std::max(1.0, std::fabs(claimed.mae));
    if (claimed.rmse < claimed.mae - tolerance) {
        violations.push_back("RMSE (" + format_value(claimed.rmse) + ") < MAE (" +
                             format_value(claimed.mae) +
                             "): impossible for any single prediction set");
    }
    if (claimed.r_squared > 1.0) {
        violations.push_back("R^2 (" + format_value(claimed.r_squared) + ") exceeds 1");
    }
    if (claimed.rmse < 0.0) {
        violations.push_back("RMSE (" + format_value(claimed.rmse) + ") is negative");
    }
    if (claimed.mae < 0.0) {
        violations.push_back("MAE (" + format_value(claimed.mae) + ") is negative");
    }
    if (claimed.mape < 0.0) {
        violations.push_back("MAPE (" + format_value(claimed.mape) + ") is negative");
    }
    return violations;
}

} // namespace narcast
