#include "narcast/forecaster.hpp"

#include "narcast/errors.hpp"

#include <algorithm>
#include <cmath>

namespace narcast {

long horizon_weeks(IsoWeek last_observed, MonthPeriod target_month) {
    const IsoWeek end_week =
        iso_week_of(month_last_day(target_month.year, target_month.month));
    const long steps = iso_week_distance(last_observed, end_week);
    if (steps <= 0) {
        throw InputError("target month " + to_string(target_month) +
                         " ends within or before the last observed week " +
                         to_string(last_observed));
    }
    return steps;
}

std::vector<double> closed_loop_forecast(const NarNetwork& net,
                                         std::span<const double> seed_window, long steps) {
    if (static_cast<int>(seed_window.size()) != net.delays) {
        throw InputError("seed window length " + std::to_string(seed_window.size()) +
                         " does not match network delay count " + std::to_string(net.delays));
    }
    if (steps < 0) {
        throw InputError("negative forecast step count");
    }

    std::vector<double> window(seed_window.begin(), seed_window.end());
    std::vector<double> scaled(window.size());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (long s = 0; s < steps; ++s) {
        for (std::size_t j = 0; j < window.size(); ++j) {
            scaled[j] = net.norm.normalize(window[j]);
        }
        const double raw = net.norm.denormalize(forward(net, scaled));
        if (!std::isfinite(raw)) {
            throw TrainingError("non-finite prediction at forecast step " + std::to_string(s));
        }
        const double prediction = std::max(raw, 0.0);
        out.push_back(prediction);
        window.erase(window.begin());
        window.push_back(prediction);
    }
    return out;
}

WeeklySeries one_step_weekly_predictions(const NarNetwork& net, const WeeklySeries& observed) {
    const auto d = static_cast<std::size_t>(net.delays);
    if (observed.size() <= d) {
        throw InputError("observed series too short for one-step predictions");
    }
    WeeklySeries out;
    out.first_week = observed.week_at(d);
    out.values.reserve(observed.size() - d);
    std::vector<double> scaled(d);
    for (std::size_t i = 0; i + d < observed.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            scaled[j] = net.norm.normalize(observed.values[i + j]);
        }
        out.values.push_back(net.norm.denormalize(forward(net, scaled)));
    }
    return out;
}

ForecastResult assemble_forecast(const WeeklySeries& weekly_forecast,
                                 MonthPeriod last_observed_month, double last_observed_aggregate,
                                 MonthPeriod first_target, MonthPeriod last_target) {
    if (!(last_observed_month < first_target)) {
        throw InputError("forecast range must start after the last observed month");
    }
    if (last_target < first_target) {
        throw InputError("reversed forecast month range");
    }
    ForecastResult result;
    result.weekly = weekly_forecast;
    result.monthly = weekly_to_monthly(weekly_forecast, first_target, last_target);
    result.cumulative = cumulative_from_incident(result.monthly, last_observed_aggregate);
    return result;
}

} // namespace narcast
