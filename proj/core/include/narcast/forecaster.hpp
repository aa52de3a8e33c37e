#pragma once

#include "narcast/network.hpp"
#include "narcast/resample.hpp"
#include "narcast/series.hpp"

#include <span>
#include <vector>

namespace narcast {

/// Weekly forecast plus its monthly re-aggregation and the cumulative
/// totals anchored at the last observed aggregate.
struct ForecastResult {
    WeeklySeries weekly;
    MonthlySeries monthly;
    CumulativeSeries cumulative;

    bool empty() const { return weekly.empty(); }
};

/**
 * Number of ISO weeks strictly after `last_observed` up to and including
 * the week containing the final day of `target_month`. Throws InputError
 * when the target month ends within or before the last observed week.
 */
long horizon_weeks(IsoWeek last_observed, MonthPeriod target_month);

/**
 * Closed-loop multi-step forecast: each step normalizes the rolling
 * window, applies the network, denormalizes, clamps negatives to zero,
 * and feeds the prediction back into the window. The seed window and
 * returned values are in raw case units.
 */
std::vector<double> closed_loop_forecast(const NarNetwork& net,
                                         std::span<const double> seed_window, long steps);

/**
 * One-step-ahead predictions over an observed weekly series: prediction
 * i estimates the value at position i + delays from the preceding
 * window. Returned series starts `delays` weeks after the input and is
 * not clamped, so residuals stay honest.
 */
WeeklySeries one_step_weekly_predictions(const NarNetwork& net, const WeeklySeries& observed);

/**
 * Re-aggregates a weekly forecast into monthly and cumulative series
 * over [first_target, last_target]. The weekly series must cover every
 * day of that range; the cumulative series is anchored at
 * last_observed_aggregate.
 */
ForecastResult assemble_forecast(const WeeklySeries& weekly_forecast,
                                 MonthPeriod last_observed_month, double last_observed_aggregate,
                                 MonthPeriod first_target, MonthPeriod last_target);

} // namespace narcast
