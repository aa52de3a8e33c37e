#pragma once

#include "narcast/calendar.hpp"
#include "narcast/series.hpp"

#include <vector>

namespace narcast {

/**
 * ISO-week-binned real-valued counts, contiguous from `first_week`.
 * Produced by monthly_to_weekly; boundary weeks that straddle the
 * observation range carry only the in-range share of the mass.
 */
struct WeeklySeries {
    IsoWeek first_week;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    IsoWeek week_at(std::size_t i) const { return iso_week_advance(first_week, static_cast<long>(i)); }
    IsoWeek last_week() const;
};

/**
 * Every ISO week containing at least one day in [first_day, last_day],
 * in order, each listed once. Throws InputError on a reversed range.
 */
std::vector<IsoWeek> iso_week_bins(std::chrono::sys_days first_day, std::chrono::sys_days last_day);

/**
 * Converts a monthly series to ISO-week bins. Each calendar day carries
 * a uniform share of its month's value (value / days-in-month); a week's
 * value is the sum of the daily shares of its in-range days. Total mass
 * is conserved.
 */
WeeklySeries monthly_to_weekly(const MonthlySeries& s);

/**
 * Re-aggregates weekly values to months: each week's mass spreads
 * uniformly over its 7 days and each month collects the shares of its
 * days. The weeks must cover every day of [first_month, last_month];
 * Throws InputError on a coverage gap.
 */
MonthlySeries weekly_to_monthly(const WeeklySeries& w, MonthPeriod first_month,
                                MonthPeriod last_month);

/// CSV dump with header `iso_year,iso_week,cases`.
std::string serialize_weekly_csv(const WeeklySeries& w);

} // namespace narcast
