#include "narcast/resample.hpp"

#include "narcast/errors.hpp"

#include <cstdio>

namespace narcast {

namespace chr = std::chrono;

IsoWeek WeeklySeries::last_week() const {
    if (values.empty()) {
        throw InputError("empty weekly series has no last week");
    }
    return week_at(values.size() - 1);
}

std::vector<IsoWeek> iso_week_bins(chr::sys_days first_day, chr::sys_days last_day) {
    if (first_day > last_day) {
        throw InputError("reversed date range");
    }
    const IsoWeek first = iso_week_of(first_day);
    const IsoWeek last = iso_week_of(last_day);
    const long count = iso_week_distance(first, last) + 1;
    std::vector<IsoWeek> bins;
    bins.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        bins.push_back(iso_week_advance(first, i));
    }
    return bins;
}

WeeklySeries monthly_to_weekly(const MonthlySeries& s) {
    if (s.empty()) {
        throw InputError("cannot resample an empty monthly series");
    }
    const MonthPeriod last = s.last_period();
    const chr::sys_days first_day = month_first_day(s.origin.year, s.origin.month);
    const chr::sys_days last_day = month_last_day(last.year, last.month);

    WeeklySeries out;
    out.first_week = iso_week_of(first_day);
    out.values.assign(static_cast<std::size_t>(iso_week_distance(out.first_week, iso_week_of(last_day)) + 1),
                      0.0);

    // Walk the range day by day, pushing each day's share of its month's
    // value into the ISO-week bin that owns the day.
    const chr::sys_days week0_monday = iso_week_start(out.first_week);
    std::size_t month_i = 0;
    MonthPeriod month = s.origin;
    double daily_share = s.values[0] / days_in_month(month.year, month.month);
    chr::sys_days month_end = month_last_day(month.year, month.month);
    for (chr::sys_days day = first_day; day <= last_day; day += chr::days{1}) {
        if (day > month_end) {
            ++month_i;
            month = next_month(month);
            daily_share = s.values[month_i] / days_in_month(month.year, month.month);
            month_end = month_last_day(month.year, month.month);
        }
        const auto bin = static_cast<std::size_t>((day - week0_monday).count() / 7);
        out.values[bin] += daily_share;
    }
    return out;
}

MonthlySeries weekly_to_monthly(const WeeklySeries& w, MonthPeriod first_month,
                                MonthPeriod last_month) {
    if (last_month < first_month) {
        throw InputError("reversed month range");
    }
    if (w.empty()) {
        throw InputError("empty weekly series cannot cover any month");
    }
    const chr::sys_days range_first = month_first_day(first_month.year, first_month.month);
    const chr::sys_days range_last = month_last_day(last_month.year, last_month.month);
    const chr::sys_days covered_first = iso_week_start(w.first_week);
    const chr::sys_days covered_last = iso_week_end(w.last_week());
    if (range_first < covered_first || range_last > covered_last) {
        throw InputError("weekly series does not cover every day of the month range");
    }

    const int n_months = month_index(last_month, first_month);
    MonthlySeries out;
    out.origin = first_month;
    out.values.assign(static_cast<std::size_t>(n_months), 0.0);

    std::size_t month_i = 0;
    chr::sys_days month_end = month_last_day(first_month.year, first_month.month);
    MonthPeriod month = first_month;
    for (chr::sys_days day = range_first; day <= range_last; day += chr::days{1}) {
        if (day > month_end) {
            ++month_i;
            month = next_month(month);
            month_end = month_last_day(month.year, month.month);
        }
        const auto week = static_cast<std::size_t>((day - covered_first).count() / 7);
        out.values[month_i] += w.values[week] / 7.0;
    }
    return out;
}

std::string serialize_weekly_csv(const WeeklySeries& w) {
    std::string out = "iso_year,iso_week,cases\n";
    char buf[80];
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        const IsoWeek week = w.week_at(i);
        std::snprintf(buf, sizeof(buf), "%d,%d,%.6f\n", week.iso_year, week.iso_week, w.values[i]);
        out += buf;
    }
    return out;
}

} // namespace narcast
