#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace narcast {

/// A calendar month, e.g. (2020, 1) for January 2020.
struct MonthPeriod {
    int year = 0;
    int month = 0; // 1..12

    friend auto operator<=>(const MonthPeriod&, const MonthPeriod&) = default;
};

/// Month that follows `p`.
MonthPeriod next_month(MonthPeriod p);

/// `p` advanced by `count` months (negative moves backwards).
MonthPeriod advance_month(MonthPeriod p, int count);

/// 1-based offset of `p` from `origin`; `origin` itself maps to 1.
/// Throws InputError when `p` precedes `origin`.
int month_index(MonthPeriod p, MonthPeriod origin);

std::string to_string(MonthPeriod p); // "2020-01"

/// Parses "YYYY-MM". Throws InputError on malformed input.
MonthPeriod parse_month_period(const std::string& text);

/**
 * Contiguous monthly incident counts (new cases per month) anchored at an
 * origin month. Values are reals: resampled series are fractional even
 * though raw registry counts are integers.
 */
struct MonthlySeries {
    MonthPeriod origin;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    MonthPeriod period_at(std::size_t i) const;
    MonthPeriod last_period() const;
};

/// Running totals: values[i] = base + sum of incidents up to month i.
struct CumulativeSeries {
    MonthPeriod origin;
    double base = 0.0; // cases accumulated before the origin month
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/**
 * Reads a monthly CSV with header `period,cases`, periods formatted
 * YYYY-MM in ascending contiguous order, nonnegative counts.
 * Throws InputError on empty body, malformed rows, month gaps or
 * duplicates, and negative counts.
 */
MonthlySeries parse_monthly_csv(std::istream& text);
MonthlySeries parse_monthly_csv(const std::string& text);

/// Inverse of parsing: emits the `period,cases` rows with LF endings.
std::string serialize_monthly_csv(const MonthlySeries& series);

/// Loads a monthly CSV from disk. Throws IoError when unreadable.
MonthlySeries load_monthly_csv(const std::string& path);

/// Running sum: out[i] = base + sum of s.values[0..i]. Throws on negative base.
CumulativeSeries cumulative_from_incident(const MonthlySeries& s, double base);

/// Exact left inverse of cumulative_from_incident. Throws InputError when
/// consecutive totals decrease (which would imply a negative incident).
MonthlySeries incident_from_cumulative(const CumulativeSeries& c);

} // namespace narcast
