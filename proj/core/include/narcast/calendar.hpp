#pragma once

#include <chrono>
#include <compare>
#include <string>

namespace narcast {

/**
 * ISO-8601 week identifier.
 *
 * Weeks start on Monday; week 1 of an ISO year is the week containing
 * January 4 (equivalently, the first Thursday of the calendar year).
 * ISO years hold 52 or 53 weeks, so (iso_year, iso_week) does not always
 * match the calendar year of every day it contains.
 */
struct IsoWeek {
    int iso_year = 0;
    int iso_week = 0; // 1..52 or 1..53 depending on the year

    friend auto operator<=>(const IsoWeek&, const IsoWeek&) = default;
};

/// ISO week containing the given day.
IsoWeek iso_week_of(std::chrono::sys_days day);

/// Monday of the given ISO week. Throws InputError for an invalid week.
std::chrono::sys_days iso_week_start(IsoWeek week);

/// Sunday of the given ISO week.
std::chrono::sys_days iso_week_end(IsoWeek week);

/// 52 or 53.
int iso_weeks_in_year(int iso_year);

bool iso_week_valid(IsoWeek week);

/// Week that starts `count` weeks after (or before, if negative) `week`.
IsoWeek iso_week_advance(IsoWeek week, long count);

/// Signed number of week steps from `from` to `to`.
long iso_week_distance(IsoWeek from, IsoWeek to);

std::string to_string(IsoWeek week); // "2020-W01"

/// Number of days in the given calendar month, leap years included.
int days_in_month(int year, int month);

std::chrono::sys_days month_first_day(int year, int month);
std::chrono::sys_days month_last_day(int year, int month);

} // namespace narcast
