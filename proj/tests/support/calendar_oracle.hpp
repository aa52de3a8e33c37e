#pragma once

#include <cstddef>
#include <utility>
#include <vector>

// Brute-force calendar oracle, deliberately independent of the library:
// its own leap rule and month lengths, Zeller's congruence for weekdays,
// and ISO week identification straight from the definition (the week of
// a day is the Monday-started week containing it; its ISO year is the
// year of that week's Thursday; week numbers count from the week
// containing January 4). Everything walks day by day.
namespace oracle {

struct Date {
    int year = 0;
    int month = 0; // 1..12
    int day = 0;   // 1..31

    friend bool operator==(const Date&, const Date&) = default;
};

struct Week {
    int iso_year = 0;
    int iso_week = 0;

    friend bool operator==(const Week&, const Week&) = default;
};

bool is_leap(int year);
int days_in_month(int year, int month);
Date next_day(Date d);
Date previous_day(Date d);
bool before(Date a, Date b);

/// Monday = 1 .. Sunday = 7 (Zeller's congruence).
int weekday(Date d);

/// ISO week of a day, derived by walking to the week's Thursday and to
/// January 4 of the Thursday's year.
Week iso_week(Date d);

/// Every ISO week touched by [first, last], in order, day-by-day walk.
std::vector<Week> week_bins(Date first, Date last);

/// Weeks strictly after the week of `last_observed_day`, up to and
/// including the week containing the last day of (year, month).
long horizon_weeks(Date last_observed_day, int target_year, int target_month);

} // namespace oracle
