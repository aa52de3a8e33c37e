#include "narcast/calendar.hpp"

#include "narcast/errors.hpp"

#include <cstdio>

namespace narcast {

namespace chr = std::chrono;

namespace {

// Monday = 1 .. Sunday = 7.
int iso_weekday(chr::sys_days day) {
    return static_cast<int>(chr::weekday{day}.iso_encoding());
}

chr::sys_days civil_day(int year, int month, int day) {
    return chr::sys_days{chr::year{year} / chr::month{static_cast<unsigned>(month)} /
                         chr::day{static_cast<unsigned>(day)}};
}

} // namespace

IsoWeek iso_week_of(chr::sys_days day) {
    // The ISO year and week of a day are those of the Thursday in its week.
    const chr::sys_days thursday = day + chr::days{4 - iso_weekday(day)};
    const chr::year_month_day thu_ymd{thursday};
    const int iso_year = static_cast<int>(thu_ymd.year());
    const chr::sys_days jan1 = civil_day(iso_year, 1, 1);
    const int day_of_year = static_cast<int>((thursday - jan1).count()) + 1;
    return IsoWeek{iso_year, (day_of_year - 1) / 7 + 1};
}

std::chrono::sys_days iso_week_start(IsoWeek week) {
    if (!iso_week_valid(week)) {
        throw InputError("invalid ISO week " + to_string(week));
    }
    const chr::sys_days jan4 = civil_day(week.iso_year, 1, 4);
    const chr::sys_days week1_monday = jan4 - chr::days{iso_weekday(jan4) - 1};
    return week1_monday + chr::weeks{week.iso_week - 1};
}

std::chrono::sys_days iso_week_end(IsoWeek week) {
    return iso_week_start(week) + chr::days{6};
}

int iso_weeks_in_year(int iso_year) {
    // December 28 always lies in the last week of its ISO year.
    return iso_week_of(civil_day(iso_year, 12, 28)).iso_week;
}

bool iso_week_valid(IsoWeek week) {
    return week.iso_week >= 1 && week.iso_week <= iso_weeks_in_year(week.iso_year);
}

IsoWeek iso_week_advance(IsoWeek week, long count) {
    return iso_week_of(iso_week_start(week) + chr::weeks{count});
}

long iso_week_distance(IsoWeek from, IsoWeek to) {
    return (iso_week_start(to) - iso_week_start(from)).count() / 7;
}

std::string to_string(IsoWeek week) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-W%02d", week.iso_year, week.iso_week);
    return buf;
}

int days_in_month(int year, int month) {
    if (month < 1 || month > 12) {
        throw InputError("month out of range: " + std::to_string(month));
    }
    const chr::year_month_day_last last{chr::year{year},
                                        chr::month_day_last{chr::month{static_cast<unsigned>(month)}}};
    return static_cast<int>(static_cast<unsigned>(last.day()));
}

std::chrono::sys_days month_first_day(int year, int month) {
    if (month < 1 || month > 12) {
        throw InputError("month out of range: " + std::to_string(month));
    }
    return civil_day(year, month, 1);
}

std::chrono::sys_days month_last_day(int year, int month) {
    return civil_day(year, month, days_in_month(year, month));
}

} // namespace narcast
