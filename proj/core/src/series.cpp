#include "narcast/series.hpp"

#include "narcast/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace narcast {

namespace {

std::string strip(const std::string& line) {
    std::size_t begin = 0;
    std::size_t end = line.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(line[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
    return line.substr(begin, end - begin);
}

double parse_count(const std::string& text, std::size_t row) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw InputError("row " + std::to_string(row) + ": malformed count '" + text + "'");
    }
    if (consumed != text.size() || !std::isfinite(value)) {
        throw InputError("row " + std::to_string(row) + ": malformed count '" + text + "'");
    }
    if (value < 0.0) {
        throw InputError("row " + std::to_string(row) + ": negative count " + text);
    }
    return value;
}

std::string format_count(double value) {
    char buf[64];
    if (value == std::floor(value) && std::fabs(value) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", value);
    } else {
        std::snprintf(buf, sizeof(buf), "%.17g", value);
    }
    return buf;
}

} // namespace

MonthPeriod next_month(MonthPeriod p) {
    return advance_month(p, 1);
}

MonthPeriod advance_month(MonthPeriod p, int count) {
    const int zero_based = p.year * 12 + (p.month - 1) + count;
    const int year = (zero_based >= 0) ? zero_based / 12 : -((-zero_based + 11) / 12);
    return MonthPeriod{year, zero_based - year * 12 + 1};
}

int month_index(MonthPeriod p, MonthPeriod origin) {
    if (p < origin) {
        throw InputError("period " + to_string(p) + " precedes origin " + to_string(origin));
    }
    return (p.year - origin.year) * 12 + (p.month - origin.month) + 1;
}

std::string to_string(MonthPeriod p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", p.year, p.month);
    return buf;
}

MonthPeriod parse_month_period(const std::string& text) {
    // Exactly YYYY-MM: four digits, dash, two digits.
    if (text.size() != 7 || text[4] != '-') {
        throw InputError("malformed period '" + text + "' (expected YYYY-MM)");
    }
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u}) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw InputError("malformed period '" + text + "' (expected YYYY-MM)");
        }
    }
    const int year = std::stoi(text.substr(0, 4));
    const int month = std::stoi(text.substr(5, 2));
    if (month < 1 || month > 12) {
        throw InputError("malformed period '" + text + "': month out of range");
    }
    return MonthPeriod{year, month};
}

MonthPeriod MonthlySeries::period_at(std::size_t i) const {
    return advance_month(origin, static_cast<int>(i));
}

MonthPeriod MonthlySeries::last_period() const {
    if (values.empty()) {
        throw InputError("empty series has no last period");
    }
    return period_at(values.size() - 1);
}

MonthlySeries parse_monthly_csv(std::istream& text) {
    std::string line;
    if (!std::getline(text, line) || strip(line) != "period,cases") {
        throw InputError("missing or malformed header (expected 'period,cases')");
    }

    MonthlySeries series;
    std::size_t row = 0;
    while (std::getline(text, line)) {
        const std::string trimmed = strip(line);
        if (trimmed.empty()) continue;
        ++row;
        const std::size_t comma = trimmed.find(',');
        if (comma == std::string::npos) {
            throw InputError("row " + std::to_string(row) + ": expected 'period,cases'");
        }
        const MonthPeriod period = parse_month_period(trimmed.substr(0, comma));
        const double count = parse_count(trimmed.substr(comma + 1), row);
        if (series.values.empty()) {
            series.origin = period;
        } else {
            const MonthPeriod expected = series.period_at(series.values.size());
            if (period == series.period_at(series.values.size() - 1)) {
                throw InputError("duplicate period " + to_string(period));
            }
            if (period != expected) {
                throw InputError("month gap: expected " + to_string(expected) + ", got " +
                                 to_string(period));
            }
        }
        series.values.push_back(count);
    }
    if (series.values.empty()) {
        throw InputError("empty series: no data rows");
    }
    return series;
}

MonthlySeries parse_monthly_csv(const std::string& text) {
    std::istringstream stream(text);
    return parse_monthly_csv(stream);
}

std::string serialize_monthly_csv(const MonthlySeries& series) {
    std::string out = "period,cases\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        out += to_string(series.period_at(i));
        out += ',';
        out += format_count(series.values[i]);
        out += '\n';
    }
    return out;
}

MonthlySeries load_monthly_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open " + path);
    }
    return parse_monthly_csv(file);
}

CumulativeSeries cumulative_from_incident(const MonthlySeries& s, double base) {
    if (base < 0.0) {
        throw InputError("negative cumulative base");
    }
    CumulativeSeries out;
    out.origin = s.origin;
    out.base = base;
    out.values.reserve(s.values.size());
    double total = base;
    for (double v : s.values) {
        total += v;
        out.values.push_back(total);
    }
    return out;
}

MonthlySeries incident_from_cumulative(const CumulativeSeries& c) {
    MonthlySeries out;
    out.origin = c.origin;
    out.values.reserve(c.values.size());
    double previous = c.base;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        const double incident = c.values[i] - previous;
        if (incident < 0.0) {
            throw InputError("cumulative series decreases at index " + std::to_string(i) +
                             " (negative incident)");
        }
        out.values.push_back(incident);
        previous = c.values[i];
    }
    return out;
}

} // namespace narcast
