#include "wcf/time.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>

#include "wcf/errors.hpp"

namespace wcf {

namespace {

// Civil-calendar conversions (proleptic Gregorian), Howard Hinnant's
// algorithms. Needed because libstdc++ 11 lacks chrono calendar parsing.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

unsigned days_in_month(int y, unsigned m) {
    static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30,
                                         31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return kDays[m - 1];
}

bool parse_fixed_uint(std::string_view text, std::size_t pos, std::size_t len,
                      unsigned& out) {
    if (pos + len > text.size()) return false;
    unsigned value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') return false;
        value = value * 10 + static_cast<unsigned>(c - '0');
    }
    out = value;
    return true;
}

}  // namespace

TimePoint parse_iso8601_utc(std::string_view text) {
    const auto fail = [&](const char* why) -> TimePoint {
        throw ParseError("bad timestamp '" + std::string(text) + "': " + why);
    };

    unsigned year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    if (!parse_fixed_uint(text, 0, 4, year) || text.size() < 16 ||
        text[4] != '-' || !parse_fixed_uint(text, 5, 2, month) ||
        text[7] != '-' || !parse_fixed_uint(text, 8, 2, day)) {
        fail("expected YYYY-MM-DDTHH:MM[:SS][Z]");
    }
    if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') {
        fail("expected 'T' or ' ' date-time separator");
    }
    if (!parse_fixed_uint(text, 11, 2, hour) || text[13] != ':' ||
        !parse_fixed_uint(text, 14, 2, minute)) {
        fail("expected HH:MM");
    }
    std::size_t pos = 16;
    if (pos < text.size() && text[pos] == ':') {
        if (!parse_fixed_uint(text, pos + 1, 2, second)) fail("expected seconds");
        pos += 3;
    }
    if (pos < text.size()) {
        const std::string_view tail = text.substr(pos);
        if (!(tail == "Z" || tail == "z" || tail == "+00:00" || tail == "+0000")) {
            fail("only UTC timestamps are accepted");
        }
    }
    if (month < 1 || month > 12) fail("month out of range");
    if (day < 1 || day > days_in_month(static_cast<int>(year), month)) {
        fail("day out of range");
    }
    if (hour > 23 || minute > 59 || second > 60) fail("time out of range");

    const std::int64_t days =
        days_from_civil(static_cast<int>(year), month, day);
    return TimePoint{std::chrono::seconds{days * 86400 + hour * 3600 +
                                          minute * 60 + second}};
}

std::string format_iso8601_utc(TimePoint t) {
    const std::int64_t total = t.time_since_epoch().count();
    std::int64_t days = total / 86400;
    std::int64_t rem = total % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    const auto two = [](std::string& s, std::int64_t v) {
        s += static_cast<char>('0' + v / 10);
        s += static_cast<char>('0' + v % 10);
    };
    std::string s;
    s.reserve(20);
    s += std::to_string(y);
    while (s.size() < 4) s.insert(s.begin(), '0');
    s += '-';
    two(s, m);
    s += '-';
    two(s, d);
    s += 'T';
    two(s, rem / 3600);
    s += ':';
    two(s, (rem % 3600) / 60);
    s += ':';
    two(s, rem % 60);
    s += 'Z';
    return s;
}

bool hour_aligned(TimePoint t) {
    return t.time_since_epoch().count() % 3600 == 0;
}

int hour_of_day_utc(TimePoint t) {
    std::int64_t rem = t.time_since_epoch().count() % 86400;
    if (rem < 0) rem += 86400;
    return static_cast<int>(rem / 3600);
}

TimePoint month_start(TimePoint t) {
    std::int64_t days = t.time_since_epoch().count() / 86400;
    if (t.time_since_epoch().count() % 86400 < 0) days -= 1;
    int y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    return TimePoint{std::chrono::seconds{days_from_civil(y, m, 1) * 86400}};
}

TimePoint next_month_start(TimePoint t) {
    std::int64_t days = t.time_since_epoch().count() / 86400;
    if (t.time_since_epoch().count() % 86400 < 0) days -= 1;
    int y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    if (++m > 12) {
        m = 1;
        ++y;
    }
    return TimePoint{std::chrono::seconds{days_from_civil(y, m, 1) * 86400}};
}

}  // namespace wcf
