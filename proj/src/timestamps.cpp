#include "streameval/timestamps.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "streameval/errors.hpp"

namespace streameval {
namespace {

// Howard Hinnant's proleptic Gregorian conversions.
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
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(int y, unsigned m) {
    static constexpr std::array<unsigned, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                         31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

int parse_fixed_digits(std::string_view s, std::size_t pos, std::size_t count) {
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = pos + i < s.size() ? s[pos + i] : '\0';
        if (c < '0' || c > '9') throw ParseError("bad timestamp: expected digit in '" + std::string(s) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

TimeMs parse_rfc3339(std::string_view text) {
    // YYYY-MM-DDThh:mm:ss[.frac](Z|±hh:mm)
    if (text.size() < 20) throw ParseError("bad timestamp '" + std::string(text) + "'");
    auto expect = [&](std::size_t pos, char c) {
        if (text[pos] != c) throw ParseError("bad timestamp '" + std::string(text) + "'");
    };
    const int year = parse_fixed_digits(text, 0, 4);
    expect(4, '-');
    const int month = parse_fixed_digits(text, 5, 2);
    expect(7, '-');
    const int day = parse_fixed_digits(text, 8, 2);
    if (text[10] != 'T' && text[10] != 't' && text[10] != ' ')
        throw ParseError("bad timestamp '" + std::string(text) + "'");
    const int hour = parse_fixed_digits(text, 11, 2);
    expect(13, ':');
    const int minute = parse_fixed_digits(text, 14, 2);
    expect(16, ':');
    const int second = parse_fixed_digits(text, 17, 2);

    if (month < 1 || month > 12 || day < 1 ||
        static_cast<unsigned>(day) > days_in_month(year, static_cast<unsigned>(month)) ||
        hour > 23 || minute > 59 || second > 59)
        throw ParseError("timestamp field out of range in '" + std::string(text) + "'");

    std::size_t pos = 19;
    int millis = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (digits < 3) millis = millis * 10 + (text[pos] - '0');
            ++digits;
            ++pos;
        }
        if (digits == 0) throw ParseError("bad timestamp fraction in '" + std::string(text) + "'");
        for (; digits < 3; ++digits) millis *= 10;
    }

    if (pos >= text.size()) throw ParseError("missing timezone in '" + std::string(text) + "'");
    std::int64_t offset_ms = 0;
    const char tz = text[pos];
    if (tz == 'Z' || tz == 'z') {
        ++pos;
    } else if (tz == '+' || tz == '-') {
        const int oh = parse_fixed_digits(text, pos + 1, 2);
        expect(pos + 3, ':');
        const int om = parse_fixed_digits(text, pos + 4, 2);
        if (oh > 23 || om > 59) throw ParseError("bad timezone offset in '" + std::string(text) + "'");
        offset_ms = (static_cast<std::int64_t>(oh) * kHour + om * kMinute) * (tz == '+' ? 1 : -1);
        pos += 6;
    } else {
        throw ParseError("bad timezone in '" + std::string(text) + "'");
    }
    if (pos != text.size()) throw ParseError("trailing characters in timestamp '" + std::string(text) + "'");

    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
    const std::int64_t local_ms =
        days * kDay + hour * kHour + minute * kMinute + second * kSecond + millis;
    return local_ms - offset_ms;
}

std::string format_rfc3339(TimeMs t) {
    const std::int64_t days = floordiv(t, kDay);
    std::int64_t rem = t - days * kDay;
    int year = 0;
    unsigned month = 0, day = 0;
    civil_from_days(days, year, month, day);
    const int hour = static_cast<int>(rem / kHour);
    rem %= kHour;
    const int minute = static_cast<int>(rem / kMinute);
    rem %= kMinute;
    const int second = static_cast<int>(rem / kSecond);
    const int millis = static_cast<int>(rem % kSecond);

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", year, month, day,
                  hour, minute, second, millis);
    return buf;
}

DurationMs parse_duration(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == 0) throw ParseError("bad duration '" + std::string(text) + "'");
    std::int64_t magnitude = 0;
    const auto rc = std::from_chars(text.data(), text.data() + i, magnitude);
    if (rc.ec != std::errc{}) throw ParseError("bad duration '" + std::string(text) + "'");
    const std::string_view unit = text.substr(i);
    DurationMs scale = 0;
    if (unit == "ms") scale = kMillisecond;
    else if (unit == "s") scale = kSecond;
    else if (unit == "m") scale = kMinute;
    else if (unit == "h") scale = kHour;
    else if (unit == "d") scale = kDay;
    else if (unit == "w") scale = 7 * kDay;
    else throw ParseError("bad duration unit in '" + std::string(text) + "'");
    if (magnitude <= 0) throw ParseError("duration must be positive: '" + std::string(text) + "'");
    return magnitude * scale;
}

std::string format_duration(DurationMs d) {
    struct Unit { DurationMs scale; const char* suffix; };
    static constexpr Unit units[] = {{kDay, "d"},    {kHour, "h"},   {kMinute, "m"},
                                     {kSecond, "s"}, {kMillisecond, "ms"}};
    for (const auto& u : units) {
        if (d % u.scale == 0) return std::to_string(d / u.scale) + u.suffix;
    }
    return std::to_string(d) + "ms";
}

}  // namespace streameval
