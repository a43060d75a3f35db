#include "doctest.h"

#include <random>

#include "streameval/errors.hpp"
#include "streameval/timestamps.hpp"

using namespace streameval;

TEST_CASE("rfc3339 parse and canonical format") {
    CHECK(parse_rfc3339("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_rfc3339("1970-01-01T00:00:00.250Z") == 250);
    CHECK(parse_rfc3339("2020-02-01T00:00:00Z") == 1580515200000);
    CHECK(format_rfc3339(1580515200000) == "2020-02-01T00:00:00.000Z");

    // Offsets convert to UTC.
    CHECK(parse_rfc3339("2020-02-01T05:30:00+05:30") == parse_rfc3339("2020-02-01T00:00:00Z"));
    CHECK(parse_rfc3339("2020-01-31T19:00:00-05:00") == parse_rfc3339("2020-02-01T00:00:00Z"));

    // Leap day and sub-millisecond truncation.
    CHECK(parse_rfc3339("2020-02-29T12:00:00Z") ==
          parse_rfc3339("2020-02-28T12:00:00Z") + kDay);
    CHECK(parse_rfc3339("2020-02-01T00:00:00.1234567Z") ==
          parse_rfc3339("2020-02-01T00:00:00.123Z"));
}

TEST_CASE("rfc3339 rejects malformed text") {
    CHECK_THROWS_AS(parse_rfc3339("2020-13-01T00:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_rfc3339("2021-02-29T00:00:00Z"), ParseError);  // not a leap year
    CHECK_THROWS_AS(parse_rfc3339("2020-02-01T24:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_rfc3339("2020-02-01T00:00:00"), ParseError);  // no timezone
    CHECK_THROWS_AS(parse_rfc3339("2020-02-01T00:00:00Zjunk"), ParseError);
    CHECK_THROWS_AS(parse_rfc3339("not a time"), ParseError);
}

TEST_CASE("rfc3339 round trip on random timestamps") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        // ~1900 .. ~2100
        const TimeMs t = static_cast<TimeMs>(rng() % 6311520000000ull) - 2208988800000ll;
        CHECK(parse_rfc3339(format_rfc3339(t)) == t);
    }
}

TEST_CASE("duration parse and format") {
    CHECK(parse_duration("7d") == 7 * kDay);
    CHECK(parse_duration("1d") == kDay);
    CHECK(parse_duration("36h") == 36 * kHour);
    CHECK(parse_duration("90s") == 90 * kSecond);
    CHECK(parse_duration("250ms") == 250);
    CHECK(parse_duration("2w") == 14 * kDay);

    CHECK(format_duration(7 * kDay) == "7d");
    CHECK(format_duration(36 * kHour) == "36h");
    CHECK(format_duration(90 * kSecond) == "90s");
    CHECK(format_duration(parse_duration("15m")) == "15m");

    CHECK_THROWS_AS(parse_duration("0d"), ParseError);
    CHECK_THROWS_AS(parse_duration("-1d"), ParseError);
    CHECK_THROWS_AS(parse_duration("7x"), ParseError);
    CHECK_THROWS_AS(parse_duration("d"), ParseError);
}
