#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>

#include "streameval/errors.hpp"
#include "streameval/stream_io.hpp"

using namespace streameval;

namespace {

std::string predictions_text(const std::vector<PredictionEvent>& events) {
    std::ostringstream out;
    write_prediction_stream(out, events);
    return out.str();
}

std::string labels_text(const std::vector<LabelEvent>& events) {
    std::ostringstream out;
    write_label_stream(out, events);
    return out.str();
}

}  // namespace

TEST_CASE("two well-formed prediction lines parse") {
    std::istringstream in(
        "{\"id\":\"a\",\"ts\":\"2020-02-01T00:00:00Z\",\"score\":0.25}\n"
        "{\"id\":\"b\",\"ts\":\"2020-02-01T01:00:00Z\",\"score\":0.75,\"subgroup\":\"x\"}\n");
    const auto stream = read_prediction_stream(in);
    REQUIRE(stream.events.size() == 2);
    CHECK(stream.events[0].id == "a");
    CHECK(stream.events[0].score == 0.25);
    CHECK(stream.events[0].subgroup.empty());
    CHECK(stream.events[1].subgroup == "x");
    CHECK(stream.warnings.duplicate_ids == 0);
}

TEST_CASE("score out of range is a parse error with line number") {
    std::istringstream in(
        "{\"id\":\"a\",\"ts\":\"2020-02-01T00:00:00Z\",\"score\":0.5}\n"
        "{\"id\":\"b\",\"ts\":\"2020-02-01T01:00:00Z\",\"score\":1.3}\n");
    try {
        read_prediction_stream(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("score") != std::string::npos);
    }
}

TEST_CASE("malformed json carries its line number") {
    std::istringstream in(
        "{\"id\":\"a\",\"ts\":\"2020-02-01T00:00:00Z\",\"score\":0.5}\n"
        "\n"
        "{oops\n");
    try {
        read_prediction_stream(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("shuffled within tolerance comes out fully sorted") {
    const TimeMs base = parse_rfc3339("2020-02-01T00:00:00Z");
    std::mt19937_64 rng(11);
    std::vector<PredictionEvent> events;
    for (int i = 0; i < 1000; ++i)
        events.push_back({"e" + std::to_string(i), base + i * kSecond, 0.5, ""});
    // Displace each record by up to 5 minutes, keep within a 10 minute tolerance.
    std::vector<PredictionEvent> shuffled = events;
    std::vector<std::pair<TimeMs, std::size_t>> keys;
    for (std::size_t i = 0; i < shuffled.size(); ++i)
        keys.emplace_back(shuffled[i].event_time + static_cast<TimeMs>(rng() % (5 * kMinute)), i);
    std::sort(keys.begin(), keys.end());
    std::vector<PredictionEvent> disk_order;
    for (const auto& [_, idx] : keys) disk_order.push_back(shuffled[idx]);

    std::istringstream in(predictions_text(disk_order));
    const auto stream = read_prediction_stream(in, ReaderOptions{10 * kMinute});
    REQUIRE(stream.events.size() == events.size());

    // Independent oracle: sort the input by time.
    std::vector<PredictionEvent> expected = disk_order;
    std::stable_sort(expected.begin(), expected.end(),
                     [](const auto& a, const auto& b) { return a.event_time < b.event_time; });
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(stream.events[i].event_time == expected[i].event_time);
    CHECK(std::is_sorted(stream.events.begin(), stream.events.end(),
                         [](const auto& a, const auto& b) { return a.event_time < b.event_time; }));
}

TEST_CASE("out of order beyond tolerance raises an ordering error") {
    const TimeMs base = parse_rfc3339("2020-02-01T00:00:00Z");
    std::vector<PredictionEvent> events = {
        {"a", base + 2 * kHour, 0.5, ""},
        {"b", base, 0.5, ""},  // two hours behind, tolerance one hour
    };
    std::istringstream in(predictions_text(events));
    CHECK_THROWS_AS(read_prediction_stream(in, ReaderOptions{kHour}), OrderingError);
}

TEST_CASE("empty label source yields an empty sequence") {
    std::istringstream in("");
    const auto stream = read_label_stream(in);
    CHECK(stream.events.empty());
    CHECK(stream.warnings.duplicate_ids == 0);
}

TEST_CASE("label value outside {0,1} is a parse error") {
    std::istringstream in("{\"id\":\"a\",\"ts\":\"2020-02-01T00:00:00Z\",\"label\":2}\n");
    CHECK_THROWS_AS(read_label_stream(in), ParseError);
}

TEST_CASE("duplicate label ids are dropped first-wins with a counted warning") {
    const TimeMs base = parse_rfc3339("2020-02-01T00:00:00Z");
    std::vector<LabelEvent> labels = {
        {"a", base, 1}, {"b", base + kMinute, 0}, {"a", base + 2 * kMinute, 0}};
    std::istringstream in(labels_text(labels));
    const auto stream = read_label_stream(in);

    // Hash-set oracle for the expected duplicate count.
    std::unordered_set<std::string> ids;
    std::size_t expected_dups = 0;
    for (const auto& l : labels)
        if (!ids.insert(l.id).second) ++expected_dups;

    CHECK(stream.warnings.duplicate_ids == expected_dups);
    REQUIRE(stream.events.size() == 2);
    CHECK(stream.events[0].label == 1);  // first occurrence won
}

TEST_CASE("round trip reproduces random event sequences exactly") {
    std::mt19937_64 rng(23);
    const TimeMs base = parse_rfc3339("2020-02-01T00:00:00Z");
    for (int round = 0; round < 20; ++round) {
        std::vector<PredictionEvent> events;
        TimeMs t = base;
        const int n = 1 + static_cast<int>(rng() % 50);
        for (int i = 0; i < n; ++i) {
            t += static_cast<TimeMs>(rng() % kHour);
            const double score = static_cast<double>(rng() % 10001) / 10000.0;
            const std::string subgroup = (rng() % 3 == 0) ? "" : "g" + std::to_string(rng() % 4);
            events.push_back({"id" + std::to_string(i), t, score, subgroup});
        }
        std::istringstream in(predictions_text(events));
        const auto back = read_prediction_stream(in);
        REQUIRE(back.events.size() == events.size());
        for (std::size_t i = 0; i < events.size(); ++i) CHECK(back.events[i] == events[i]);
    }
}

TEST_CASE("label round trip is exact") {
    const TimeMs base = parse_rfc3339("2020-02-01T00:00:00Z");
    std::vector<LabelEvent> labels = {{"a", base, 1}, {"b", base + 123, 0}};
    std::istringstream in(labels_text(labels));
    const auto back = read_label_stream(in);
    REQUIRE(back.events.size() == 2);
    CHECK(back.events[0] == labels[0]);
    CHECK(back.events[1] == labels[1]);
}

TEST_CASE("missing required fields are parse errors") {
    std::istringstream no_score("{\"id\":\"a\",\"ts\":\"2020-02-01T00:00:00Z\"}\n");
    CHECK_THROWS_AS(read_prediction_stream(no_score), ParseError);
    std::istringstream no_id("{\"ts\":\"2020-02-01T00:00:00Z\",\"label\":1}\n");
    CHECK_THROWS_AS(read_label_stream(no_id), ParseError);
    std::istringstream bad_ts("{\"id\":\"a\",\"ts\":\"yesterday\",\"label\":1}\n");
    CHECK_THROWS_AS(read_label_stream(bad_ts), ParseError);
}
