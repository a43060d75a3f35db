#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "streameval/errors.hpp"
#include "streameval/windowing.hpp"

using namespace streameval;

namespace {

const TimeMs kFeb1 = parse_rfc3339("2020-02-01T00:00:00Z");

JoinedExample example_at(TimeMs t, int label = 0) {
    return JoinedExample{"id" + std::to_string(t), t, 0.5, "", label, t};
}

// From-scratch membership per the window definition; ties resolved by input order,
// matching the accumulator's arrival order.
std::vector<TimeMs> oracle_members(const std::vector<JoinedExample>& arrived_by_t,
                                   const WindowSpec& spec, TimeMs t) {
    std::vector<JoinedExample> sorted = arrived_by_t;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.event_time < b.event_time; });
    std::vector<TimeMs> out;
    switch (spec.kind) {
        case WindowKind::cumulative:
            for (const auto& ex : sorted) out.push_back(ex.event_time);
            break;
        case WindowKind::sliding_duration:
            for (const auto& ex : sorted)
                if (ex.event_time > t - spec.duration) out.push_back(ex.event_time);
            break;
        case WindowKind::sliding_count: {
            const std::size_t n = std::min(spec.count, sorted.size());
            for (std::size_t i = sorted.size() - n; i < sorted.size(); ++i)
                out.push_back(sorted[i].event_time);
            break;
        }
    }
    return out;
}

std::vector<TimeMs> member_times(const WindowAccumulator& acc) {
    std::vector<TimeMs> out;
    for (const auto& ex : acc.members()) out.push_back(ex.event_time);
    return out;
}

}  // namespace

TEST_CASE("evaluation grid is an arithmetic sequence through end") {
    const WindowSpec daily = WindowSpec::cumulative(kDay);
    const auto feb1_to_3 = evaluation_times(kFeb1, kFeb1 + 2 * kDay, daily);
    REQUIRE(feb1_to_3.size() == 3);
    CHECK(feb1_to_3[0] == kFeb1);
    CHECK(feb1_to_3[2] == kFeb1 + 2 * kDay);

    // Weekly cadence over a 28-day span: hand enumeration gives day 0,7,14,21,28.
    const auto weekly = evaluation_times(kFeb1, kFeb1 + 28 * kDay, WindowSpec::cumulative(7 * kDay));
    REQUIRE(weekly.size() == 5);
    CHECK(weekly.back() == kFeb1 + 28 * kDay);

    const auto single = evaluation_times(kFeb1, kFeb1, daily);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == kFeb1);

    // End between boundaries stops at the last boundary.
    const auto ragged = evaluation_times(kFeb1, kFeb1 + 2 * kDay + kHour, daily);
    CHECK(ragged.size() == 3);
}

TEST_CASE("evaluation grid rejects invalid specs") {
    WindowSpec bad = WindowSpec::cumulative(0);
    CHECK_THROWS_AS(evaluation_times(kFeb1, kFeb1 + kDay, bad), ConfigError);
    CHECK_THROWS_AS(evaluation_times(kFeb1 + kDay, kFeb1, WindowSpec::cumulative(kDay)),
                    std::invalid_argument);
    CHECK_THROWS_AS(WindowSpec::sliding_duration(0, kDay).validate(), ConfigError);
    CHECK_THROWS_AS(WindowSpec::sliding_count(0, kDay).validate(), ConfigError);
}

TEST_CASE("sliding duration keeps exactly the half-open interval") {
    WindowAccumulator acc(WindowSpec::sliding_duration(7 * kDay, kDay));
    std::vector<JoinedExample> days;
    for (int d = 1; d <= 10; ++d) days.push_back(example_at(kFeb1 + d * kDay));
    acc.advance(days, kFeb1 + 10 * kDay);

    // Brute-force filter oracle: (t - 7d, t] at t = day 10 keeps days 4..10;
    // day 3 sits exactly on the excluded lower bound.
    const auto expected = oracle_members(days, acc.spec(), kFeb1 + 10 * kDay);
    REQUIRE(expected.size() == 7);
    CHECK(expected.front() == kFeb1 + 4 * kDay);
    CHECK(member_times(acc) == expected);
}

TEST_CASE("cumulative keeps everything and sliding_count 1 keeps the latest") {
    WindowAccumulator cumulative(WindowSpec::cumulative(kDay));
    WindowAccumulator latest(WindowSpec::sliding_count(1, kDay));
    std::vector<JoinedExample> batch;
    for (int d = 0; d < 5; ++d) batch.push_back(example_at(kFeb1 + d * kDay));
    cumulative.advance(batch, kFeb1 + 5 * kDay);
    latest.advance(batch, kFeb1 + 5 * kDay);
    CHECK(cumulative.size() == 5);
    REQUIRE(latest.size() == 1);
    CHECK(latest.members().front().event_time == kFeb1 + 4 * kDay);
}

TEST_CASE("advance rejects time regression and future examples") {
    WindowAccumulator acc(WindowSpec::cumulative(kDay));
    acc.advance({}, kFeb1 + kDay);
    CHECK_THROWS_AS(acc.advance({}, kFeb1), std::invalid_argument);
    const std::vector<JoinedExample> future = {example_at(kFeb1 + 10 * kDay)};
    CHECK_THROWS_AS(acc.advance(future, kFeb1 + 2 * kDay), std::invalid_argument);
}

TEST_CASE("incremental membership equals a from-scratch filter on random streams") {
    std::mt19937_64 rng(101);
    for (int round = 0; round < 20; ++round) {
        const int n = 200 + static_cast<int>(rng() % 800);
        std::vector<JoinedExample> stream;
        TimeMs t = kFeb1;
        for (int i = 0; i < n; ++i) {
            t += static_cast<TimeMs>(rng() % (2 * kHour));
            stream.push_back(example_at(t));
        }
        const TimeMs end = t;

        const std::vector<WindowSpec> specs = {
            WindowSpec::cumulative(6 * kHour),
            WindowSpec::sliding_duration((1 + rng() % 5) * kDay, 6 * kHour),
            WindowSpec::sliding_count(1 + rng() % 100, 6 * kHour),
        };
        for (const auto& spec : specs) {
            WindowAccumulator acc(spec);
            std::size_t cursor = 0;
            std::vector<JoinedExample> arrived;
            for (const TimeMs tick : evaluation_times(kFeb1, end, spec)) {
                std::vector<JoinedExample> fresh;
                while (cursor < stream.size() && stream[cursor].event_time <= tick) {
                    fresh.push_back(stream[cursor]);
                    arrived.push_back(stream[cursor]);
                    ++cursor;
                }
                acc.advance(fresh, tick);
                CHECK(member_times(acc) == oracle_members(arrived, spec, tick));
            }
        }
    }
}

TEST_CASE("late arrivals insert in event-time order and expired ones evict") {
    WindowAccumulator acc(WindowSpec::sliding_duration(7 * kDay, kDay));
    acc.advance({{example_at(kFeb1 + 8 * kDay)}}, kFeb1 + 9 * kDay);
    // A label for a day-5 event arrives at day 10: still in (day 3, day 10].
    acc.advance({{example_at(kFeb1 + 5 * kDay)}}, kFeb1 + 10 * kDay);
    CHECK(member_times(acc) == std::vector<TimeMs>{kFeb1 + 5 * kDay, kFeb1 + 8 * kDay});
    // A day-2 event joining at day 10 is already expired and never becomes a member.
    acc.advance({{example_at(kFeb1 + 2 * kDay)}}, kFeb1 + 10 * kDay);
    CHECK(acc.size() == 2);
}

TEST_CASE("window nesting and cumulative-as-infinite-duration") {
    std::mt19937_64 rng(202);
    std::vector<JoinedExample> stream;
    TimeMs t = kFeb1;
    for (int i = 0; i < 500; ++i) {
        t += static_cast<TimeMs>(rng() % (3 * kHour));
        stream.push_back(example_at(t));
    }
    const TimeMs end = t;
    const WindowSpec narrow = WindowSpec::sliding_duration(2 * kDay, kDay);
    const WindowSpec wide = WindowSpec::sliding_duration(9 * kDay, kDay);
    const WindowSpec infinite = WindowSpec::sliding_duration(365 * kDay, kDay);
    const WindowSpec cumulative = WindowSpec::cumulative(kDay);

    WindowAccumulator a_narrow(narrow), a_wide(wide), a_inf(infinite), a_cum(cumulative);
    std::size_t cursor = 0;
    for (const TimeMs tick : evaluation_times(kFeb1, end, cumulative)) {
        std::vector<JoinedExample> fresh;
        while (cursor < stream.size() && stream[cursor].event_time <= tick)
            fresh.push_back(stream[cursor++]);
        a_narrow.advance(fresh, tick);
        a_wide.advance(fresh, tick);
        a_inf.advance(fresh, tick);
        a_cum.advance(fresh, tick);

        const auto narrow_times = member_times(a_narrow);
        const auto wide_times = member_times(a_wide);
        const auto cum_times = member_times(a_cum);
        CHECK(std::includes(wide_times.begin(), wide_times.end(), narrow_times.begin(),
                            narrow_times.end()));
        CHECK(std::includes(cum_times.begin(), cum_times.end(), wide_times.begin(),
                            wide_times.end()));
        // Duration no shorter than the whole span behaves exactly like cumulative.
        CHECK(member_times(a_inf) == cum_times);
    }
}
