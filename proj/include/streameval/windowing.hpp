#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "streameval/events.hpp"
#include "streameval/timestamps.hpp"

namespace streameval {

enum class WindowKind { cumulative, sliding_duration, sliding_count };

const char* to_string(WindowKind kind);

// A window definition plus the cadence at which it is evaluated.
struct WindowSpec {
    WindowKind kind = WindowKind::sliding_duration;
    DurationMs duration = 7 * kDay;  // sliding_duration only
    std::size_t count = 0;           // sliding_count only
    DurationMs cadence = kDay;

    static WindowSpec cumulative(DurationMs cadence = kDay);
    static WindowSpec sliding_duration(DurationMs duration, DurationMs cadence = kDay);
    static WindowSpec sliding_count(std::size_t count, DurationMs cadence = kDay);

    // Throws ConfigError when sizes or cadence are non-positive.
    void validate() const;

    // "7d" / member count / "" (cumulative), as it appears in reports.
    std::string size_text() const;
};

// Evaluation grid anchored at `start`: start, start+cadence, ... through end inclusive.
// Requires start <= end and a valid spec.
std::vector<TimeMs> evaluation_times(TimeMs start, TimeMs end, const WindowSpec& spec);

// Maintains the member set of one window incrementally. Members are kept ordered by
// (event_time, arrival), so eviction always trims the oldest end.
//
// Membership at evaluation time t:
//   cumulative        all examples with event_time <= t
//   sliding_duration  event_time in (t - d, t]
//   sliding_count     the n most recent examples by event_time at or before t
//
// Examples may arrive with event_time far in the past (late labels); they are
// inserted in order and evicted immediately if already expired.
class WindowAccumulator {
public:
    explicit WindowAccumulator(WindowSpec spec);

    // Moves the window end to t and folds in newly observed examples.
    // Every added example must satisfy event_time <= t; t must not regress.
    void advance(std::span<const JoinedExample> added, TimeMs t);

    const std::deque<JoinedExample>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    TimeMs window_end() const { return window_end_; }
    const WindowSpec& spec() const { return spec_; }

private:
    void insert_sorted(const JoinedExample& example);
    void evict(TimeMs t);

    WindowSpec spec_;
    std::deque<JoinedExample> members_;
    TimeMs window_end_ = 0;
    bool advanced_ = false;
};

}  // namespace streameval
