#include "streameval/windowing.hpp"

#include <algorithm>
#include <stdexcept>

#include "streameval/errors.hpp"

namespace streameval {

const char* to_string(WindowKind kind) {
    switch (kind) {
        case WindowKind::cumulative: return "cumulative";
        case WindowKind::sliding_duration: return "sliding_duration";
        case WindowKind::sliding_count: return "sliding_count";
    }
    return "?";
}

WindowSpec WindowSpec::cumulative(DurationMs cadence) {
    return WindowSpec{WindowKind::cumulative, 0, 0, cadence};
}

WindowSpec WindowSpec::sliding_duration(DurationMs duration, DurationMs cadence) {
    return WindowSpec{WindowKind::sliding_duration, duration, 0, cadence};
}

WindowSpec WindowSpec::sliding_count(std::size_t count, DurationMs cadence) {
    return WindowSpec{WindowKind::sliding_count, 0, count, cadence};
}

void WindowSpec::validate() const {
    if (cadence <= 0) throw ConfigError("window cadence must be positive");
    if (kind == WindowKind::sliding_duration && duration <= 0)
        throw ConfigError("sliding_duration size must be positive");
    if (kind == WindowKind::sliding_count && count < 1)
        throw ConfigError("sliding_count size must be >= 1");
}

std::string WindowSpec::size_text() const {
    switch (kind) {
        case WindowKind::cumulative: return "";
        case WindowKind::sliding_duration: return format_duration(duration);
        case WindowKind::sliding_count: return std::to_string(count);
    }
    return "";
}

std::vector<TimeMs> evaluation_times(TimeMs start, TimeMs end, const WindowSpec& spec) {
    spec.validate();
    if (start > end) throw std::invalid_argument("evaluation_times: start > end");
    std::vector<TimeMs> times;
    for (TimeMs t = start; t <= end; t += spec.cadence) times.push_back(t);
    return times;
}

WindowAccumulator::WindowAccumulator(WindowSpec spec) : spec_(spec) {
    spec_.validate();
}

void WindowAccumulator::advance(std::span<const JoinedExample> added, TimeMs t) {
    if (advanced_ && t < window_end_)
        throw std::invalid_argument("WindowAccumulator::advance: time regression");
    for (const auto& example : added) {
        if (example.event_time > t)
            throw std::invalid_argument("WindowAccumulator::advance: example from the future");
        insert_sorted(example);
    }
    window_end_ = t;
    advanced_ = true;
    evict(t);
}

void WindowAccumulator::insert_sorted(const JoinedExample& example) {
    // upper_bound keeps equal event_times in arrival order.
    auto pos = std::upper_bound(
        members_.begin(), members_.end(), example.event_time,
        [](TimeMs t, const JoinedExample& m) { return t < m.event_time; });
    members_.insert(pos, example);
}

void WindowAccumulator::evict(TimeMs t) {
    switch (spec_.kind) {
        case WindowKind::cumulative:
            break;
        case WindowKind::sliding_duration: {
            const TimeMs lower = t - spec_.duration;  // exclusive bound
            while (!members_.empty() && members_.front().event_time <= lower)
                members_.pop_front();
            break;
        }
        case WindowKind::sliding_count:
            while (members_.size() > spec_.count) members_.pop_front();
            break;
    }
}

}  // namespace streameval
