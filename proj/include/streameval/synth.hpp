#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streameval/events.hpp"
#include "streameval/timestamps.hpp"

namespace streameval {

// Active parameters for one subgroup of the generated population.
struct SubgroupSpec {
    std::string key;
    double mix_weight = 0.0;  // all weights sum to 1
    double p_positive = 0.5;  // P(label = 1)
    double p_correct = 0.5;   // P(round(score) = label)
};

// Partial parameter overrides applied to named subgroups at a scheduled time.
struct ShiftSpec {
    TimeMs at = 0;
    struct Override {
        std::string key;
        std::optional<double> mix_weight;
        std::optional<double> p_positive;
        std::optional<double> p_correct;
    };
    std::vector<Override> overrides;
};

// A deterministic stand-in for a production trace: prediction/label pairs with a
// configurable subgroup mix, per-subgroup correctness, and scheduled regime shifts.
struct ScenarioConfig {
    TimeMs start = 0;
    TimeMs end = 0;  // exclusive
    int events_per_day = 1000;
    std::vector<SubgroupSpec> subgroups;
    std::vector<ShiftSpec> shifts;
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

struct GeneratedPair {
    PredictionEvent prediction;
    LabelEvent label;  // ts = prediction event_time (ground truth known immediately)
};

struct GeneratedStream {
    std::vector<PredictionEvent> predictions;
    std::vector<LabelEvent> labels;
};

// Events are evenly spread within each day; the label is drawn from the active
// p_positive of the event's subgroup and the score lands in the half-interval that
// agrees with the label with probability p_correct (uniform within the half).
// Identical seeds produce byte-identical streams.
GeneratedStream generate(const ScenarioConfig& config);

// Canned 150-day scenario shaped like a production trace with an abrupt mid-stream
// regime change: at day 45 the positive-class share collapses (class-balance shift)
// and one subgroup's correctness drops (concept shift).
ScenarioConfig taxi_like_scenario();

// 2020-03-17T00:00:00Z, day 45 of the canned scenario.
inline constexpr TimeMs kTaxiScenarioShift = 1584403200000;

// JSON scenario documents, used by the CLI.
ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& config);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace streameval
