#pragma once

#include <string>

#include "streameval/timestamps.hpp"

namespace streameval {

// One scored inference. subgroup is an optional categorical key; empty means absent.
struct PredictionEvent {
    std::string id;
    TimeMs event_time = 0;
    double score = 0.0;  // probability in [0, 1]
    std::string subgroup;

    bool operator==(const PredictionEvent&) const = default;
};

// Ground truth for a prediction id. available_time is when the label became visible,
// not when the prediction was made.
struct LabelEvent {
    std::string id;
    TimeMs available_time = 0;
    int label = 0;  // 0 or 1

    bool operator==(const LabelEvent&) const = default;
};

// A prediction matched with its (unique) label.
struct JoinedExample {
    std::string id;
    TimeMs event_time = 0;
    double score = 0.0;
    std::string subgroup;
    int label = 0;
    TimeMs available_time = 0;

    bool operator==(const JoinedExample&) const = default;
};

inline JoinedExample join_pair(const PredictionEvent& p, const LabelEvent& l) {
    return JoinedExample{p.id, p.event_time, p.score, p.subgroup, l.label, l.available_time};
}

}  // namespace streameval
