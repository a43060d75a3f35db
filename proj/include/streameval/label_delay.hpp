#pragma once

#include <cstddef>
#include <cstdint>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "streameval/events.hpp"
#include "streameval/timestamps.hpp"

namespace streameval {

// Turns a fully-labeled stream into a delayed, incomplete one: each label survives
// with probability labeled_fraction and arrives after an exponential delay.
struct DelayConfig {
    double mean_delay_days = 7.0;   // exponential scale; 0 is the no-delay limit
    double labeled_fraction = 0.1;  // in (0, 1]
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

// Inverse-CDF draw: d = -mean * ln(1 - u), u in [0, 1).
double sample_delay_days(double u, double mean_delay_days);

// Input labels must carry the prediction's original event_time as their timestamp.
// Kept labels get available_time = original + delay; output is re-sorted by
// available_time (stable, so the zero-delay limit preserves input order).
// Deterministic for a given seed.
std::vector<LabelEvent> simulate_label_delay(std::span<const LabelEvent> true_labels,
                                             const DelayConfig& config);

// Incremental event-time join between a prediction stream (fed in event_time order)
// and a label stream (fed in available_time order). An example completes once both
// sides are known; it becomes visible when the watermark passes
// max(event_time, available_time). First label per id wins; later ones count as
// duplicates. Labels with no prediction accumulate as unmatched (orphans at end).
class EventJoiner {
public:
    void add_prediction(PredictionEvent prediction);
    void add_label(LabelEvent label);

    // Completed examples whose completion time is <= watermark and that have not
    // been handed out yet, ordered by (completion time, completion order).
    // Feed every record with time <= watermark before calling this.
    std::vector<JoinedExample> take_ready(TimeMs watermark);

    // Predictions seen so far whose label has not arrived.
    std::size_t unlabeled_count() const { return predictions_seen_ - joined_count_; }
    // Labels whose id has no prediction so far; real orphans are only known at end.
    std::size_t unmatched_label_count() const { return labels_by_id_.size(); }
    std::size_t duplicate_label_count() const { return duplicate_labels_; }
    std::size_t joined_count() const { return joined_count_; }
    std::size_t predictions_seen() const { return predictions_seen_; }

private:
    struct Completed {
        TimeMs completion_time;
        std::uint64_t seq;
        JoinedExample example;
    };
    struct CompletedAfter {
        bool operator()(const Completed& a, const Completed& b) const {
            return a.completion_time != b.completion_time ? a.completion_time > b.completion_time
                                                          : a.seq > b.seq;
        }
    };

    std::unordered_map<std::string, PredictionEvent> pending_predictions_;
    std::unordered_map<std::string, LabelEvent> labels_by_id_;  // arrived, prediction unseen
    std::unordered_set<std::string> joined_ids_;
    std::priority_queue<Completed, std::vector<Completed>, CompletedAfter> completed_;
    std::uint64_t completion_seq_ = 0;
    std::size_t predictions_seen_ = 0;
    std::size_t joined_count_ = 0;
    std::size_t duplicate_labels_ = 0;

    void complete(const PredictionEvent& prediction, const LabelEvent& label);
};

struct JoinResult {
    std::vector<JoinedExample> observed;  // event_time <= t and available_time <= t
    std::size_t unlabeled_count = 0;      // predictions still awaiting labels at t
    std::size_t orphan_labels = 0;        // labels without any matching prediction
};

// Snapshot join at evaluation time t. Inputs ordered as produced by the readers.
JoinResult join_at(TimeMs t, std::span<const PredictionEvent> predictions,
                   std::span<const LabelEvent> labels);

}  // namespace streameval
