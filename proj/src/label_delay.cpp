#include "streameval/label_delay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "streameval/errors.hpp"
#include "streameval/random.hpp"

namespace streameval {

void DelayConfig::validate() const {
    if (!(mean_delay_days >= 0.0) || !std::isfinite(mean_delay_days))
        throw ConfigError("delay.mean_days must be a finite nonnegative number");
    if (!(labeled_fraction > 0.0 && labeled_fraction <= 1.0))
        throw ConfigError("delay.labeled_fraction must be in (0, 1]");
}

double sample_delay_days(double u, double mean_delay_days) {
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("sample_delay_days: u not in [0,1)");
    return -mean_delay_days * std::log1p(-u);
}

std::vector<LabelEvent> simulate_label_delay(std::span<const LabelEvent> true_labels,
                                             const DelayConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::vector<LabelEvent> delayed;
    delayed.reserve(static_cast<std::size_t>(
        static_cast<double>(true_labels.size()) * config.labeled_fraction) + 16);
    for (const auto& label : true_labels) {
        if (!bernoulli(rng, config.labeled_fraction)) continue;
        const double delay_days = sample_delay_days(unit_double(rng), config.mean_delay_days);
        LabelEvent out = label;
        out.available_time = label.available_time + days_to_ms(delay_days);
        delayed.push_back(std::move(out));
    }
    // Stable, so the zero-delay limit reproduces the input order exactly.
    std::stable_sort(delayed.begin(), delayed.end(),
                     [](const LabelEvent& a, const LabelEvent& b) {
                         return a.available_time < b.available_time;
                     });
    return delayed;
}

void EventJoiner::add_prediction(PredictionEvent prediction) {
    ++predictions_seen_;
    const auto label_it = labels_by_id_.find(prediction.id);
    if (label_it != labels_by_id_.end()) {
        complete(prediction, label_it->second);
        labels_by_id_.erase(label_it);
        return;
    }
    pending_predictions_.emplace(prediction.id, std::move(prediction));
}

void EventJoiner::add_label(LabelEvent label) {
    if (joined_ids_.count(label.id) || labels_by_id_.count(label.id)) {
        ++duplicate_labels_;
        return;
    }
    const auto pred_it = pending_predictions_.find(label.id);
    if (pred_it != pending_predictions_.end()) {
        complete(pred_it->second, label);
        pending_predictions_.erase(pred_it);
        return;
    }
    labels_by_id_.emplace(label.id, std::move(label));
}

void EventJoiner::complete(const PredictionEvent& prediction, const LabelEvent& label) {
    Completed entry;
    entry.completion_time = std::max(prediction.event_time, label.available_time);
    entry.seq = completion_seq_++;
    entry.example = join_pair(prediction, label);
    completed_.push(std::move(entry));
    joined_ids_.insert(prediction.id);
    ++joined_count_;
}

std::vector<JoinedExample> EventJoiner::take_ready(TimeMs watermark) {
    std::vector<JoinedExample> out;
    while (!completed_.empty() && completed_.top().completion_time <= watermark) {
        out.push_back(std::move(const_cast<Completed&>(completed_.top()).example));
        completed_.pop();
    }
    return out;
}

JoinResult join_at(TimeMs t, std::span<const PredictionEvent> predictions,
                   std::span<const LabelEvent> labels) {
    EventJoiner joiner;
    for (const auto& p : predictions) {
        if (p.event_time > t) break;  // readers emit in event_time order
        joiner.add_prediction(p);
    }
    for (const auto& l : labels) {
        if (l.available_time > t) break;
        joiner.add_label(l);
    }
    JoinResult result;
    result.observed = joiner.take_ready(t);
    result.unlabeled_count = joiner.unlabeled_count();
    result.orphan_labels = joiner.unmatched_label_count();
    return result;
}

}  // namespace streameval
