#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "streameval/events.hpp"
#include "streameval/timestamps.hpp"

namespace streameval {

// One row of a metric time series. support counts the examples that contributed to
// the value; an undefined value is null with support 0, never NaN.
struct MetricPoint {
    TimeMs window_end = 0;
    std::string metric;
    std::optional<double> value;
    std::size_t support = 0;
};

inline constexpr std::array<int, 5> kDefaultLossLevels = {10, 30, 50, 70, 90};

// Percentile level -> loss value, nondecreasing in the level.
struct LossPercentileSet {
    TimeMs window_end = 0;
    std::vector<std::pair<int, double>> values;
    std::size_t support = 0;

    bool empty() const { return support == 0; }
};

// Predictions are probabilities; correctness rounds half-up at 0.5.
inline int predicted_class(double score) {
    return score >= 0.5 ? 1 : 0;
}

struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::size_t total() const { return tp + fp + tn + fn; }
    std::size_t predicted_positive() const { return tp + fp; }
    std::size_t actual_positive() const { return tp + fn; }
};

template <std::ranges::input_range R>
ConfusionCounts count_confusion(R&& examples) {
    ConfusionCounts c;
    for (const JoinedExample& ex : examples) {
        if (predicted_class(ex.score) == 1)
            (ex.label == 1 ? c.tp : c.fp)++;
        else
            (ex.label == 1 ? c.fn : c.tn)++;
    }
    return c;
}

inline MetricPoint accuracy_from_counts(const ConfusionCounts& c, TimeMs window_end) {
    MetricPoint point{window_end, "accuracy", std::nullopt, c.total()};
    if (c.total() > 0)
        point.value = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    return point;
}

// Fraction of examples whose rounded score matches the label; null on empty windows.
template <std::ranges::input_range R>
MetricPoint accuracy(R&& examples, TimeMs window_end = 0) {
    return accuracy_from_counts(count_confusion(examples), window_end);
}

// Fraction of label-1 examples in the window.
template <std::ranges::input_range R>
MetricPoint positive_fraction(R&& examples, TimeMs window_end = 0) {
    std::size_t n = 0, positives = 0;
    for (const JoinedExample& ex : examples) {
        ++n;
        positives += ex.label == 1 ? 1 : 0;
    }
    MetricPoint point{window_end, "positive_fraction", std::nullopt, n};
    if (n > 0) point.value = static_cast<double>(positives) / static_cast<double>(n);
    return point;
}

struct PrecisionRecallF1 {
    MetricPoint precision;
    MetricPoint recall;
    MetricPoint f1;
};

inline PrecisionRecallF1 precision_recall_f1_from_counts(const ConfusionCounts& c,
                                                         TimeMs window_end) {
    PrecisionRecallF1 out;
    out.precision = {window_end, "precision", std::nullopt, 0};
    out.recall = {window_end, "recall", std::nullopt, 0};
    out.f1 = {window_end, "f1", std::nullopt, 0};
    if (c.predicted_positive() > 0) {
        out.precision.value =
            static_cast<double>(c.tp) / static_cast<double>(c.predicted_positive());
        out.precision.support = c.predicted_positive();
    }
    if (c.actual_positive() > 0) {
        out.recall.value = static_cast<double>(c.tp) / static_cast<double>(c.actual_positive());
        out.recall.support = c.actual_positive();
    }
    if (out.precision.value && out.recall.value &&
        *out.precision.value + *out.recall.value > 0.0) {
        out.f1.value = 2.0 * *out.precision.value * *out.recall.value /
                       (*out.precision.value + *out.recall.value);
        out.f1.support = c.tp + c.fp + c.fn;
    }
    return out;
}

// Standard definitions, thresholded half-up at 0.5. Each point is null (support 0)
// when its denominator is empty: precision without predicted positives, recall
// without actual positives, F1 when either parent is null or both are zero.
template <std::ranges::input_range R>
PrecisionRecallF1 precision_recall_f1(R&& examples, TimeMs window_end = 0) {
    return precision_recall_f1_from_counts(count_confusion(examples), window_end);
}

// Binary cross-entropy with epsilon clipping, so exact 0/1 scores stay finite.
inline double log_loss(double score, int label) {
    constexpr double eps = 1e-15;
    const double s = std::clamp(score, eps, 1.0 - eps);
    return label == 1 ? -std::log(s) : -std::log(1.0 - s);
}

inline double log_loss(const JoinedExample& ex) {
    return log_loss(ex.score, ex.label);
}

// Linear interpolation between closest ranks: h = (n-1) * p / 100, zero-based.
// `sorted` must be ascending and nonempty.
inline double percentile_sorted(std::span<const double> sorted, double level) {
    if (sorted.empty()) throw std::invalid_argument("percentile of empty set");
    const double h = static_cast<double>(sorted.size() - 1) * level / 100.0;
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline LossPercentileSet loss_percentiles_of(std::vector<double> losses, TimeMs window_end,
                                             std::span<const int> levels) {
    LossPercentileSet set;
    set.window_end = window_end;
    set.support = losses.size();
    if (losses.empty()) return set;
    std::sort(losses.begin(), losses.end());
    set.values.reserve(levels.size());
    for (int level : levels)
        set.values.emplace_back(level, percentile_sorted(losses, static_cast<double>(level)));
    return set;
}

// Per-example log-loss distribution summarized at the requested percentile levels.
// Empty windows yield an empty (null) set.
template <std::ranges::input_range R>
LossPercentileSet loss_percentiles(R&& examples, TimeMs window_end = 0,
                                   std::span<const int> levels = kDefaultLossLevels) {
    std::vector<double> losses;
    for (const JoinedExample& ex : examples) losses.push_back(log_loss(ex));
    return loss_percentiles_of(std::move(losses), window_end, levels);
}

}  // namespace streameval
