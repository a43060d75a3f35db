#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "streameval/events.hpp"
#include "streameval/metrics.hpp"

namespace streameval {

// Examples without a subgroup key, and groups folded for being under min_count,
// land in this bucket.
inline constexpr const char* kOtherSubgroup = "__other__";

struct SubgroupStats {
    double accuracy = 0.0;
    std::size_t count = 0;
};

// Per-subgroup reference accuracy built from a labeled reference (training) set.
// global accuracy is the count-weighted mean of the groups.
struct SubgroupProfile {
    std::map<std::string, SubgroupStats> groups;
    double global_accuracy = 0.0;
    std::size_t total_count = 0;
};

// Groups the reference set by subgroup key and records per-group accuracy with the
// same half-up rounding rule as metrics. Groups under min_count are folded into
// "__other__". Throws on an empty reference set.
SubgroupProfile build_profile(std::span<const JoinedExample> reference,
                              std::size_t min_count = 30);

// {"groups": {key: {"accuracy": x, "count": n}}, "global": {...}}
std::string profile_to_json(const SubgroupProfile& profile);
SubgroupProfile profile_from_json(const std::string& text);
void save_profile(const std::string& path, const SubgroupProfile& profile);
SubgroupProfile load_profile(const std::string& path);

// Live-mix-weighted average of reference accuracies; needs no live labels.
struct IwEstimate {
    TimeMs window_end = 0;
    std::optional<double> estimate;  // null when the window is empty
    double coverage = 0.0;           // fraction of live examples with a known subgroup
    std::size_t support = 0;
};

// estimate = sum_g (n_g / N) * reference_accuracy(g). Live subgroups missing from
// the profile contribute global accuracy and lower coverage instead of being dropped.
IwEstimate iw_estimate(std::span<const PredictionEvent> live, const SubgroupProfile& profile,
                       TimeMs window_end = 0);

// Same estimator over pre-aggregated live subgroup counts (empty key = no subgroup).
IwEstimate iw_estimate_from_counts(const std::map<std::string, std::size_t>& live_counts,
                                   const SubgroupProfile& profile, TimeMs window_end = 0);

// estimate - realized accuracy over the same window. Positive means the model does
// worse than its covariate-shift-adjusted expectation: a concept-shift signal.
// Throws when the windows differ or either side is null.
double iw_difference(const IwEstimate& estimate, const MetricPoint& realized_accuracy);

}  // namespace streameval
