#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streameval/events.hpp"
#include "streameval/label_delay.hpp"
#include "streameval/metrics.hpp"
#include "streameval/stratified_iw.hpp"
#include "streameval/timestamps.hpp"
#include "streameval/windowing.hpp"

namespace streameval {

// Metric names accepted in run configs. "loss_percentiles" expands to one
// "loss_pNN" series per configured level.
const std::vector<std::string>& known_metric_names();

// Cumulative windows keep sufficient statistics instead of raw members; their loss
// percentiles come from a reservoir of this many samples (exact below the cap).
inline constexpr std::size_t kCumulativeLossReservoir = 10000;

struct RunOptions {
    std::vector<WindowSpec> windows;
    std::vector<std::string> metrics;
    std::vector<int> loss_levels{kDefaultLossLevels.begin(), kDefaultLossLevels.end()};
    // Realized accuracy must reach this support before an IW difference is reported.
    std::size_t iw_min_support = 30;
    std::uint64_t seed = 0;  // drives the cumulative-loss reservoir

    void validate() const;  // throws ConfigError
};

struct IwSource {
    std::string profile_path;  // either a saved profile ...
    std::string reference_predictions_path;  // ... or a labeled reference set
    std::string reference_labels_path;
    std::size_t min_count = 30;  // subgroup fold threshold when building
};

// File-level run description; schema version 1. Paths are taken as given
// (relative to the working directory).
struct RunConfig {
    std::string predictions_path;
    std::string labels_path;
    RunOptions options;
    std::optional<DelayConfig> delay;  // evaluate against simulated delayed labels
    std::optional<IwSource> iw;
    DurationMs reorder_tolerance = kHour;
    std::string output_path;  // report CSV; metadata lands next to it as .meta.json
};

RunConfig load_run_config(const std::string& path);

struct ReportRow {
    std::size_t spec_index = 0;
    std::string metric;
    TimeMs window_end = 0;
    std::optional<double> value;
    std::size_t support = 0;
};

struct RunStats {
    std::size_t predictions = 0;
    std::size_t labels = 0;
    std::size_t joined = 0;
    std::size_t final_unlabeled = 0;   // as of the last evaluation time
    std::size_t orphan_labels = 0;
    std::size_t duplicate_labels = 0;  // joiner-level, beyond reader dedup
    std::size_t duplicate_prediction_ids = 0;
    std::size_t duplicate_label_ids = 0;
    bool approximate_cumulative_percentiles = false;
};

struct Report {
    std::vector<WindowSpec> specs;
    std::vector<ReportRow> rows;  // sorted by (spec, metric, window_end)
    RunStats stats;
    std::string config_hash;  // fnv1a-64 of the resolved run signature
    std::uint64_t seed = 0;
};

// Replays the streams over every configured window. The evaluation grid spans the
// prediction stream; at each evaluation time the join reflects exactly the labels
// available by then. With a profile, also emits iw_estimate / iw_coverage /
// iw_difference series (difference keyed against realized windowed accuracy).
Report run_on_streams(const RunOptions& options, std::span<const PredictionEvent> predictions,
                      std::span<const LabelEvent> labels,
                      const SubgroupProfile* profile = nullptr);

// File-level wrapper: reads inputs, applies the delay simulation when configured,
// resolves the IW profile, and stamps reader warnings into the stats.
Report run(const RunConfig& config);

struct PairedRow {
    std::size_t spec_index = 0;
    std::string metric;
    TimeMs window_end = 0;
    std::optional<double> true_value;
    std::size_t true_support = 0;
    std::optional<double> observed_value;
    std::size_t observed_support = 0;
    std::optional<double> difference;  // observed - true, when both defined
};

struct PairedReport {
    std::vector<WindowSpec> specs;
    std::vector<PairedRow> rows;
    Report true_report;
    Report observed_report;
};

// Runs the pipeline on true labels and on the simulated delayed stream over
// identical windows; requires a delay block.
PairedReport true_vs_observed(const RunConfig& config);

// Joins a fully-labeled reference set irrespective of availability times.
std::vector<JoinedExample> join_reference(std::span<const PredictionEvent> predictions,
                                          std::span<const LabelEvent> labels);

// CSV columns: window_kind,window_size,cadence,window_end,metric,value,support.
// Null values serialize as empty fields.
void write_report_csv(std::ostream& out, const Report& report);
void write_report_metadata(std::ostream& out, const Report& report);
void write_paired_csv(std::ostream& out, const PairedReport& paired);

void write_report_files(const Report& report, const std::string& csv_path);
void write_paired_files(const PairedReport& paired, const std::string& csv_path);

// Shortest round-trip decimal text, locale-independent.
std::string format_double(double value);

std::string metadata_path_for(const std::string& csv_path);

}  // namespace streameval
