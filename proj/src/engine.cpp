#include "streameval/engine.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "streameval/errors.hpp"
#include "streameval/random.hpp"
#include "streameval/stream_io.hpp"

namespace streameval {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char c : text) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Uniform reservoir over the cumulative loss stream (algorithm R).
class LossReservoir {
public:
    LossReservoir(std::size_t capacity, std::uint64_t seed) : capacity_(capacity), rng_(seed) {}

    void add(double loss) {
        ++seen_;
        if (sample_.size() < capacity_) {
            sample_.push_back(loss);
        } else {
            const std::uint64_t j = uniform_index(rng_, seen_);
            if (j < capacity_) sample_[j] = loss;
        }
    }

    std::size_t seen() const { return seen_; }
    bool saturated() const { return seen_ > capacity_; }
    std::vector<double> sorted_sample() const {
        std::vector<double> copy(sample_);
        std::sort(copy.begin(), copy.end());
        return copy;
    }

private:
    std::size_t capacity_;
    std::mt19937_64 rng_;
    std::vector<double> sample_;
    std::size_t seen_ = 0;
};

// Sufficient statistics for a cumulative window.
struct CumulativeState {
    ConfusionCounts counts;
    std::size_t positives = 0;
    std::unique_ptr<LossReservoir> losses;

    void add(const JoinedExample& ex) {
        if (predicted_class(ex.score) == 1)
            (ex.label == 1 ? counts.tp : counts.fp)++;
        else
            (ex.label == 1 ? counts.fn : counts.tn)++;
        positives += ex.label == 1 ? 1 : 0;
        losses->add(log_loss(ex));
    }
};

// Window over the raw prediction stream, feeding the IW estimate.
struct PredictionWindow {
    WindowSpec spec;
    std::deque<std::pair<TimeMs, std::string>> members;  // sliding kinds only
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;

    void add(const PredictionEvent& event) {
        ++counts[event.subgroup];
        ++total;
        if (spec.kind != WindowKind::cumulative)
            members.emplace_back(event.event_time, event.subgroup);
    }

    void evict(TimeMs t) {
        auto drop_front = [&]() {
            auto it = counts.find(members.front().second);
            if (--(it->second) == 0) counts.erase(it);
            members.pop_front();
            --total;
        };
        if (spec.kind == WindowKind::sliding_duration) {
            const TimeMs lower = t - spec.duration;
            while (!members.empty() && members.front().first <= lower) drop_front();
        } else if (spec.kind == WindowKind::sliding_count) {
            while (members.size() > spec.count) drop_front();
        }
    }
};

struct SpecState {
    WindowSpec spec;
    std::vector<TimeMs> grid;
    std::size_t next_tick = 0;
    std::unique_ptr<WindowAccumulator> window;  // sliding kinds
    CumulativeState cumulative;                 // cumulative kind
    std::size_t joined_cursor = 0;
    PredictionWindow predictions;
    std::size_t prediction_cursor = 0;
};

bool wants(const RunOptions& opt, std::string_view name) {
    return std::find(opt.metrics.begin(), opt.metrics.end(), name) != opt.metrics.end();
}

std::string run_signature(const RunOptions& opt, std::string_view inputs_tag) {
    std::ostringstream sig;
    sig << "windows=";
    for (const auto& w : opt.windows)
        sig << to_string(w.kind) << ':' << w.size_text() << '@' << format_duration(w.cadence)
            << ';';
    sig << " metrics=";
    for (const auto& m : opt.metrics) sig << m << ';';
    sig << " levels=";
    for (int level : opt.loss_levels) sig << level << ';';
    sig << " iw_min_support=" << opt.iw_min_support << " seed=" << opt.seed
        << " inputs=" << inputs_tag;
    return sig.str();
}

void rows_push(std::vector<ReportRow>& rows, std::size_t spec_index, const MetricPoint& point) {
    rows.push_back(ReportRow{spec_index, point.metric, point.window_end, point.value,
                             point.value ? point.support : 0});
}

void emit_loss_rows(std::vector<ReportRow>& rows, std::size_t spec_index,
                    const LossPercentileSet& set, std::span<const int> levels) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        ReportRow row;
        row.spec_index = spec_index;
        row.metric = "loss_p" + std::to_string(levels[i]);
        row.window_end = set.window_end;
        if (!set.empty()) {
            row.value = set.values[i].second;
            row.support = set.support;
        }
        rows.push_back(std::move(row));
    }
}

}  // namespace

const std::vector<std::string>& known_metric_names() {
    static const std::vector<std::string> names = {
        "accuracy", "positive_fraction", "precision", "recall", "f1", "loss_percentiles"};
    return names;
}

void RunOptions::validate() const {
    if (windows.empty()) throw ConfigError("config: at least one window is required");
    for (const auto& w : windows) w.validate();
    if (metrics.empty()) throw ConfigError("config: at least one metric is required");
    const auto& known = known_metric_names();
    for (const auto& m : metrics)
        if (std::find(known.begin(), known.end(), m) == known.end())
            throw ConfigError("config: unknown metric \"" + m + "\"");
    if (loss_levels.empty()) throw ConfigError("config: loss_percentile_levels is empty");
    for (int level : loss_levels)
        if (level < 0 || level > 100)
            throw ConfigError("config: loss percentile level out of [0,100]");
    if (!std::is_sorted(loss_levels.begin(), loss_levels.end()) ||
        std::adjacent_find(loss_levels.begin(), loss_levels.end()) != loss_levels.end())
        throw ConfigError("config: loss_percentile_levels must be strictly increasing");
}

Report run_on_streams(const RunOptions& options, std::span<const PredictionEvent> predictions,
                      std::span<const LabelEvent> labels, const SubgroupProfile* profile) {
    options.validate();
    if (predictions.empty()) throw ConfigError("config: prediction stream is empty");
    if (profile != nullptr) {
        const bool any_subgroup =
            std::any_of(predictions.begin(), predictions.end(),
                        [](const PredictionEvent& p) { return !p.subgroup.empty(); });
        if (!any_subgroup)
            throw ConfigError("config: iw requires subgroup keys on the prediction stream");
    }

    const TimeMs start = predictions.front().event_time;
    const TimeMs end = predictions.back().event_time;

    std::vector<SpecState> states;
    states.reserve(options.windows.size());
    std::vector<TimeMs> global_ticks;
    for (const auto& spec : options.windows) {
        SpecState st;
        st.spec = spec;
        st.grid = evaluation_times(start, end, spec);
        if (spec.kind == WindowKind::cumulative)
            st.cumulative.losses =
                std::make_unique<LossReservoir>(kCumulativeLossReservoir, options.seed);
        else
            st.window = std::make_unique<WindowAccumulator>(spec);
        st.predictions.spec = spec;
        global_ticks.insert(global_ticks.end(), st.grid.begin(), st.grid.end());
        states.push_back(std::move(st));
    }
    std::sort(global_ticks.begin(), global_ticks.end());
    global_ticks.erase(std::unique(global_ticks.begin(), global_ticks.end()),
                       global_ticks.end());

    Report report;
    report.specs = options.windows;
    report.seed = options.seed;
    report.stats.predictions = predictions.size();
    report.stats.labels = labels.size();

    const bool want_accuracy = wants(options, "accuracy");
    const bool want_posfrac = wants(options, "positive_fraction");
    const bool want_precision = wants(options, "precision");
    const bool want_recall = wants(options, "recall");
    const bool want_f1 = wants(options, "f1");
    const bool want_prf = want_precision || want_recall || want_f1;
    const bool want_loss = wants(options, "loss_percentiles");

    EventJoiner joiner;
    std::size_t pred_feed = 0;
    std::size_t label_feed = 0;
    std::vector<JoinedExample> joined_all;

    auto emit_for_spec = [&](SpecState& st, std::size_t spec_index, TimeMs t) {
        // Fold in everything that completed since this spec's previous tick.
        std::span<const JoinedExample> fresh{joined_all.data() + st.joined_cursor,
                                             joined_all.size() - st.joined_cursor};
        st.joined_cursor = joined_all.size();

        while (st.prediction_cursor < predictions.size() &&
               predictions[st.prediction_cursor].event_time <= t)
            st.predictions.add(predictions[st.prediction_cursor++]);
        st.predictions.evict(t);

        ConfusionCounts counts;
        std::size_t positives = 0;
        LossPercentileSet losses;
        if (st.spec.kind == WindowKind::cumulative) {
            for (const auto& ex : fresh) st.cumulative.add(ex);
            counts = st.cumulative.counts;
            positives = st.cumulative.positives;
            if (want_loss) {
                losses = loss_percentiles_of(st.cumulative.losses->sorted_sample(), t,
                                             options.loss_levels);
                losses.support = st.cumulative.losses->seen();
                if (st.cumulative.losses->saturated())
                    report.stats.approximate_cumulative_percentiles = true;
            }
        } else {
            st.window->advance(fresh, t);
            counts = count_confusion(st.window->members());
            for (const auto& ex : st.window->members()) positives += ex.label == 1 ? 1 : 0;
            if (want_loss) losses = loss_percentiles(st.window->members(), t, options.loss_levels);
        }

        const MetricPoint acc = accuracy_from_counts(counts, t);
        if (want_accuracy) rows_push(report.rows, spec_index, acc);
        if (want_posfrac) {
            MetricPoint point{t, "positive_fraction", std::nullopt, counts.total()};
            if (counts.total() > 0)
                point.value =
                    static_cast<double>(positives) / static_cast<double>(counts.total());
            rows_push(report.rows, spec_index, point);
        }
        if (want_prf) {
            const PrecisionRecallF1 prf = precision_recall_f1_from_counts(counts, t);
            if (want_precision) rows_push(report.rows, spec_index, prf.precision);
            if (want_recall) rows_push(report.rows, spec_index, prf.recall);
            if (want_f1) rows_push(report.rows, spec_index, prf.f1);
        }
        if (want_loss) emit_loss_rows(report.rows, spec_index, losses, options.loss_levels);

        if (profile != nullptr) {
            const IwEstimate estimate =
                iw_estimate_from_counts(st.predictions.counts, *profile, t);
            ReportRow est_row{spec_index, "iw_estimate", t, estimate.estimate, estimate.support};
            ReportRow cov_row{spec_index, "iw_coverage", t,
                              estimate.estimate ? std::optional<double>(estimate.coverage)
                                                : std::nullopt,
                              estimate.estimate ? estimate.support : 0};
            ReportRow diff_row{spec_index, "iw_difference", t, std::nullopt, 0};
            if (estimate.estimate && acc.value && acc.support >= options.iw_min_support) {
                diff_row.value = iw_difference(estimate, acc);
                diff_row.support = acc.support;
            }
            report.rows.push_back(std::move(est_row));
            report.rows.push_back(std::move(cov_row));
            report.rows.push_back(std::move(diff_row));
        }
    };

    for (const TimeMs t : global_ticks) {
        while (pred_feed < predictions.size() && predictions[pred_feed].event_time <= t)
            joiner.add_prediction(predictions[pred_feed++]);
        while (label_feed < labels.size() && labels[label_feed].available_time <= t)
            joiner.add_label(labels[label_feed++]);
        for (JoinedExample& ex : joiner.take_ready(t)) joined_all.push_back(std::move(ex));

        for (std::size_t i = 0; i < states.size(); ++i) {
            SpecState& st = states[i];
            if (st.next_tick < st.grid.size() && st.grid[st.next_tick] == t) {
                emit_for_spec(st, i, t);
                ++st.next_tick;
            }
        }
    }

    report.stats.joined = joiner.joined_count();
    report.stats.final_unlabeled = joiner.unlabeled_count();
    report.stats.orphan_labels = joiner.unmatched_label_count();
    report.stats.duplicate_labels = joiner.duplicate_label_count();

    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const ReportRow& a, const ReportRow& b) {
                         return std::tie(a.spec_index, a.metric, a.window_end) <
                                std::tie(b.spec_index, b.metric, b.window_end);
                     });
    report.config_hash = hex64(fnv1a64(run_signature(options, "in-memory")));
    return report;
}

std::vector<JoinedExample> join_reference(std::span<const PredictionEvent> predictions,
                                          std::span<const LabelEvent> labels) {
    EventJoiner joiner;
    for (const auto& p : predictions) joiner.add_prediction(p);
    for (const auto& l : labels) joiner.add_label(l);
    return joiner.take_ready(std::numeric_limits<TimeMs>::max());
}

namespace {

SubgroupProfile resolve_profile(const IwSource& source) {
    if (!source.profile_path.empty()) return load_profile(source.profile_path);
    if (source.reference_predictions_path.empty() || source.reference_labels_path.empty())
        throw ConfigError("config: iw needs either \"profile\" or reference paths");
    const auto preds = read_prediction_file(source.reference_predictions_path);
    const auto labels = read_label_file(source.reference_labels_path);
    const auto joined = join_reference(preds.events, labels.events);
    if (joined.empty()) throw ConfigError("config: empty reference set for iw profile");
    return build_profile(joined, source.min_count);
}

struct LoadedInputs {
    PredictionStream predictions;
    LabelStream labels;  // after delay simulation, when configured
    std::size_t raw_label_count = 0;
};

LoadedInputs load_inputs(const RunConfig& config, bool apply_delay) {
    LoadedInputs in;
    const ReaderOptions reader_opts{config.reorder_tolerance};
    in.predictions = read_prediction_file(config.predictions_path, reader_opts);
    in.labels = read_label_file(config.labels_path, reader_opts);
    in.raw_label_count = in.labels.events.size();
    if (apply_delay && config.delay) {
        in.labels.events = simulate_label_delay(in.labels.events, *config.delay);
    }
    return in;
}

std::string file_signature(const RunConfig& config) {
    std::ostringstream tag;
    tag << config.predictions_path << '|' << config.labels_path << '|' << config.output_path;
    if (config.delay)
        tag << "|delay:" << config.delay->mean_delay_days << ','
            << config.delay->labeled_fraction << ',' << config.delay->seed;
    if (config.iw)
        tag << "|iw:" << config.iw->profile_path << ',' << config.iw->reference_predictions_path
            << ',' << config.iw->reference_labels_path << ',' << config.iw->min_count;
    tag << "|tol:" << config.reorder_tolerance;
    return tag.str();
}

Report finish_file_report(Report report, const RunConfig& config, const LoadedInputs& in) {
    report.stats.duplicate_prediction_ids = in.predictions.warnings.duplicate_ids;
    report.stats.duplicate_label_ids = in.labels.warnings.duplicate_ids;
    report.config_hash =
        hex64(fnv1a64(run_signature(config.options, file_signature(config))));
    return report;
}

}  // namespace

Report run(const RunConfig& config) {
    const LoadedInputs in = load_inputs(config, /*apply_delay=*/true);
    std::optional<SubgroupProfile> profile;
    if (config.iw) profile = resolve_profile(*config.iw);
    Report report = run_on_streams(config.options, in.predictions.events, in.labels.events,
                                   profile ? &*profile : nullptr);
    return finish_file_report(std::move(report), config, in);
}

PairedReport true_vs_observed(const RunConfig& config) {
    if (!config.delay) throw ConfigError("config: compare requires a \"delay\" block");
    const LoadedInputs in = load_inputs(config, /*apply_delay=*/false);
    std::optional<SubgroupProfile> profile;
    if (config.iw) profile = resolve_profile(*config.iw);
    const SubgroupProfile* profile_ptr = profile ? &*profile : nullptr;

    const auto delayed = simulate_label_delay(in.labels.events, *config.delay);

    PairedReport paired;
    paired.true_report = finish_file_report(
        run_on_streams(config.options, in.predictions.events, in.labels.events, profile_ptr),
        config, in);
    paired.observed_report = finish_file_report(
        run_on_streams(config.options, in.predictions.events, delayed, profile_ptr), config, in);
    paired.specs = paired.true_report.specs;

    // Both runs share the prediction-derived grid, so rows pair off one to one.
    const auto& t_rows = paired.true_report.rows;
    const auto& o_rows = paired.observed_report.rows;
    if (t_rows.size() != o_rows.size())
        throw std::logic_error("true/observed reports diverged in shape");
    paired.rows.reserve(t_rows.size());
    for (std::size_t i = 0; i < t_rows.size(); ++i) {
        const ReportRow& t = t_rows[i];
        const ReportRow& o = o_rows[i];
        if (t.spec_index != o.spec_index || t.metric != o.metric ||
            t.window_end != o.window_end)
            throw std::logic_error("true/observed reports diverged in shape");
        PairedRow row;
        row.spec_index = t.spec_index;
        row.metric = t.metric;
        row.window_end = t.window_end;
        row.true_value = t.value;
        row.true_support = t.support;
        row.observed_value = o.value;
        row.observed_support = o.support;
        if (t.value && o.value) row.difference = *o.value - *t.value;
        paired.rows.push_back(std::move(row));
    }
    return paired;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw ConfigError("config: not a JSON object");

    static const std::set<std::string> known = {
        "version", "predictions", "labels", "windows", "metrics", "loss_percentile_levels",
        "delay", "iw", "iw_min_support", "seed", "reorder_tolerance", "output"};
    for (const auto& [key, _] : doc.items())
        if (!known.count(key)) throw ConfigError("config: unknown key \"" + key + "\"");
    if (!doc.contains("version") || doc.at("version") != 1)
        throw ConfigError("config: missing or unsupported \"version\" (expected 1)");

    auto require_string_field = [&](const char* key) {
        if (!doc.contains(key) || !doc.at(key).is_string())
            throw ConfigError(std::string("config: missing or non-string \"") + key + "\"");
        return doc.at(key).get<std::string>();
    };

    RunConfig config;
    config.predictions_path = require_string_field("predictions");
    config.labels_path = require_string_field("labels");
    config.output_path = require_string_field("output");

    if (!doc.contains("windows") || !doc.at("windows").is_array())
        throw ConfigError("config: missing \"windows\" array");
    for (const auto& w : doc.at("windows")) {
        if (!w.is_object()) throw ConfigError("config: window entries must be objects");
        static const std::set<std::string> window_keys = {"kind", "size", "cadence"};
        for (const auto& [key, _] : w.items())
            if (!window_keys.count(key))
                throw ConfigError("config: unknown window key \"" + key + "\"");
        const std::string kind = w.value("kind", std::string{});
        WindowSpec spec;
        spec.cadence = parse_duration(w.value("cadence", std::string("1d")));
        if (kind == "cumulative") {
            spec = WindowSpec::cumulative(spec.cadence);
            if (w.contains("size")) throw ConfigError("config: cumulative windows take no size");
        } else if (kind == "sliding_duration") {
            if (!w.contains("size") || !w.at("size").is_string())
                throw ConfigError("config: sliding_duration needs a duration string \"size\"");
            spec = WindowSpec::sliding_duration(parse_duration(w.at("size").get<std::string>()),
                                                spec.cadence);
        } else if (kind == "sliding_count") {
            if (!w.contains("size") || !w.at("size").is_number_integer())
                throw ConfigError("config: sliding_count needs an integer \"size\"");
            const std::int64_t n = w.at("size").get<std::int64_t>();
            if (n < 1) throw ConfigError("config: sliding_count size must be >= 1");
            spec = WindowSpec::sliding_count(static_cast<std::size_t>(n), spec.cadence);
        } else {
            throw ConfigError("config: unknown window kind \"" + kind + "\"");
        }
        config.options.windows.push_back(spec);
    }

    if (!doc.contains("metrics") || !doc.at("metrics").is_array())
        throw ConfigError("config: missing \"metrics\" array");
    for (const auto& m : doc.at("metrics")) {
        if (!m.is_string()) throw ConfigError("config: metric names must be strings");
        config.options.metrics.push_back(m.get<std::string>());
    }

    if (doc.contains("loss_percentile_levels")) {
        config.options.loss_levels.clear();
        for (const auto& level : doc.at("loss_percentile_levels")) {
            if (!level.is_number_integer())
                throw ConfigError("config: loss_percentile_levels must be integers");
            config.options.loss_levels.push_back(level.get<int>());
        }
    }

    try {
        if (doc.contains("delay")) {
            const auto& d = doc.at("delay");
            static const std::set<std::string> delay_keys = {"mean_days", "labeled_fraction",
                                                             "seed"};
            for (const auto& [key, _] : d.items())
                if (!delay_keys.count(key))
                    throw ConfigError("config: unknown delay key \"" + key + "\"");
            DelayConfig delay;
            delay.mean_delay_days = d.value("mean_days", 7.0);
            delay.labeled_fraction = d.value("labeled_fraction", 0.1);
            delay.seed = d.value("seed", std::uint64_t{0});
            delay.validate();
            config.delay = delay;
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad \"delay\" block: ") + e.what());
    }

    try {
        if (doc.contains("iw")) {
            const auto& iw = doc.at("iw");
            static const std::set<std::string> iw_keys = {"profile", "reference_predictions",
                                                          "reference_labels", "min_count"};
            for (const auto& [key, _] : iw.items())
                if (!iw_keys.count(key))
                    throw ConfigError("config: unknown iw key \"" + key + "\"");
            IwSource source;
            source.profile_path = iw.value("profile", std::string{});
            source.reference_predictions_path = iw.value("reference_predictions", std::string{});
            source.reference_labels_path = iw.value("reference_labels", std::string{});
            source.min_count = iw.value("min_count", std::size_t{30});
            if (source.profile_path.empty() && (source.reference_predictions_path.empty() ||
                                                source.reference_labels_path.empty()))
                throw ConfigError("config: iw needs either \"profile\" or reference paths");
            config.iw = source;
        }

        config.options.iw_min_support = doc.value("iw_min_support", std::size_t{30});
        config.options.seed = doc.value("seed", std::uint64_t{0});
        if (doc.contains("reorder_tolerance"))
            config.reorder_tolerance =
                parse_duration(doc.at("reorder_tolerance").get<std::string>());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    config.options.validate();
    return config;
}

std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

namespace {

void write_row_prefix(std::ostream& out, const std::vector<WindowSpec>& specs,
                      std::size_t spec_index, TimeMs window_end, const std::string& metric) {
    const WindowSpec& spec = specs[spec_index];
    out << to_string(spec.kind) << ',' << spec.size_text() << ','
        << format_duration(spec.cadence) << ',' << format_rfc3339(window_end) << ',' << metric;
}

}  // namespace

void write_report_csv(std::ostream& out, const Report& report) {
    out << "window_kind,window_size,cadence,window_end,metric,value,support\n";
    for (const auto& row : report.rows) {
        write_row_prefix(out, report.specs, row.spec_index, row.window_end, row.metric);
        out << ',';
        if (row.value) out << format_double(*row.value);
        out << ',' << row.support << '\n';
    }
}

void write_paired_csv(std::ostream& out, const PairedReport& paired) {
    out << "window_kind,window_size,cadence,window_end,metric,"
           "true_value,true_support,observed_value,observed_support,difference\n";
    for (const auto& row : paired.rows) {
        write_row_prefix(out, paired.specs, row.spec_index, row.window_end, row.metric);
        out << ',';
        if (row.true_value) out << format_double(*row.true_value);
        out << ',' << row.true_support << ',';
        if (row.observed_value) out << format_double(*row.observed_value);
        out << ',' << row.observed_support << ',';
        if (row.difference) out << format_double(*row.difference);
        out << '\n';
    }
}

void write_report_metadata(std::ostream& out, const Report& report) {
    ordered_json meta;
    meta["tool"] = "streameval";
    meta["format_version"] = 1;
    meta["config_hash"] = report.config_hash;
    meta["seed"] = report.seed;
    meta["rows"] = report.rows.size();
    meta["inputs"] = {{"predictions", report.stats.predictions},
                      {"labels", report.stats.labels}};
    meta["join"] = {{"joined", report.stats.joined},
                    {"final_unlabeled", report.stats.final_unlabeled},
                    {"orphan_labels", report.stats.orphan_labels},
                    {"duplicate_labels", report.stats.duplicate_labels}};
    meta["reader_warnings"] = {
        {"duplicate_prediction_ids", report.stats.duplicate_prediction_ids},
        {"duplicate_label_ids", report.stats.duplicate_label_ids}};
    ordered_json approx = ordered_json::array();
    if (report.stats.approximate_cumulative_percentiles)
        approx.push_back("cumulative loss percentiles use a reservoir of " +
                         std::to_string(kCumulativeLossReservoir) + " samples");
    meta["approximations"] = approx;
    out << meta.dump(2) << '\n';
}

std::string metadata_path_for(const std::string& csv_path) {
    const std::size_t dot = csv_path.rfind('.');
    const std::size_t slash = csv_path.rfind('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return csv_path.substr(0, dot) + ".meta.json";
    return csv_path + ".meta.json";
}

void write_report_files(const Report& report, const std::string& csv_path) {
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot open " + csv_path + " for writing");
    write_report_csv(csv, report);
    std::ofstream meta(metadata_path_for(csv_path));
    if (!meta) throw IoError("cannot open metadata file for writing");
    write_report_metadata(meta, report);
}

void write_paired_files(const PairedReport& paired, const std::string& csv_path) {
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot open " + csv_path + " for writing");
    write_paired_csv(csv, paired);
    std::ofstream meta(metadata_path_for(csv_path));
    if (!meta) throw IoError("cannot open metadata file for writing");
    write_report_metadata(meta, paired.observed_report);
}

}  // namespace streameval
