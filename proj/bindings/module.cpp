#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "streameval/engine.hpp"
#include "streameval/errors.hpp"
#include "streameval/label_delay.hpp"
#include "streameval/metrics.hpp"
#include "streameval/stratified_iw.hpp"
#include "streameval/stream_io.hpp"
#include "streameval/synth.hpp"
#include "streameval/timestamps.hpp"
#include "streameval/windowing.hpp"

namespace py = pybind11;
using namespace streameval;

namespace {

using Examples = std::vector<JoinedExample>;

std::string report_csv_string(const Report& report) {
    std::ostringstream out;
    write_report_csv(out, report);
    return out.str();
}

std::string paired_csv_string(const PairedReport& paired) {
    std::ostringstream out;
    write_paired_csv(out, paired);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Streaming model evaluation: windowed metrics over prediction/label replay";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def("parse_rfc3339", &parse_rfc3339, py::arg("text"));
    m.def("format_rfc3339", &format_rfc3339, py::arg("time_ms"));
    m.def("parse_duration", &parse_duration, py::arg("text"));
    m.def("format_duration", &format_duration, py::arg("duration_ms"));

    py::class_<PredictionEvent>(m, "PredictionEvent")
        .def(py::init<std::string, TimeMs, double, std::string>(), py::arg("id"),
             py::arg("event_time"), py::arg("score"), py::arg("subgroup") = "")
        .def_readwrite("id", &PredictionEvent::id)
        .def_readwrite("event_time", &PredictionEvent::event_time)
        .def_readwrite("score", &PredictionEvent::score)
        .def_readwrite("subgroup", &PredictionEvent::subgroup);

    py::class_<LabelEvent>(m, "LabelEvent")
        .def(py::init<std::string, TimeMs, int>(), py::arg("id"), py::arg("available_time"),
             py::arg("label"))
        .def_readwrite("id", &LabelEvent::id)
        .def_readwrite("available_time", &LabelEvent::available_time)
        .def_readwrite("label", &LabelEvent::label);

    py::class_<JoinedExample>(m, "JoinedExample")
        .def(py::init<std::string, TimeMs, double, std::string, int, TimeMs>(), py::arg("id"),
             py::arg("event_time"), py::arg("score"), py::arg("subgroup"), py::arg("label"),
             py::arg("available_time") = 0)
        .def_readwrite("id", &JoinedExample::id)
        .def_readwrite("event_time", &JoinedExample::event_time)
        .def_readwrite("score", &JoinedExample::score)
        .def_readwrite("subgroup", &JoinedExample::subgroup)
        .def_readwrite("label", &JoinedExample::label)
        .def_readwrite("available_time", &JoinedExample::available_time);

    m.def(
        "read_predictions",
        [](const std::string& path) { return read_prediction_file(path).events; },
        py::arg("path"));
    m.def(
        "read_labels", [](const std::string& path) { return read_label_file(path).events; },
        py::arg("path"));
    m.def("write_predictions", &write_prediction_file, py::arg("path"), py::arg("events"));
    m.def("write_labels", &write_label_file, py::arg("path"), py::arg("events"));

    py::enum_<WindowKind>(m, "WindowKind")
        .value("cumulative", WindowKind::cumulative)
        .value("sliding_duration", WindowKind::sliding_duration)
        .value("sliding_count", WindowKind::sliding_count);

    py::class_<WindowSpec>(m, "WindowSpec")
        .def_static("cumulative", &WindowSpec::cumulative, py::arg("cadence") = kDay)
        .def_static("sliding_duration", &WindowSpec::sliding_duration, py::arg("duration"),
                    py::arg("cadence") = kDay)
        .def_static("sliding_count", &WindowSpec::sliding_count, py::arg("count"),
                    py::arg("cadence") = kDay)
        .def_readonly("kind", &WindowSpec::kind)
        .def_readonly("duration", &WindowSpec::duration)
        .def_readonly("count", &WindowSpec::count)
        .def_readonly("cadence", &WindowSpec::cadence);

    m.def("evaluation_times", &evaluation_times, py::arg("start"), py::arg("end"),
          py::arg("spec"));

    py::class_<MetricPoint>(m, "MetricPoint")
        .def_readonly("window_end", &MetricPoint::window_end)
        .def_readonly("metric", &MetricPoint::metric)
        .def_readonly("value", &MetricPoint::value)
        .def_readonly("support", &MetricPoint::support);

    m.def(
        "accuracy", [](const Examples& ex, TimeMs t) { return accuracy(ex, t); },
        py::arg("examples"), py::arg("window_end") = 0);
    m.def(
        "positive_fraction",
        [](const Examples& ex, TimeMs t) { return positive_fraction(ex, t); },
        py::arg("examples"), py::arg("window_end") = 0);
    m.def(
        "precision_recall_f1",
        [](const Examples& ex, TimeMs t) {
            const auto prf = precision_recall_f1(ex, t);
            return py::make_tuple(prf.precision, prf.recall, prf.f1);
        },
        py::arg("examples"), py::arg("window_end") = 0);
    m.def(
        "log_loss", [](double score, int label) { return log_loss(score, label); },
        py::arg("score"), py::arg("label"));
    m.def(
        "loss_percentiles",
        [](const Examples& ex, TimeMs t, const std::vector<int>& levels) {
            const auto set = loss_percentiles(ex, t, levels);
            std::map<int, double> out;
            for (const auto& [level, value] : set.values) out[level] = value;
            return out;
        },
        py::arg("examples"), py::arg("window_end") = 0,
        py::arg("levels") = std::vector<int>(kDefaultLossLevels.begin(),
                                             kDefaultLossLevels.end()));

    py::class_<SubgroupStats>(m, "SubgroupStats")
        .def_readonly("accuracy", &SubgroupStats::accuracy)
        .def_readonly("count", &SubgroupStats::count);

    py::class_<SubgroupProfile>(m, "SubgroupProfile")
        .def_readonly("groups", &SubgroupProfile::groups)
        .def_readonly("global_accuracy", &SubgroupProfile::global_accuracy)
        .def_readonly("total_count", &SubgroupProfile::total_count);

    m.def(
        "build_profile",
        [](const Examples& reference, std::size_t min_count) {
            return build_profile(reference, min_count);
        },
        py::arg("reference"), py::arg("min_count") = 30);
    m.def("save_profile", &save_profile, py::arg("path"), py::arg("profile"));
    m.def("load_profile", &load_profile, py::arg("path"));

    py::class_<IwEstimate>(m, "IwEstimate")
        .def_readonly("window_end", &IwEstimate::window_end)
        .def_readonly("estimate", &IwEstimate::estimate)
        .def_readonly("coverage", &IwEstimate::coverage)
        .def_readonly("support", &IwEstimate::support);

    m.def(
        "iw_estimate",
        [](const std::vector<PredictionEvent>& live, const SubgroupProfile& profile, TimeMs t) {
            return iw_estimate(live, profile, t);
        },
        py::arg("live"), py::arg("profile"), py::arg("window_end") = 0);
    m.def("iw_difference", &iw_difference, py::arg("estimate"), py::arg("realized_accuracy"));

    m.def("sample_delay_days", &sample_delay_days, py::arg("u"), py::arg("mean_delay_days"));

    py::class_<DelayConfig>(m, "DelayConfig")
        .def(py::init([](double mean_delay_days, double labeled_fraction, std::uint64_t seed) {
                 DelayConfig c{mean_delay_days, labeled_fraction, seed};
                 c.validate();
                 return c;
             }),
             py::arg("mean_delay_days") = 7.0, py::arg("labeled_fraction") = 0.1,
             py::arg("seed") = 0)
        .def_readonly("mean_delay_days", &DelayConfig::mean_delay_days)
        .def_readonly("labeled_fraction", &DelayConfig::labeled_fraction)
        .def_readonly("seed", &DelayConfig::seed);

    m.def(
        "simulate_label_delay",
        [](const std::vector<LabelEvent>& labels, const DelayConfig& config) {
            return simulate_label_delay(labels, config);
        },
        py::arg("labels"), py::arg("config"));

    m.def(
        "join_at",
        [](TimeMs t, const std::vector<PredictionEvent>& predictions,
           const std::vector<LabelEvent>& labels) {
            auto result = join_at(t, predictions, labels);
            return py::make_tuple(result.observed, result.unlabeled_count, result.orphan_labels);
        },
        py::arg("t"), py::arg("predictions"), py::arg("labels"));

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readwrite("start", &ScenarioConfig::start)
        .def_readwrite("end", &ScenarioConfig::end)
        .def_readwrite("events_per_day", &ScenarioConfig::events_per_day)
        .def_readwrite("seed", &ScenarioConfig::seed);

    m.def("taxi_like_scenario", &taxi_like_scenario);
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("scenario_to_json", &scenario_to_json, py::arg("config"));
    m.def(
        "generate",
        [](const ScenarioConfig& config) {
            auto stream = generate(config);
            return py::make_tuple(std::move(stream.predictions), std::move(stream.labels));
        },
        py::arg("config"));

    py::class_<ReportRow>(m, "ReportRow")
        .def_readonly("spec_index", &ReportRow::spec_index)
        .def_readonly("metric", &ReportRow::metric)
        .def_readonly("window_end", &ReportRow::window_end)
        .def_readonly("value", &ReportRow::value)
        .def_readonly("support", &ReportRow::support);

    py::class_<Report>(m, "Report")
        .def_readonly("rows", &Report::rows)
        .def_readonly("config_hash", &Report::config_hash)
        .def("csv", &report_csv_string);

    py::class_<PairedRow>(m, "PairedRow")
        .def_readonly("spec_index", &PairedRow::spec_index)
        .def_readonly("metric", &PairedRow::metric)
        .def_readonly("window_end", &PairedRow::window_end)
        .def_readonly("true_value", &PairedRow::true_value)
        .def_readonly("true_support", &PairedRow::true_support)
        .def_readonly("observed_value", &PairedRow::observed_value)
        .def_readonly("observed_support", &PairedRow::observed_support)
        .def_readonly("difference", &PairedRow::difference);

    py::class_<PairedReport>(m, "PairedReport")
        .def_readonly("rows", &PairedReport::rows)
        .def("csv", &paired_csv_string);

    m.def("load_run_config", &load_run_config, py::arg("path"));
    py::class_<RunConfig>(m, "RunConfig")
        .def_readonly("predictions_path", &RunConfig::predictions_path)
        .def_readonly("labels_path", &RunConfig::labels_path)
        .def_readonly("output_path", &RunConfig::output_path);

    m.def("run", &run, py::arg("config"));
    m.def("true_vs_observed", &true_vs_observed, py::arg("config"));
    m.def(
        "write_report_files",
        [](const Report& report, const std::string& csv_path) {
            write_report_files(report, csv_path);
        },
        py::arg("report"), py::arg("csv_path"));
    m.def(
        "write_paired_files",
        [](const PairedReport& paired, const std::string& csv_path) {
            write_paired_files(paired, csv_path);
        },
        py::arg("paired"), py::arg("csv_path"));

    m.attr("__version__") = "0.1.0";
}
