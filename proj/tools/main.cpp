#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "streameval/engine.hpp"
#include "streameval/errors.hpp"
#include "streameval/label_delay.hpp"
#include "streameval/stratified_iw.hpp"
#include "streameval/stream_io.hpp"
#include "streameval/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;  // malformed data or config
constexpr int kExitUsage = 2;  // bad invocation or filesystem trouble

using namespace streameval;

int cmd_generate(const std::string& builtin, const std::string& scenario_path,
                 const std::string& out_dir, std::optional<std::uint64_t> seed) {
    ScenarioConfig config;
    if (!scenario_path.empty()) {
        config = load_scenario(scenario_path);
    } else if (builtin == "taxi-like") {
        config = taxi_like_scenario();
    } else {
        std::cerr << "unknown builtin scenario \"" << builtin << "\"\n";
        return kExitUsage;
    }
    if (seed) config.seed = *seed;

    const GeneratedStream stream = generate(config);
    write_prediction_file(out_dir + "/predictions.jsonl", stream.predictions);
    write_label_file(out_dir + "/labels.jsonl", stream.labels);
    std::cout << "wrote " << stream.predictions.size() << " events to " << out_dir << "\n";
    return kExitOk;
}

int cmd_profile(const std::string& predictions_path, const std::string& labels_path,
                std::size_t min_count, const std::string& out_path) {
    const auto predictions = read_prediction_file(predictions_path);
    const auto labels = read_label_file(labels_path);
    const auto reference = join_reference(predictions.events, labels.events);
    if (reference.empty()) {
        std::cerr << "empty reference: no prediction/label pairs joined\n";
        return kExitData;
    }
    const SubgroupProfile profile = build_profile(reference, min_count);
    save_profile(out_path, profile);
    std::cout << "profiled " << reference.size() << " examples across "
              << profile.groups.size() << " subgroups -> " << out_path << "\n";
    return kExitOk;
}

int cmd_delay(const std::string& labels_path, double mean_days, double fraction,
              std::uint64_t seed, const std::string& out_path) {
    const auto labels = read_label_file(labels_path);
    DelayConfig config{mean_days, fraction, seed};
    const auto delayed = simulate_label_delay(labels.events, config);
    write_label_file(out_path, delayed);
    std::cout << "kept " << delayed.size() << " of " << labels.events.size() << " labels -> "
              << out_path << "\n";
    return kExitOk;
}

int cmd_evaluate(const std::string& config_path) {
    const RunConfig config = load_run_config(config_path);
    const Report report = run(config);
    write_report_files(report, config.output_path);
    std::cout << "wrote " << report.rows.size() << " rows to " << config.output_path << "\n";
    return kExitOk;
}

int cmd_compare(const std::string& config_path) {
    const RunConfig config = load_run_config(config_path);
    const PairedReport paired = true_vs_observed(config);
    write_paired_files(paired, config.output_path);
    std::cout << "wrote " << paired.rows.size() << " paired rows to " << config.output_path
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming model evaluation: windowed metric time series over "
                 "prediction/label replay"};
    app.require_subcommand(1);

    std::string builtin, scenario_path, out_dir;
    std::optional<std::uint64_t> gen_seed;
    auto* generate_cmd =
        app.add_subcommand("generate", "Write a synthetic prediction/label stream");
    auto* builtin_opt = generate_cmd->add_option("--builtin", builtin,
                                                 "Canned scenario name (taxi-like)");
    auto* scenario_opt =
        generate_cmd->add_option("--scenario", scenario_path, "Scenario JSON path");
    builtin_opt->excludes(scenario_opt);
    generate_cmd->add_option("--out", out_dir, "Output directory")->required();
    generate_cmd->add_option("--seed", gen_seed, "Override the scenario seed");

    std::string prof_predictions, prof_labels, prof_out;
    std::size_t prof_min_count = 30;
    auto* profile_cmd =
        app.add_subcommand("profile", "Build a subgroup accuracy profile from a reference set");
    profile_cmd->add_option("--predictions", prof_predictions, "Reference predictions file")
        ->required();
    profile_cmd->add_option("--labels", prof_labels, "Reference labels file")->required();
    profile_cmd->add_option("--min-count", prof_min_count,
                            "Fold subgroups smaller than this into __other__");
    profile_cmd->add_option("--out", prof_out, "Profile JSON output path")->required();

    std::string delay_labels, delay_out;
    double delay_mean = 7.0, delay_fraction = 0.1;
    std::uint64_t delay_seed = 0;
    auto* delay_cmd =
        app.add_subcommand("delay", "Simulate delayed, incomplete labels from a true stream");
    delay_cmd->add_option("--labels", delay_labels, "True labels file")->required();
    delay_cmd->add_option("--mean-days", delay_mean, "Mean exponential delay in days");
    delay_cmd->add_option("--fraction", delay_fraction, "Fraction of labels kept");
    delay_cmd->add_option("--seed", delay_seed, "Simulation seed");
    delay_cmd->add_option("--out", delay_out, "Delayed labels output path")->required();

    std::string eval_config;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Run a replay described by a config");
    evaluate_cmd->add_option("--config", eval_config, "Run config JSON")->required();

    std::string compare_config;
    auto* compare_cmd = app.add_subcommand(
        "compare", "Run true vs delayed-label replays and emit a paired report");
    compare_cmd->add_option("--config", compare_config, "Run config JSON with a delay block")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate_cmd->parsed()) {
            if (builtin.empty() && scenario_path.empty()) {
                std::cerr << "generate: one of --builtin or --scenario is required\n";
                return kExitUsage;
            }
            return cmd_generate(builtin, scenario_path, out_dir, gen_seed);
        }
        if (profile_cmd->parsed())
            return cmd_profile(prof_predictions, prof_labels, prof_min_count, prof_out);
        if (delay_cmd->parsed())
            return cmd_delay(delay_labels, delay_mean, delay_fraction, delay_seed, delay_out);
        if (evaluate_cmd->parsed()) return cmd_evaluate(eval_config);
        if (compare_cmd->parsed()) return cmd_compare(compare_config);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
