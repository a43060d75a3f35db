#include "streameval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "streameval/errors.hpp"
#include "streameval/random.hpp"

namespace streameval {
namespace {

constexpr double kWeightTolerance = 1e-9;

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(what) + " must be in [0,1]");
}

void check_weights(const std::vector<SubgroupSpec>& subgroups) {
    double sum = 0.0;
    for (const auto& g : subgroups) {
        if (g.mix_weight < 0.0) throw ConfigError("subgroups: mix_weight must be >= 0");
        sum += g.mix_weight;
    }
    if (std::abs(sum - 1.0) > kWeightTolerance)
        throw ConfigError("subgroups: mix weights must sum to 1");
}

std::vector<SubgroupSpec> apply_shift(std::vector<SubgroupSpec> active, const ShiftSpec& shift) {
    for (const auto& ov : shift.overrides) {
        const auto it = std::find_if(active.begin(), active.end(),
                                     [&](const SubgroupSpec& g) { return g.key == ov.key; });
        if (it == active.end())
            throw ConfigError("shifts: unknown subgroup '" + ov.key + "'");
        if (ov.mix_weight) it->mix_weight = *ov.mix_weight;
        if (ov.p_positive) it->p_positive = *ov.p_positive;
        if (ov.p_correct) it->p_correct = *ov.p_correct;
    }
    check_weights(active);
    for (const auto& g : active) {
        check_probability(g.p_positive, "shifted p_positive");
        check_probability(g.p_correct, "shifted p_correct");
    }
    return active;
}

std::string make_id(std::uint64_t seq) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "e%09llu", static_cast<unsigned long long>(seq));
    return buf;
}

}  // namespace

void ScenarioConfig::validate() const {
    if (end <= start) throw ConfigError("scenario: end must be after start");
    if (events_per_day < 1) throw ConfigError("scenario: events_per_day must be >= 1");
    if (subgroups.empty()) throw ConfigError("scenario: at least one subgroup required");
    std::set<std::string> keys;
    for (const auto& g : subgroups) {
        if (g.key.empty()) throw ConfigError("scenario: subgroup key must be nonempty");
        if (!keys.insert(g.key).second)
            throw ConfigError("scenario: duplicate subgroup key '" + g.key + "'");
        check_probability(g.p_positive, "p_positive");
        check_probability(g.p_correct, "p_correct");
    }
    check_weights(subgroups);
    std::set<TimeMs> shift_times;
    for (const auto& s : shifts)
        if (!shift_times.insert(s.at).second)
            throw ConfigError("scenario: overlapping shift times");
    // Replay shifts in order so each one is validated against the state it will see.
    std::vector<ShiftSpec> ordered(shifts);
    std::sort(ordered.begin(), ordered.end(),
              [](const ShiftSpec& a, const ShiftSpec& b) { return a.at < b.at; });
    std::vector<SubgroupSpec> active = subgroups;
    for (const auto& s : ordered) active = apply_shift(active, s);
}

GeneratedStream generate(const ScenarioConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);

    std::vector<ShiftSpec> shifts = config.shifts;
    std::sort(shifts.begin(), shifts.end(),
              [](const ShiftSpec& a, const ShiftSpec& b) { return a.at < b.at; });

    std::vector<SubgroupSpec> active = config.subgroups;
    std::size_t next_shift = 0;
    // Shifts scheduled at or before the scenario start apply immediately.
    while (next_shift < shifts.size() && shifts[next_shift].at <= config.start) {
        active = apply_shift(active, shifts[next_shift]);
        ++next_shift;
    }

    GeneratedStream stream;
    const std::int64_t total_days = (config.end - config.start + kDay - 1) / kDay;
    const std::int64_t spacing = kDay / config.events_per_day;
    stream.predictions.reserve(static_cast<std::size_t>(total_days * config.events_per_day));
    stream.labels.reserve(stream.predictions.capacity());

    std::uint64_t seq = 0;
    for (std::int64_t day = 0; day < total_days; ++day) {
        const TimeMs day_start = config.start + day * kDay;
        for (int k = 0; k < config.events_per_day; ++k) {
            const TimeMs t = day_start + k * spacing;
            if (t >= config.end) break;
            while (next_shift < shifts.size() && shifts[next_shift].at <= t) {
                active = apply_shift(active, shifts[next_shift]);
                ++next_shift;
            }

            // Categorical draw over the active mix.
            const double u = unit_double(rng);
            double cum = 0.0;
            const SubgroupSpec* group = &active.back();
            for (const auto& g : active) {
                cum += g.mix_weight;
                if (u < cum) {
                    group = &g;
                    break;
                }
            }

            const int label = bernoulli(rng, group->p_positive) ? 1 : 0;
            const bool correct = bernoulli(rng, group->p_correct);
            const int rounded = correct ? label : 1 - label;
            // Uniform within the half-interval that rounds to `rounded`.
            const double half = unit_double(rng) * 0.5;
            const double score = rounded == 1 ? 0.5 + half : half;

            GeneratedPair pair;
            pair.prediction = PredictionEvent{make_id(seq), t, score, group->key};
            pair.label = LabelEvent{pair.prediction.id, t, label};
            ++seq;
            stream.predictions.push_back(std::move(pair.prediction));
            stream.labels.push_back(std::move(pair.label));
        }
    }
    return stream;
}

ScenarioConfig taxi_like_scenario() {
    ScenarioConfig config;
    config.start = parse_rfc3339("2020-02-01T00:00:00Z");
    config.end = config.start + 150 * kDay;
    config.events_per_day = 4000;
    config.seed = 20200201;
    config.subgroups = {
        {"downtown", 0.5, 0.65, 0.78},
        {"airport", 0.3, 0.55, 0.72},
        {"suburb", 0.2, 0.50, 0.70},
    };
    // Day 45: riders stop tipping (class-balance shift) and the model loses its grip
    // on downtown traffic (concept shift).
    ShiftSpec shift;
    shift.at = kTaxiScenarioShift;
    shift.overrides = {
        {"downtown", std::nullopt, 0.30, 0.40},
        {"airport", std::nullopt, 0.25, std::nullopt},
        {"suburb", std::nullopt, 0.20, std::nullopt},
    };
    config.shifts = {shift};
    return config;
}

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::optional<double> optional_number(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) throw ConfigError(std::string("scenario: non-numeric ") + key);
    return it->get<double>();
}

}  // namespace

ScenarioConfig scenario_from_json(const std::string& text) {
    const json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw ConfigError("scenario: not a JSON object");
    static const std::set<std::string> known = {"version", "start", "end", "events_per_day",
                                                "subgroups", "shifts", "seed"};
    for (const auto& [key, _] : doc.items())
        if (!known.count(key)) throw ConfigError("scenario: unknown key \"" + key + "\"");
    if (!doc.contains("version") || doc.at("version") != 1)
        throw ConfigError("scenario: missing or unsupported \"version\" (expected 1)");

    ScenarioConfig config;
    try {
        config.start = parse_rfc3339(doc.at("start").get<std::string>());
        config.end = parse_rfc3339(doc.at("end").get<std::string>());
        config.events_per_day = doc.at("events_per_day").get<int>();
        config.seed = doc.value("seed", std::uint64_t{0});
        for (const auto& g : doc.at("subgroups")) {
            SubgroupSpec spec;
            spec.key = g.at("key").get<std::string>();
            spec.mix_weight = g.at("mix_weight").get<double>();
            spec.p_positive = g.at("p_positive").get<double>();
            spec.p_correct = g.at("p_correct").get<double>();
            config.subgroups.push_back(std::move(spec));
        }
        if (doc.contains("shifts")) {
            for (const auto& s : doc.at("shifts")) {
                ShiftSpec shift;
                shift.at = parse_rfc3339(s.at("at").get<std::string>());
                for (const auto& ov_json : s.at("overrides")) {
                    ShiftSpec::Override ov;
                    ov.key = ov_json.at("key").get<std::string>();
                    ov.mix_weight = optional_number(ov_json, "mix_weight");
                    ov.p_positive = optional_number(ov_json, "p_positive");
                    ov.p_correct = optional_number(ov_json, "p_correct");
                    shift.overrides.push_back(std::move(ov));
                }
                config.shifts.push_back(std::move(shift));
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    } catch (const ParseError& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    config.validate();
    return config;
}

std::string scenario_to_json(const ScenarioConfig& config) {
    ordered_json doc;
    doc["version"] = 1;
    doc["start"] = format_rfc3339(config.start);
    doc["end"] = format_rfc3339(config.end);
    doc["events_per_day"] = config.events_per_day;
    doc["seed"] = config.seed;
    doc["subgroups"] = ordered_json::array();
    for (const auto& g : config.subgroups)
        doc["subgroups"].push_back({{"key", g.key},
                                    {"mix_weight", g.mix_weight},
                                    {"p_positive", g.p_positive},
                                    {"p_correct", g.p_correct}});
    doc["shifts"] = ordered_json::array();
    for (const auto& s : config.shifts) {
        ordered_json shift;
        shift["at"] = format_rfc3339(s.at);
        shift["overrides"] = ordered_json::array();
        for (const auto& ov : s.overrides) {
            ordered_json entry;
            entry["key"] = ov.key;
            if (ov.mix_weight) entry["mix_weight"] = *ov.mix_weight;
            if (ov.p_positive) entry["p_positive"] = *ov.p_positive;
            if (ov.p_correct) entry["p_correct"] = *ov.p_correct;
            shift["overrides"].push_back(std::move(entry));
        }
        doc["shifts"].push_back(std::move(shift));
    }
    return doc.dump(2) + "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return scenario_from_json(text);
}

}  // namespace streameval
