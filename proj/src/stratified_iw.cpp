#include "streameval/stratified_iw.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "streameval/errors.hpp"

namespace streameval {
namespace {

using ordered_json = nlohmann::ordered_json;

const std::string& bucket_of(const std::string& subgroup) {
    static const std::string other = kOtherSubgroup;
    return subgroup.empty() ? other : subgroup;
}

}  // namespace

SubgroupProfile build_profile(std::span<const JoinedExample> reference, std::size_t min_count) {
    if (reference.empty())
        throw std::invalid_argument("build_profile: empty reference set");

    struct Tally { std::size_t correct = 0, count = 0; };
    std::map<std::string, Tally> tallies;
    for (const auto& ex : reference) {
        auto& tally = tallies[bucket_of(ex.subgroup)];
        ++tally.count;
        tally.correct += predicted_class(ex.score) == ex.label ? 1 : 0;
    }

    // Fold small groups into the "__other__" bucket; it is exempt from the threshold.
    Tally folded = tallies.count(kOtherSubgroup) ? tallies[kOtherSubgroup] : Tally{};
    for (auto it = tallies.begin(); it != tallies.end();) {
        if (it->first != kOtherSubgroup && it->second.count < min_count) {
            folded.correct += it->second.correct;
            folded.count += it->second.count;
            it = tallies.erase(it);
        } else {
            ++it;
        }
    }
    if (folded.count > 0) tallies[kOtherSubgroup] = folded;

    SubgroupProfile profile;
    std::size_t total_correct = 0;
    for (const auto& [key, tally] : tallies) {
        profile.groups[key] = SubgroupStats{
            static_cast<double>(tally.correct) / static_cast<double>(tally.count), tally.count};
        total_correct += tally.correct;
        profile.total_count += tally.count;
    }
    profile.global_accuracy =
        static_cast<double>(total_correct) / static_cast<double>(profile.total_count);
    return profile;
}

std::string profile_to_json(const SubgroupProfile& profile) {
    ordered_json groups = ordered_json::object();
    for (const auto& [key, stats] : profile.groups)
        groups[key] = {{"accuracy", stats.accuracy}, {"count", stats.count}};
    ordered_json doc;
    doc["groups"] = groups;
    doc["global"] = {{"accuracy", profile.global_accuracy}, {"count", profile.total_count}};
    return doc.dump(2) + "\n";
}

SubgroupProfile profile_from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("groups") ||
        !doc.contains("global"))
        throw ParseError("malformed subgroup profile document");
    SubgroupProfile profile;
    for (const auto& [key, value] : doc.at("groups").items()) {
        SubgroupStats stats;
        stats.accuracy = value.at("accuracy").get<double>();
        stats.count = value.at("count").get<std::size_t>();
        if (stats.accuracy < 0.0 || stats.accuracy > 1.0 || stats.count < 1)
            throw ParseError("invalid stats for subgroup '" + key + "'");
        profile.groups[key] = stats;
    }
    if (profile.groups.empty()) throw ParseError("profile has no subgroups");
    profile.global_accuracy = doc.at("global").at("accuracy").get<double>();
    profile.total_count = doc.at("global").at("count").get<std::size_t>();
    return profile;
}

void save_profile(const std::string& path, const SubgroupProfile& profile) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << profile_to_json(profile);
}

SubgroupProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return profile_from_json(text);
}

IwEstimate iw_estimate_from_counts(const std::map<std::string, std::size_t>& live_counts,
                                   const SubgroupProfile& profile, TimeMs window_end) {
    IwEstimate result;
    result.window_end = window_end;
    std::size_t total = 0;
    double weighted = 0.0;
    std::size_t covered = 0;
    for (const auto& [key, count] : live_counts) {
        if (count == 0) continue;
        total += count;
        const auto it = profile.groups.find(bucket_of(key));
        if (it != profile.groups.end()) {
            weighted += static_cast<double>(count) * it->second.accuracy;
            covered += count;
        } else {
            weighted += static_cast<double>(count) * profile.global_accuracy;
        }
    }
    result.support = total;
    if (total == 0) return result;
    result.estimate = weighted / static_cast<double>(total);
    result.coverage = static_cast<double>(covered) / static_cast<double>(total);
    return result;
}

IwEstimate iw_estimate(std::span<const PredictionEvent> live, const SubgroupProfile& profile,
                       TimeMs window_end) {
    std::map<std::string, std::size_t> counts;
    for (const auto& event : live) ++counts[bucket_of(event.subgroup)];
    return iw_estimate_from_counts(counts, profile, window_end);
}

double iw_difference(const IwEstimate& estimate, const MetricPoint& realized_accuracy) {
    if (estimate.window_end != realized_accuracy.window_end)
        throw std::invalid_argument("iw_difference: mismatched windows");
    if (!realized_accuracy.value)
        throw std::invalid_argument("iw_difference: insufficient labels for realized accuracy");
    if (!estimate.estimate)
        throw std::invalid_argument("iw_difference: empty estimate window");
    return *estimate.estimate - *realized_accuracy.value;
}

}  // namespace streameval
