#include "streameval/stream_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

#include "streameval/errors.hpp"

namespace streameval {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

json parse_line(const std::string& line, std::size_t line_no) {
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object())
        throw ParseError("not a JSON object", line_no);
    return record;
}

std::string require_string(const json& record, const char* key, std::size_t line_no) {
    const auto it = record.find(key);
    if (it == record.end() || !it->is_string())
        throw ParseError(std::string("missing or non-string \"") + key + "\"", line_no);
    return it->get<std::string>();
}

TimeMs require_timestamp(const json& record, std::size_t line_no) {
    const std::string ts = require_string(record, "ts", line_no);
    try {
        return parse_rfc3339(ts);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no);
    }
}

// Sorts records that are out of order by at most the tolerance. Records older than
// max_seen - tolerance can no longer be placed and raise OrderingError.
template <typename Event>
class ReorderBuffer {
public:
    explicit ReorderBuffer(DurationMs tolerance) : tolerance_(tolerance) {}

    void push(Event event, TimeMs t, std::size_t line_no, std::vector<Event>& out) {
        if (seen_any_ && t < max_seen_ - tolerance_)
            throw OrderingError("record out of order beyond reorder tolerance", line_no);
        max_seen_ = seen_any_ ? std::max(max_seen_, t) : t;
        seen_any_ = true;
        heap_.push(Entry{t, seq_++, std::move(event)});
        while (!heap_.empty() && heap_.top().time <= max_seen_ - tolerance_) {
            out.push_back(std::move(const_cast<Entry&>(heap_.top()).event));
            heap_.pop();
        }
    }

    void drain(std::vector<Event>& out) {
        while (!heap_.empty()) {
            out.push_back(std::move(const_cast<Entry&>(heap_.top()).event));
            heap_.pop();
        }
    }

private:
    struct Entry {
        TimeMs time;
        std::uint64_t seq;  // keeps equal timestamps in file order
        Event event;
        bool operator>(const Entry& other) const {
            return std::tie(time, seq) > std::tie(other.time, other.seq);
        }
    };

    DurationMs tolerance_;
    TimeMs max_seen_ = 0;
    bool seen_any_ = false;
    std::uint64_t seq_ = 0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
};

}  // namespace

PredictionStream read_prediction_stream(std::istream& source, const ReaderOptions& opts) {
    PredictionStream result;
    ReorderBuffer<PredictionEvent> buffer(opts.reorder_tolerance);
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (blank(line)) continue;
        const json record = parse_line(line, line_no);
        PredictionEvent ev;
        ev.id = require_string(record, "id", line_no);
        if (ev.id.empty()) throw ParseError("empty \"id\"", line_no);
        ev.event_time = require_timestamp(record, line_no);
        const auto score_it = record.find("score");
        if (score_it == record.end() || !score_it->is_number())
            throw ParseError("missing or non-numeric \"score\"", line_no);
        ev.score = score_it->get<double>();
        if (!(ev.score >= 0.0 && ev.score <= 1.0))
            throw ParseError("score out of [0,1]", line_no);
        if (const auto sg = record.find("subgroup"); sg != record.end()) {
            if (!sg->is_string()) throw ParseError("non-string \"subgroup\"", line_no);
            ev.subgroup = sg->get<std::string>();
        }
        if (!seen_ids.insert(ev.id).second) {
            ++result.warnings.duplicate_ids;
            continue;
        }
        const TimeMs t = ev.event_time;
        buffer.push(std::move(ev), t, line_no, result.events);
    }
    buffer.drain(result.events);
    return result;
}

LabelStream read_label_stream(std::istream& source, const ReaderOptions& opts) {
    LabelStream result;
    ReorderBuffer<LabelEvent> buffer(opts.reorder_tolerance);
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (blank(line)) continue;
        const json record = parse_line(line, line_no);
        LabelEvent ev;
        ev.id = require_string(record, "id", line_no);
        if (ev.id.empty()) throw ParseError("empty \"id\"", line_no);
        ev.available_time = require_timestamp(record, line_no);
        const auto label_it = record.find("label");
        if (label_it == record.end() || !label_it->is_number_integer())
            throw ParseError("missing or non-integer \"label\"", line_no);
        const std::int64_t raw = label_it->get<std::int64_t>();
        if (raw != 0 && raw != 1) throw ParseError("label must be 0 or 1", line_no);
        ev.label = static_cast<int>(raw);
        if (!seen_ids.insert(ev.id).second) {
            ++result.warnings.duplicate_ids;
            continue;
        }
        const TimeMs t = ev.available_time;
        buffer.push(std::move(ev), t, line_no, result.events);
    }
    buffer.drain(result.events);
    return result;
}

PredictionStream read_prediction_file(const std::string& path, const ReaderOptions& opts) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_prediction_stream(in, opts);
}

LabelStream read_label_file(const std::string& path, const ReaderOptions& opts) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_label_stream(in, opts);
}

void write_prediction_stream(std::ostream& out, const std::vector<PredictionEvent>& events) {
    for (const auto& ev : events) {
        ordered_json record;
        record["id"] = ev.id;
        record["ts"] = format_rfc3339(ev.event_time);
        record["score"] = ev.score;
        if (!ev.subgroup.empty()) record["subgroup"] = ev.subgroup;
        out << record.dump() << '\n';
    }
}

void write_label_stream(std::ostream& out, const std::vector<LabelEvent>& events) {
    for (const auto& ev : events) {
        ordered_json record;
        record["id"] = ev.id;
        record["ts"] = format_rfc3339(ev.available_time);
        record["label"] = ev.label;
        out << record.dump() << '\n';
    }
}

void write_prediction_file(const std::string& path, const std::vector<PredictionEvent>& events) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_prediction_stream(out, events);
}

void write_label_file(const std::string& path, const std::vector<LabelEvent>& events) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_label_stream(out, events);
}

}  // namespace streameval
