#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "streameval/events.hpp"
#include "streameval/timestamps.hpp"

namespace streameval {

struct ReaderOptions {
    // Records may arrive out of order by at most this much; the reader sorts within
    // the horizon and raises OrderingError beyond it.
    DurationMs reorder_tolerance = kHour;
};

struct ReaderWarnings {
    std::size_t duplicate_ids = 0;  // dropped, first occurrence wins
};

struct PredictionStream {
    std::vector<PredictionEvent> events;  // nondecreasing event_time
    ReaderWarnings warnings;
};

struct LabelStream {
    std::vector<LabelEvent> events;  // nondecreasing available_time
    ReaderWarnings warnings;
};

// One JSON object per line: {"id": str, "ts": RFC-3339, "score": num, "subgroup": str?}.
// Malformed lines raise ParseError with the 1-based line number.
PredictionStream read_prediction_stream(std::istream& source, const ReaderOptions& opts = {});

// {"id": str, "ts": RFC-3339, "label": 0|1}; ts is the availability time.
LabelStream read_label_stream(std::istream& source, const ReaderOptions& opts = {});

PredictionStream read_prediction_file(const std::string& path, const ReaderOptions& opts = {});
LabelStream read_label_file(const std::string& path, const ReaderOptions& opts = {});

void write_prediction_stream(std::ostream& out, const std::vector<PredictionEvent>& events);
void write_label_stream(std::ostream& out, const std::vector<LabelEvent>& events);

void write_prediction_file(const std::string& path, const std::vector<PredictionEvent>& events);
void write_label_file(const std::string& path, const std::vector<LabelEvent>& events);

}  // namespace streameval
